#pragma once

#include <optional>
#include <span>

#include "steiner/graph.hpp"

namespace steiner {

/// Query for the minimum augmenting set: vertices of `free_vertices` and the
/// root cost nothing, every other vertex costs one. The answer is a cheapest
/// set S of paid vertices such that the root reaches every vertex of
/// `required` inside D[free + root + S].
struct AugmentQuery {
  const Digraph* graph = nullptr;
  Vertex root = 0;
  VertexSet free_vertices;  // sorted; must not contain root
  VertexSet required;       // sorted subset of free_vertices
  /// Optional per-vertex mask of vertices that take no part (deleted).
  std::span<const char> removed;
};

/// Largest |required| accepted; the tables grow as 2^t per vertex.
inline constexpr int kMaxRequired = 24;

/// Minimum augmenting set by subset dynamic programming over `required`
/// (Dreyfus-Wagner recurrences on node weights 0/1). Returns std::nullopt iff
/// some required vertex is unreachable from the root. Ties are resolved
/// deterministically: subsets in increasing numeric order, vertices in
/// increasing id, merge preferred over extension.
///
/// Throws std::invalid_argument when `required` is not a subset of
/// `free_vertices`, the root is free, or |required| > kMaxRequired.
std::optional<VertexSet> min_augmenting_set(const AugmentQuery& q);

}  // namespace steiner
