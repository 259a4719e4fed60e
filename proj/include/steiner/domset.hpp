#pragma once

#include <span>
#include <utility>
#include <vector>

#include "steiner/dst_branch.hpp"
#include "steiner/graph.hpp"

namespace steiner {

struct DsInstance {
  Graph graph;
  int budget = 0;

  friend bool operator==(const DsInstance&, const DsInstance&) = default;
};

/// True iff every vertex is in `s` or adjacent to a member of `s`.
bool verify_domset(const Graph& g, std::span<const Vertex> s);

/// Edge mask for the branching solver: deleted vertices plus removed edges.
struct DsMask {
  std::vector<char> removed_vertex;
  std::vector<std::pair<Vertex, Vertex>> removed_edges;  // sorted, u < v

  bool vertex_gone(Vertex v) const { return !removed_vertex.empty() && removed_vertex[v]; }
  bool edge_gone(Vertex u, Vertex v) const;
};

/// Partition of the vertices relative to a partial solution Y.
struct DsState {
  VertexSet y, b, w, bh, bl, wh, wl;
  int db = 1;
  long long mu = 0;  // db * (k - |Y|) - |W_l|, filled by the solver
};

/// Recomputes the partition from its definitions on the masked graph.
DsState ds_compute_state(const Graph& g, const VertexSet& y, int db, const DsMask& mask = {});

/// Smallest dominating set of size <= k containing Y, or infeasible.
/// `db` must be at least 1. Isolated vertices are added to Y up front.
Solution ds_solve(const DsInstance& inst, int db, const VertexSet& y = {}, const SolverConfig& cfg = {},
                  BranchStats* stats = nullptr);

}  // namespace steiner
