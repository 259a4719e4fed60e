#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "steiner/domset.hpp"
#include "steiner/dst_instance.hpp"
#include "steiner/reductions.hpp"

namespace steiner::oracle {

/// Raised instead of silently truncating an enumeration that is too large.
struct SizeGuardExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Upper bound on candidate subsets any oracle will enumerate.
inline constexpr long double kMaxSubsets = 1u << 24;

/// Non-terminal subsets of size 0..k in increasing size, lexicographic within
/// a size; the first one passing verify_dst wins.
Solution brute_force_dst(const DstInstance& inst);

/// Same enumeration over all vertices, checked with verify_domset.
Solution brute_force_domset(const DsInstance& inst);

/// Minimum cover (ignores the budget); std::nullopt if some element is in no
/// set. Indices are into sc.sets.
std::optional<std::vector<int>> brute_force_setcover(const SetCoverInstance& sc);

/// Minimum augmenting set by enumerating paid-vertex subsets by size.
std::optional<VertexSet> brute_force_augment(const Digraph& d, Vertex root, const VertexSet& free_vertices,
                                             const VertexSet& required);

}  // namespace steiner::oracle
