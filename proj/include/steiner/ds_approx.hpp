#pragma once

#include <functional>
#include <optional>

#include "steiner/graph.hpp"

namespace steiner {

struct ApproxOptions {
  /// Degeneracy override; computed from the graph when absent.
  std::optional<int> degeneracy;
  /// Recompute the partition from scratch after every iteration and compare
  /// with the incremental state (slow; for tests). Throws std::logic_error on
  /// any mismatch or monotonicity breach.
  bool audit = false;
  /// Called once per iteration with (selected vertex, its key, |Y| after).
  std::function<void(Vertex, int, std::size_t)> trace;
};

struct ApproxResult {
  VertexSet dominating_set;
  int degeneracy = 0;
  std::size_t iterations = 0;
};

/// Greedy dominating set for d-degenerate graphs with |Y| <= d^2 * OPT.
/// Runs in O(d n log n): a vertex changing class notifies its neighbors, and
/// W_h is kept in a lazy min-heap keyed by (neighbors in B_h + W_h, id).
ApproxResult ds_approx(const Graph& g, const ApproxOptions& opts = {});

}  // namespace steiner
