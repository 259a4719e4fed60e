#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "steiner/graph.hpp"

namespace steiner {

/// Directed Steiner Tree instance (D, r, T, k).
struct DstInstance {
  Digraph graph;
  Vertex root = 0;
  VertexSet terminals;  // sorted, never contains root
  int budget = 0;

  friend bool operator==(const DstInstance&, const DstInstance&) = default;
};

/// Throws std::invalid_argument if root is out of range, a terminal is out of
/// range or equals the root, or the budget is negative.
void validate(const DstInstance& inst);

/// Result of an exact solver. An infeasible result carries no vertices.
struct Solution {
  bool feasible = false;
  VertexSet vertices;

  static Solution infeasible() { return {}; }
  static Solution of(VertexSet s) { return {true, std::move(s)}; }

  /// Size, with infeasible ordered after every feasible size.
  std::size_t cost() const {
    return feasible ? vertices.size() : std::numeric_limits<std::size_t>::max();
  }
  friend bool operator==(const Solution&, const Solution&) = default;
};

/// Instance after exhaustive contraction of the strongly connected components
/// of the terminal-induced subdigraph.
struct ReducedInstance {
  DstInstance inst;
  VertexSet source_terminals;
  std::vector<Vertex> contraction_map;  // original vertex -> reduced vertex
  std::vector<Vertex> original_of;      // reduced vertex -> smallest original preimage
};

/// Contracts every strongly connected component of D[T] with two or more
/// vertices into a single terminal. Non-terminals are never merged, so a
/// non-terminal set solves the original iff its image solves the result.
ReducedInstance reduce(const DstInstance& inst);

/// Terminals without an in-neighbor among the terminals.
VertexSet source_terminals(const DstInstance& inst);
inline const VertexSet& source_terminals(const ReducedInstance& ri) { return ri.source_terminals; }

/// Membership mask for a sorted vertex set.
std::vector<char> to_mask(Vertex n, const VertexSet& s);

/// Subdigraph induced by the terminals, in the original numbering restricted
/// to T (terminal i of `inst.terminals` becomes vertex i).
Digraph terminal_subgraph(const DstInstance& inst);

/// True iff `sol` is feasible, within budget, avoids T and r, and r reaches
/// every terminal inside D[S + T + r].
bool verify_dst(const DstInstance& inst, const Solution& sol);

}  // namespace steiner
