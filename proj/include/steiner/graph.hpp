#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace steiner {

using Vertex = std::int32_t;
using VertexSet = std::vector<Vertex>;  // sorted, unique

/// Immutable simple digraph in CSR form with both out- and in-adjacency.
///
/// Construction normalizes the arc list: self-loops are dropped and parallel
/// arcs merged. Neighbor lists are sorted ascending.
class Digraph {
 public:
  Digraph() = default;
  Digraph(Vertex n, std::vector<std::pair<Vertex, Vertex>> arcs);

  Vertex num_vertices() const { return n_; }
  std::size_t num_arcs() const { return out_targets_.size(); }

  std::span<const Vertex> out(Vertex v) const {
    return {out_targets_.data() + out_offsets_[v], out_targets_.data() + out_offsets_[v + 1]};
  }
  std::span<const Vertex> in(Vertex v) const {
    return {in_sources_.data() + in_offsets_[v], in_sources_.data() + in_offsets_[v + 1]};
  }
  bool has_arc(Vertex u, Vertex v) const;

  /// Arcs in lexicographic order.
  std::vector<std::pair<Vertex, Vertex>> arcs() const;

  friend bool operator==(const Digraph&, const Digraph&) = default;

 private:
  Vertex n_ = 0;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<Vertex> out_targets_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<Vertex> in_sources_;
};

/// Immutable simple undirected graph in CSR form.
class Graph {
 public:
  Graph() = default;
  Graph(Vertex n, std::vector<std::pair<Vertex, Vertex>> edges);

  Vertex num_vertices() const { return n_; }
  std::size_t num_edges() const { return targets_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(Vertex u, Vertex v) const;

  /// Edges as (u, v) with u < v, in lexicographic order.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  Vertex n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> targets_;
};

/// Underlying undirected graph: arc directions dropped, antiparallel pairs merged.
Graph underlying(const Digraph& d);

struct DegeneracyResult {
  int degeneracy = 0;
  std::vector<Vertex> ordering;  // peeling order
};

/// Exact degeneracy by repeated removal of a minimum-degree vertex (lowest id
/// first among ties). Every vertex has at most `degeneracy` neighbors that
/// appear after it in `ordering`.
DegeneracyResult degeneracy(const Graph& g);
DegeneracyResult degeneracy(const Digraph& d);

/// Degeneracy number only, by level peeling in O(n + m). Same value as
/// degeneracy(g).degeneracy without the tie-broken ordering.
int degeneracy_value(const Graph& g);

/// Largest number of later neighbors of any vertex under `ordering`.
int ordering_width(const Graph& g, std::span<const Vertex> ordering);

/// Strongly connected components (iterative Tarjan). Each component is
/// sorted; components are listed in order of their smallest vertex.
std::vector<VertexSet> strongly_connected_components(const Digraph& d);

/// Component label per vertex, labels dense in [0, count).
struct ComponentLabels {
  std::vector<Vertex> label;
  Vertex count = 0;
};
ComponentLabels scc_labels(const Digraph& d);

struct Contraction {
  Digraph graph;
  std::vector<Vertex> map;  // old vertex -> new vertex
};

/// Merges every class of `label` into one vertex. New ids follow the order of
/// each class's smallest old vertex. Self-loops vanish, parallel arcs merge.
Contraction contract_classes(const Digraph& d, std::span<const Vertex> label);

/// Contracts the non-empty set `c` into a single vertex placed at the
/// position of its smallest member; other vertices keep their relative order.
Contraction contract_set(const Digraph& d, std::span<const Vertex> c);

/// Deletes `v` after adding arcs N^-(v) x N^+(v). Vertices above `v` shift
/// down by one.
Digraph short_circuit(const Digraph& d, Vertex v);

/// Vertices reachable from `source` (inclusive), as a membership mask.
std::vector<char> reachable_from(const Digraph& d, Vertex source);

/// True iff the digraph has no directed cycle.
bool is_acyclic(const Digraph& d);

/// Subdigraph induced by `keep` (membership mask), renumbered densely in
/// increasing order. `old_to_new` receives -1 for dropped vertices.
Digraph induced_subgraph(const Digraph& d, std::span<const char> keep,
                         std::vector<Vertex>* old_to_new = nullptr);

}  // namespace steiner
