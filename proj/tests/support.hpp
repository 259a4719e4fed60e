#pragma once

// Independent reference computations shared by the tests. Nothing here calls
// into the library's algorithms; only the graph containers are used.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "steiner/graph.hpp"
#include "steiner/reductions.hpp"

namespace testing_support {

using steiner::Digraph;
using steiner::Graph;
using steiner::Vertex;

inline Digraph random_digraph(Vertex n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<Vertex, Vertex>> arcs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v && coin(rng)) arcs.emplace_back(u, v);
  return Digraph(n, std::move(arcs));
}

inline Graph random_graph(Vertex n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

// reach[u][v]: v reachable from u (reflexive), by Floyd-Warshall.
inline std::vector<std::vector<char>> closure(const Digraph& d) {
  const Vertex n = d.num_vertices();
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  for (Vertex u = 0; u < n; ++u) {
    r[u][u] = 1;
    for (Vertex v : d.out(u)) r[u][v] = 1;
  }
  for (Vertex k = 0; k < n; ++k)
    for (Vertex i = 0; i < n; ++i)
      if (r[i][k])
        for (Vertex j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = 1;
  return r;
}

// Degeneracy as the largest minimum degree over all induced subgraphs.
inline int brute_degeneracy(const Graph& g) {
  const Vertex n = g.num_vertices();
  int best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    int low = n;
    for (Vertex v = 0; v < n; ++v) {
      if (!(mask >> v & 1)) continue;
      int deg = 0;
      for (Vertex w : g.neighbors(v)) deg += mask >> w & 1;
      low = std::min(low, deg);
    }
    best = std::max(best, low);
  }
  return best;
}

inline bool has_cycle(const Digraph& d) {
  const Vertex n = d.num_vertices();
  std::vector<int> color(n, 0);
  struct Frame {
    Vertex v;
    std::size_t next;
  };
  for (Vertex s = 0; s < n; ++s) {
    if (color[s]) continue;
    std::vector<Frame> stack{{s, 0}};
    color[s] = 1;
    while (!stack.empty()) {
      Frame& f = stack.back();
      auto out = d.out(f.v);
      if (f.next == out.size()) {
        color[f.v] = 2;
        stack.pop_back();
        continue;
      }
      Vertex w = out[f.next++];
      if (color[w] == 1) return true;
      if (color[w] == 0) {
        color[w] = 1;
        stack.push_back({w, 0});
      }
    }
  }
  return false;
}

}  // namespace testing_support

namespace testing_support {

// True iff repeatedly deleting vertices of degree < k empties the graph,
// i.e. the degeneracy is below k.
inline bool core_empty(const steiner::Graph& g, int k) {
  const Vertex n = g.num_vertices();
  std::vector<int> deg(n);
  std::vector<char> gone(n, 0);
  for (Vertex v = 0; v < n; ++v) deg[v] = static_cast<int>(g.degree(v));
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex v = 0; v < n; ++v)
      if (!gone[v] && deg[v] < k) {
        gone[v] = 1;
        changed = true;
        for (Vertex w : g.neighbors(v)) --deg[w];
      }
  }
  return std::all_of(gone.begin(), gone.end(), [](char c) { return c != 0; });
}

}  // namespace testing_support

namespace testing_support {

// Small PSI instance: a tree pattern (sometimes with one extra edge), every
// color class non-empty and every pattern edge realized by a host edge.
inline steiner::PsiInstance random_psi(std::mt19937_64& rng) {
  for (;;) {
    const int l = 2 + static_cast<int>(rng() % 3);
    const Vertex nh = l + static_cast<Vertex>(rng() % (9 - l));
    std::vector<std::pair<Vertex, Vertex>> pe;
    for (int i = 1; i < l; ++i) pe.emplace_back(static_cast<Vertex>(rng() % i), i);
    if (l >= 3 && rng() % 2) pe.emplace_back(0, 2);
    Graph pattern(l, pe);
    std::vector<int> color(nh);
    for (Vertex v = 0; v < nh; ++v) color[v] = v < l ? v : static_cast<int>(rng() % l);
    std::vector<std::pair<Vertex, Vertex>> he;
    for (Vertex u = 0; u < nh; ++u)
      for (Vertex v = u + 1; v < nh; ++v)
        if (color[u] != color[v] && pattern.has_edge(color[u], color[v]) && rng() % 5 < 2) he.emplace_back(u, v);
    steiner::PsiInstance psi{Graph(nh, he), pattern, color};
    // Every pattern edge needs at least one host edge.
    bool ok = true;
    for (auto [a, b] : pattern.edges()) {
      bool any = false;
      for (auto [u, v] : psi.host.edges()) any = any || (std::min(color[u], color[v]) == a && std::max(color[u], color[v]) == b);
      ok = ok && any;
    }
    if (ok) return psi;
  }
}

}  // namespace testing_support
