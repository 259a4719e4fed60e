#include "steiner/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>

namespace steiner {

namespace {

void check_endpoint(Vertex n, Vertex v) {
  if (v < 0 || v >= n) {
    throw std::out_of_range("vertex " + std::to_string(v) + " outside [0, " + std::to_string(n) + ")");
  }
}

// Builds CSR offsets/targets from (source, target) pairs sorted by source.
void build_csr(Vertex n, const std::vector<std::pair<Vertex, Vertex>>& sorted_pairs,
               std::vector<std::size_t>& offsets, std::vector<Vertex>& targets) {
  offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  targets.clear();
  targets.reserve(sorted_pairs.size());
  for (const auto& [u, v] : sorted_pairs) {
    ++offsets[u + 1];
    targets.push_back(v);
  }
  for (Vertex v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
}

}  // namespace

Digraph::Digraph(Vertex n, std::vector<std::pair<Vertex, Vertex>> arcs) : n_(n) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  for (const auto& [u, v] : arcs) {
    check_endpoint(n, u);
    check_endpoint(n, v);
  }
  std::erase_if(arcs, [](const auto& a) { return a.first == a.second; });
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  build_csr(n, arcs, out_offsets_, out_targets_);

  for (auto& a : arcs) std::swap(a.first, a.second);
  std::sort(arcs.begin(), arcs.end());
  build_csr(n, arcs, in_offsets_, in_sources_);
}

bool Digraph::has_arc(Vertex u, Vertex v) const {
  auto o = out(u);
  return std::binary_search(o.begin(), o.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> Digraph::arcs() const {
  std::vector<std::pair<Vertex, Vertex>> result;
  result.reserve(num_arcs());
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v : out(u)) result.emplace_back(u, v);
  return result;
}

Graph::Graph(Vertex n, std::vector<std::pair<Vertex, Vertex>> edges) : n_(n) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  std::vector<std::pair<Vertex, Vertex>> both;
  both.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    check_endpoint(n, u);
    check_endpoint(n, v);
    if (u == v) continue;
    both.emplace_back(u, v);
    both.emplace_back(v, u);
  }
  std::sort(both.begin(), both.end());
  both.erase(std::unique(both.begin(), both.end()), both.end());
  build_csr(n, both, offsets_, targets_);
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> result;
  result.reserve(num_edges());
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v : neighbors(u))
      if (u < v) result.emplace_back(u, v);
  return result;
}

Graph underlying(const Digraph& d) { return Graph(d.num_vertices(), d.arcs()); }

DegeneracyResult degeneracy(const Graph& g) {
  const Vertex n = g.num_vertices();
  DegeneracyResult result;
  result.ordering.reserve(n);

  std::vector<Vertex> deg(n);
  std::vector<char> removed(n, 0);
  using Entry = std::pair<Vertex, Vertex>;  // (degree, vertex)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = static_cast<Vertex>(g.degree(v));
    heap.emplace(deg[v], v);
  }
  while (!heap.empty()) {
    auto [dv, v] = heap.top();
    heap.pop();
    if (removed[v] || dv != deg[v]) continue;
    removed[v] = 1;
    result.degeneracy = std::max(result.degeneracy, static_cast<int>(dv));
    result.ordering.push_back(v);
    for (Vertex u : g.neighbors(v)) {
      if (removed[u]) continue;
      heap.emplace(--deg[u], u);
    }
  }
  return result;
}

int degeneracy_value(const Graph& g) {
  // Peel by levels: at level k remove, transitively, every vertex of degree
  // <= k, then jump to the least surviving degree. Only the degree array is
  // touched at random, and a vertex is swept at most deg + 1 times.
  const Vertex n = g.num_vertices();
  constexpr Vertex kGone = -1;
  std::vector<Vertex> deg(n), alive(n), wave, next_wave, gathered;
  Vertex k = n;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = static_cast<Vertex>(g.degree(v));
    alive[v] = v;
    k = std::min(k, deg[v]);
  }
  int best = 0;
  while (!alive.empty()) {
    for (Vertex v : alive)
      if (deg[v] <= k) {
        deg[v] = kGone;
        wave.push_back(v);
      }
    best = std::max(best, static_cast<int>(k));
    // Removals go in waves; gathering a wave's neighbor ids first lets the
    // random degree updates be prefetched.
    while (!wave.empty()) {
      gathered.clear();
      for (Vertex v : wave) {
        auto nb = g.neighbors(v);
        gathered.insert(gathered.end(), nb.begin(), nb.end());
      }
      next_wave.clear();
      for (std::size_t i = 0; i < gathered.size(); ++i) {
        if (i + 8 < gathered.size()) __builtin_prefetch(&deg[gathered[i + 8]], 1);
        const Vertex u = gathered[i];
        if (deg[u] != kGone && --deg[u] <= k) {
          deg[u] = kGone;
          next_wave.push_back(u);
        }
      }
      wave.swap(next_wave);
    }
    Vertex next = n;
    std::erase_if(alive, [&](Vertex v) {
      if (deg[v] == kGone) return true;
      next = std::min(next, deg[v]);
      return false;
    });
    k = next;
  }
  return best;
}

DegeneracyResult degeneracy(const Digraph& d) { return degeneracy(underlying(d)); }

int ordering_width(const Graph& g, std::span<const Vertex> ordering) {
  const Vertex n = g.num_vertices();
  if (static_cast<Vertex>(ordering.size()) != n) throw std::invalid_argument("ordering is not a permutation");
  std::vector<Vertex> position(n, -1);
  for (std::size_t i = 0; i < ordering.size(); ++i) {
    Vertex v = ordering[i];
    check_endpoint(n, v);
    if (position[v] != -1) throw std::invalid_argument("ordering is not a permutation");
    position[v] = static_cast<Vertex>(i);
  }
  int width = 0;
  for (Vertex v = 0; v < n; ++v) {
    int later = 0;
    for (Vertex u : g.neighbors(v))
      if (position[u] > position[v]) ++later;
    width = std::max(width, later);
  }
  return width;
}

ComponentLabels scc_labels(const Digraph& d) {
  const Vertex n = d.num_vertices();
  std::vector<Vertex> index(n, -1), low(n, 0), stack;
  std::vector<char> on_stack(n, 0);
  std::vector<Vertex> raw_label(n, -1);
  Vertex next_index = 0, raw_count = 0;

  struct Frame {
    Vertex v;
    std::size_t edge;
  };
  std::vector<Frame> call;
  for (Vertex s = 0; s < n; ++s) {
    if (index[s] != -1) continue;
    call.push_back({s, 0});
    index[s] = low[s] = next_index++;
    stack.push_back(s);
    on_stack[s] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      auto succ = d.out(f.v);
      if (f.edge < succ.size()) {
        Vertex w = succ[f.edge++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      Vertex v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          raw_label[w] = raw_count;
        } while (w != v);
        ++raw_count;
      }
    }
  }

  // Relabel so that components are numbered by their smallest vertex.
  ComponentLabels result;
  result.label.assign(n, -1);
  std::vector<Vertex> remap(raw_count, -1);
  for (Vertex v = 0; v < n; ++v) {
    Vertex& r = remap[raw_label[v]];
    if (r == -1) r = result.count++;
    result.label[v] = r;
  }
  return result;
}

std::vector<VertexSet> strongly_connected_components(const Digraph& d) {
  auto labels = scc_labels(d);
  std::vector<VertexSet> comps(labels.count);
  for (Vertex v = 0; v < d.num_vertices(); ++v) comps[labels.label[v]].push_back(v);
  return comps;
}

Contraction contract_classes(const Digraph& d, std::span<const Vertex> label) {
  const Vertex n = d.num_vertices();
  if (static_cast<Vertex>(label.size()) != n) throw std::invalid_argument("label size mismatch");
  Contraction result;
  result.map.assign(n, -1);
  std::vector<Vertex> class_id;
  Vertex next = 0;
  for (Vertex v = 0; v < n; ++v) {
    Vertex c = label[v];
    if (c < 0) throw std::invalid_argument("negative class label");
    if (static_cast<std::size_t>(c) >= class_id.size()) class_id.resize(c + 1, -1);
    if (class_id[c] == -1) class_id[c] = next++;
    result.map[v] = class_id[c];
  }
  std::vector<std::pair<Vertex, Vertex>> arcs;
  arcs.reserve(d.num_arcs());
  for (const auto& [u, v] : d.arcs()) arcs.emplace_back(result.map[u], result.map[v]);
  result.graph = Digraph(next, std::move(arcs));
  return result;
}

Contraction contract_set(const Digraph& d, std::span<const Vertex> c) {
  if (c.empty()) throw std::invalid_argument("contract_set: empty vertex set");
  const Vertex n = d.num_vertices();
  std::vector<Vertex> label(n);
  for (Vertex v = 0; v < n; ++v) label[v] = v;
  Vertex rep = *std::min_element(c.begin(), c.end());
  check_endpoint(n, rep);
  for (Vertex v : c) {
    check_endpoint(n, v);
    label[v] = rep;
  }
  return contract_classes(d, label);
}

Digraph short_circuit(const Digraph& d, Vertex v) {
  const Vertex n = d.num_vertices();
  check_endpoint(n, v);
  auto shift = [v](Vertex x) { return x > v ? x - 1 : x; };
  std::vector<std::pair<Vertex, Vertex>> arcs;
  for (const auto& [a, b] : d.arcs())
    if (a != v && b != v) arcs.emplace_back(shift(a), shift(b));
  for (Vertex a : d.in(v))
    for (Vertex b : d.out(v))
      if (a != b) arcs.emplace_back(shift(a), shift(b));
  return Digraph(n - 1, std::move(arcs));
}

std::vector<char> reachable_from(const Digraph& d, Vertex source) {
  check_endpoint(d.num_vertices(), source);
  std::vector<char> seen(d.num_vertices(), 0);
  std::vector<Vertex> queue{source};
  seen[source] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (Vertex w : d.out(queue[head]))
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
  return seen;
}

bool is_acyclic(const Digraph& d) {
  // Kahn's algorithm.
  const Vertex n = d.num_vertices();
  std::vector<Vertex> indeg(n), queue;
  for (Vertex v = 0; v < n; ++v) {
    indeg[v] = static_cast<Vertex>(d.in(v).size());
    if (indeg[v] == 0) queue.push_back(v);
  }
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (Vertex w : d.out(queue[head]))
      if (--indeg[w] == 0) queue.push_back(w);
  return static_cast<Vertex>(queue.size()) == n;
}

Digraph induced_subgraph(const Digraph& d, std::span<const char> keep, std::vector<Vertex>* old_to_new) {
  const Vertex n = d.num_vertices();
  std::vector<Vertex> map(n, -1);
  Vertex next = 0;
  for (Vertex v = 0; v < n; ++v)
    if (keep[v]) map[v] = next++;
  std::vector<std::pair<Vertex, Vertex>> arcs;
  for (const auto& [u, v] : d.arcs())
    if (keep[u] && keep[v]) arcs.emplace_back(map[u], map[v]);
  if (old_to_new) *old_to_new = map;
  return Digraph(next, std::move(arcs));
}

}  // namespace steiner
