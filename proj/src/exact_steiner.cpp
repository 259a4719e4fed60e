#include "steiner/exact_steiner.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "steiner/kernels.hpp"

namespace steiner {

namespace {

using kernels::kInfinity;

constexpr std::size_t kMaxTableEntries = std::size_t{1} << 28;

bool is_removed(const AugmentQuery& q, Vertex v) { return !q.removed.empty() && q.removed[v]; }

void check_query(const AugmentQuery& q) {
  if (q.graph == nullptr) throw std::invalid_argument("augment query without graph");
  const Vertex n = q.graph->num_vertices();
  if (q.root < 0 || q.root >= n) throw std::invalid_argument("augment query root out of range");
  if (!q.removed.empty() && static_cast<Vertex>(q.removed.size()) != n)
    throw std::invalid_argument("removed mask size mismatch");
  if (is_removed(q, q.root)) throw std::invalid_argument("root is removed");
  if (std::binary_search(q.free_vertices.begin(), q.free_vertices.end(), q.root))
    throw std::invalid_argument("root listed as free vertex");
  for (Vertex v : q.free_vertices)
    if (v < 0 || v >= n) throw std::invalid_argument("free vertex out of range");
  if (!std::includes(q.free_vertices.begin(), q.free_vertices.end(), q.required.begin(), q.required.end()))
    throw std::invalid_argument("required set is not a subset of the free set");
  if (q.required.size() > static_cast<std::size_t>(kMaxRequired))
    throw std::invalid_argument("required set too large for the subset DP");
}

// Alive vertices reachable from the root that can also reach a required vertex.
std::vector<char> relevant_vertices(const AugmentQuery& q, bool& all_reachable) {
  const Digraph& d = *q.graph;
  const Vertex n = d.num_vertices();
  std::vector<char> fwd(n, 0), bwd(n, 0);
  std::vector<Vertex> queue{q.root};
  fwd[q.root] = 1;
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (Vertex w : d.out(queue[h]))
      if (!fwd[w] && !is_removed(q, w)) {
        fwd[w] = 1;
        queue.push_back(w);
      }
  all_reachable = std::all_of(q.required.begin(), q.required.end(), [&](Vertex t) { return fwd[t]; });
  queue.clear();
  for (Vertex t : q.required) {
    bwd[t] = 1;
    queue.push_back(t);
  }
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (Vertex w : d.in(queue[h]))
      if (!bwd[w] && fwd[w]) {
        bwd[w] = 1;
        queue.push_back(w);
      }
  for (Vertex v = 0; v < n; ++v) fwd[v] = fwd[v] && bwd[v];
  return fwd;
}

}  // namespace

std::optional<VertexSet> min_augmenting_set(const AugmentQuery& q) {
  check_query(q);
  if (q.required.empty()) return VertexSet{};
  const Digraph& d = *q.graph;
  const Vertex n = d.num_vertices();

  bool all_reachable = false;
  std::vector<char> keep = relevant_vertices(q, all_reachable);
  if (!all_reachable) return std::nullopt;

  // Compact numbering of the relevant vertices.
  std::vector<Vertex> local(n, -1), global;
  for (Vertex v = 0; v < n; ++v)
    if (keep[v]) {
      local[v] = static_cast<Vertex>(global.size());
      global.push_back(v);
    }
  const std::size_t r = global.size();
  std::vector<std::vector<Vertex>> pred(r);
  std::vector<std::int32_t> weight(r, 1);
  for (std::size_t i = 0; i < r; ++i) {
    Vertex v = global[i];
    for (Vertex u : d.in(v))
      if (keep[u]) pred[i].push_back(local[u]);
    if (v == q.root || std::binary_search(q.free_vertices.begin(), q.free_vertices.end(), v)) weight[i] = 0;
  }

  const int t = static_cast<int>(q.required.size());
  const std::uint32_t full = (std::uint32_t{1} << t) - 1;
  const std::size_t rows = std::size_t{full} + 1;
  if (rows * r > kMaxTableEntries) throw std::length_error("subset DP table too large");

  // cost[X][v]: cheapest paid-vertex count of a structure in which v reaches
  // all of X, not counting v itself.
  std::vector<std::int32_t> cost(rows * r, kInfinity);
  std::vector<std::uint32_t> split(rows * r, 0);
  std::vector<Vertex> succ(rows * r, -1);
  auto row = [r](auto& table, std::uint32_t x) { return std::span(table.data() + x * r, r); };

  const auto merge = kernels::min_plus_for(kernels::active_backend());
  std::vector<std::vector<Vertex>> buckets(2 * r + 2);
  std::vector<char> done(r);

  for (std::uint32_t x = 1; x <= full; ++x) {
    auto best = row(cost, x);
    if (std::has_single_bit(x)) {
      best[local[q.required[std::countr_zero(x)]]] = 0;
    } else {
      // Submasks in increasing order; each unordered split visited once.
      for (std::uint32_t sub = (0u - x) & x; sub != x; sub = (sub - x) & x) {
        const std::uint32_t rest = x ^ sub;
        if (sub > rest) continue;
        merge(best, row(split, x), row(cost, sub), row(cost, rest), sub);
      }
    }

    // Extension: Dial's algorithm on backward arcs, arc (v -> u) costs weight[u].
    auto next = row(succ, x);
    std::fill(done.begin(), done.end(), 0);
    for (auto& b : buckets) b.clear();
    for (std::size_t i = 0; i < r; ++i)
      if (best[i] < kInfinity) buckets[best[i]].push_back(static_cast<Vertex>(i));
    for (std::size_t b = 0; b < buckets.size(); ++b) {
      for (std::size_t j = 0; j < buckets[b].size(); ++j) {
        const Vertex u = buckets[b][j];
        if (done[u] || best[u] != static_cast<std::int32_t>(b)) continue;
        done[u] = 1;
        const std::int32_t cand = best[u] + weight[u];
        for (Vertex v : pred[u]) {
          if (cand < best[v]) {
            best[v] = cand;
            next[v] = u;
            buckets[cand].push_back(v);
          }
        }
      }
    }
  }

  const Vertex root = local[q.root];
  if (cost[full * r + root] >= kInfinity) return std::nullopt;

  std::vector<char> chosen(r, 0);
  struct Item {
    Vertex v;
    std::uint32_t x;
  };
  std::vector<Item> stack{{root, full}};
  while (!stack.empty()) {
    auto [v, x] = stack.back();
    stack.pop_back();
    for (Vertex u = succ[x * r + v]; u >= 0; u = succ[x * r + v]) {
      if (weight[u]) chosen[u] = 1;
      v = u;
    }
    if (std::has_single_bit(x)) continue;
    const std::uint32_t sub = split[x * r + v];
    stack.push_back({v, sub});
    stack.push_back({v, x ^ sub});
  }

  VertexSet result;
  for (std::size_t i = 0; i < r; ++i)
    if (chosen[i]) result.push_back(global[i]);

  // Postcondition: the root reaches every required vertex using free + result.
  std::vector<char> allowed(n, 0), seen(n, 0);
  for (Vertex v : q.free_vertices) allowed[v] = 1;
  for (Vertex v : result) allowed[v] = 1;
  std::vector<Vertex> queue{q.root};
  seen[q.root] = 1;
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (Vertex w : d.out(queue[h]))
      if (allowed[w] && !seen[w] && !is_removed(q, w)) {
        seen[w] = 1;
        queue.push_back(w);
      }
  if (!std::all_of(q.required.begin(), q.required.end(), [&](Vertex t) { return seen[t]; }) ||
      static_cast<std::int32_t>(result.size()) > cost[full * r + root])
    throw std::logic_error("min_augmenting_set: reconstructed set fails its postcondition");
  return result;
}

}  // namespace steiner
