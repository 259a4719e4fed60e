#include "steiner/oracles.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>

namespace steiner::oracle {

namespace {

long double subsets_up_to(std::size_t n, std::size_t k) {
  long double total = 0, term = 1;
  for (std::size_t i = 0; i <= std::min(n, k); ++i) {
    total += term;
    term = term * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
  }
  return total;
}

void guard(std::size_t candidates, std::size_t k) {
  if (subsets_up_to(candidates, k) > kMaxSubsets)
    throw SizeGuardExceeded("oracle refuses: " + std::to_string(candidates) + " candidates with budget " +
                            std::to_string(k) + " exceed the enumeration limit");
}

// Visits index combinations of `pool` of every size 0..k in lexicographic
// order until `accept` returns true. Returns the accepted combination.
template <typename Accept>
std::optional<std::vector<Vertex>> first_combination(const std::vector<Vertex>& pool, std::size_t k, Accept accept) {
  const std::size_t n = pool.size();
  std::vector<Vertex> pick;
  for (std::size_t size = 0; size <= std::min(k, n); ++size) {
    std::vector<std::size_t> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      pick.clear();
      for (std::size_t i : idx) pick.push_back(pool[i]);
      if (accept(pick)) return pick;
      // Advance to the next combination.
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == n - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace

Solution brute_force_dst(const DstInstance& inst) {
  validate(inst);
  std::vector<char> excluded = to_mask(inst.graph.num_vertices(), inst.terminals);
  excluded[inst.root] = 1;
  std::vector<Vertex> pool;
  for (Vertex v = 0; v < inst.graph.num_vertices(); ++v)
    if (!excluded[v]) pool.push_back(v);
  const auto k = static_cast<std::size_t>(inst.budget);
  guard(pool.size(), k);
  auto found = first_combination(pool, k, [&](const std::vector<Vertex>& s) {
    return verify_dst(inst, Solution::of(s));
  });
  return found ? Solution::of(*found) : Solution::infeasible();
}

Solution brute_force_domset(const DsInstance& inst) {
  if (inst.budget < 0) throw std::invalid_argument("negative budget");
  std::vector<Vertex> pool(inst.graph.num_vertices());
  std::iota(pool.begin(), pool.end(), 0);
  const auto k = static_cast<std::size_t>(inst.budget);
  guard(pool.size(), k);
  auto found = first_combination(pool, k, [&](const std::vector<Vertex>& s) { return verify_domset(inst.graph, s); });
  return found ? Solution::of(*found) : Solution::infeasible();
}

std::optional<std::vector<int>> brute_force_setcover(const SetCoverInstance& sc) {
  validate(sc);
  const std::size_t words = (static_cast<std::size_t>(sc.num_elements) + 63) / 64;
  std::vector<std::vector<std::uint64_t>> bits(sc.sets.size(), std::vector<std::uint64_t>(words, 0));
  std::vector<std::uint64_t> all(words, 0);
  for (std::size_t j = 0; j < sc.sets.size(); ++j)
    for (int e : sc.sets[j]) {
      bits[j][e / 64] |= std::uint64_t{1} << (e % 64);
      all[e / 64] |= std::uint64_t{1} << (e % 64);
    }
  for (int e = 0; e < sc.num_elements; ++e)
    if (!((all[e / 64] >> (e % 64)) & 1)) return std::nullopt;

  std::vector<Vertex> pool(sc.sets.size());
  std::iota(pool.begin(), pool.end(), 0);
  guard(pool.size(), pool.size());
  std::vector<std::uint64_t> acc(words);
  auto found = first_combination(pool, pool.size(), [&](const std::vector<Vertex>& s) {
    std::fill(acc.begin(), acc.end(), 0);
    for (Vertex j : s)
      for (std::size_t w = 0; w < words; ++w) acc[w] |= bits[j][w];
    return acc == all;
  });
  if (!found) return std::nullopt;
  return std::vector<int>(found->begin(), found->end());
}

std::optional<VertexSet> brute_force_augment(const Digraph& d, Vertex root, const VertexSet& free_vertices,
                                             const VertexSet& required) {
  const Vertex n = d.num_vertices();
  std::vector<char> is_free(n, 0);
  for (Vertex v : free_vertices) is_free[v] = 1;
  std::vector<Vertex> pool;
  for (Vertex v = 0; v < n; ++v)
    if (!is_free[v] && v != root) pool.push_back(v);
  guard(pool.size(), pool.size());

  std::vector<char> allowed(n), seen(n);
  std::vector<Vertex> queue;
  auto reaches_all = [&](const std::vector<Vertex>& s) {
    allowed = is_free;
    allowed[root] = 1;
    for (Vertex v : s) allowed[v] = 1;
    std::fill(seen.begin(), seen.end(), 0);
    queue.assign(1, root);
    seen[root] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (Vertex w : d.out(queue[h]))
        if (allowed[w] && !seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
    return std::all_of(required.begin(), required.end(), [&](Vertex t) { return seen[t] != 0; });
  };
  return first_combination(pool, pool.size(), reaches_all);
}

}  // namespace steiner::oracle
