#include "steiner/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace steiner {

void validate(const SetCoverInstance& sc) {
  if (sc.num_elements < 0) throw std::invalid_argument("negative element count");
  if (sc.budget < 0) throw std::invalid_argument("negative budget");
  for (std::size_t i = 0; i < sc.sets.size(); ++i) {
    const auto& s = sc.sets[i];
    if (s.empty()) throw std::invalid_argument("set " + std::to_string(i + 1) + " is empty");
    if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
      throw std::invalid_argument("set " + std::to_string(i + 1) + " is not sorted and unique");
    if (s.front() < 0 || s.back() >= sc.num_elements)
      throw std::invalid_argument("set " + std::to_string(i + 1) + " has an element out of range");
  }
}

namespace {

std::vector<std::vector<int>> sets_containing(const SetCoverInstance& sc) {
  std::vector<std::vector<int>> owners(sc.num_elements);
  for (std::size_t j = 0; j < sc.sets.size(); ++j)
    for (int e : sc.sets[j]) owners[e].push_back(static_cast<int>(j));
  return owners;
}

void require_cover(const SetCoverInstance& sc, const std::vector<std::vector<int>>& owners) {
  if (sc.sets.empty()) throw std::invalid_argument("set family is empty");
  for (int e = 0; e < sc.num_elements; ++e)
    if (owners[e].empty()) throw std::invalid_argument("element " + std::to_string(e + 1) + " is in no set");
}

long long padding_count(std::size_t m, double gamma, double c, long long cap) {
  if (!(gamma > 0) || !(c > 0)) throw std::invalid_argument("gamma and c must be positive");
  const double raw = std::pow(static_cast<double>(m), 2.0 * gamma / c);
  if (!(raw <= static_cast<double>(cap))) throw std::length_error("padding of " + std::to_string(raw) + " vertices exceeds cap");
  return static_cast<long long>(std::ceil(raw - 1e-9));
}

}  // namespace

DstInstance gen_dst_from_setcover_2deg(const SetCoverInstance& sc) {
  validate(sc);
  auto owners = sets_containing(sc);
  require_cover(sc, owners);
  const Vertex m = static_cast<Vertex>(sc.sets.size());

  std::vector<std::pair<Vertex, Vertex>> arcs;
  DstInstance inst;
  inst.root = 0;
  Vertex next = 0;
  auto fresh = [&next] { return next++; };

  // Master cycle r, c_1..c_m with every edge subdivided.
  std::vector<Vertex> master{fresh()};
  for (Vertex i = 0; i < m; ++i) master.push_back(fresh());
  std::vector<Vertex> master_sub;
  for (Vertex i = 0; i <= m; ++i) master_sub.push_back(fresh());
  for (Vertex i = 0; i <= m; ++i) {
    arcs.emplace_back(master[i], master_sub[i]);
    arcs.emplace_back(master_sub[i], master[(i + 1) % (m + 1)]);
    inst.terminals.push_back(master_sub[i]);
    if (i > 0) inst.terminals.push_back(master[i]);
  }
  std::vector<Vertex> set_vertex;
  for (Vertex i = 0; i < m; ++i) {
    set_vertex.push_back(fresh());
    arcs.emplace_back(master[i + 1], set_vertex[i]);
  }

  for (int e = 0; e < sc.num_elements; ++e) {
    const auto& own = owners[e];
    const Vertex len = static_cast<Vertex>(own.size());
    std::vector<Vertex> ring;
    for (Vertex j = 0; j < len; ++j) {
      ring.push_back(fresh());
      inst.terminals.push_back(ring.back());
      arcs.emplace_back(set_vertex[own[j]], ring.back());
    }
    if (len < 2) continue;  // a one-vertex cycle carries no arc
    for (Vertex j = 0; j < len; ++j) {
      Vertex s = fresh();
      inst.terminals.push_back(s);
      arcs.emplace_back(ring[j], s);
      arcs.emplace_back(s, ring[(j + 1) % len]);
    }
  }

  inst.graph = Digraph(next, std::move(arcs));
  std::sort(inst.terminals.begin(), inst.terminals.end());
  inst.budget = sc.budget;
  if (degeneracy(inst.graph).degeneracy != 2) throw std::logic_error("set cover gadget is not 2-degenerate");
  return inst;
}

DstInstance gen_dst_from_setcover_logdeg(const SetCoverInstance& sc, double gamma, double c, long long cap) {
  validate(sc);
  auto owners = sets_containing(sc);
  require_cover(sc, owners);
  const long long pad = padding_count(sc.sets.size(), gamma, c, cap);
  const Vertex m = static_cast<Vertex>(sc.sets.size());
  const Vertex n_el = sc.num_elements;

  DstInstance inst;
  inst.root = 0;
  std::vector<std::pair<Vertex, Vertex>> arcs;
  for (Vertex j = 0; j < m; ++j) {
    arcs.emplace_back(0, 1 + j);
    for (int e : sc.sets[j]) arcs.emplace_back(1 + j, 1 + m + e);
  }
  for (Vertex e = 0; e < n_el; ++e) inst.terminals.push_back(1 + m + e);
  inst.graph = Digraph(static_cast<Vertex>(1 + m + n_el + pad), std::move(arcs));
  inst.budget = sc.budget;
  return inst;
}

DsInstance gen_domset_from_setcover(const SetCoverInstance& sc, double gamma, double c, long long cap) {
  validate(sc);
  auto owners = sets_containing(sc);
  require_cover(sc, owners);
  const long long leaves = padding_count(sc.sets.size(), gamma, c, cap);
  const Vertex m = static_cast<Vertex>(sc.sets.size());
  const Vertex n_el = sc.num_elements;
  const Vertex r = m + n_el, p = r + 1, q = r + 2;

  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex j = 0; j < m; ++j) {
    edges.emplace_back(r, j);
    for (int e : sc.sets[j]) edges.emplace_back(j, m + e);
  }
  edges.emplace_back(r, p);
  for (long long i = 0; i < leaves; ++i) edges.emplace_back(q, static_cast<Vertex>(q + 1 + i));
  return {Graph(static_cast<Vertex>(q + 1 + leaves), std::move(edges)), sc.budget + 2};
}

DstInstance gen_dst_from_domset(const DsInstance& ds) {
  const Graph& g = ds.graph;
  const Vertex n = g.num_vertices();
  std::vector<std::pair<Vertex, Vertex>> arcs;
  for (Vertex u = 0; u < n; ++u) {
    arcs.emplace_back(2 * n, u);
    arcs.emplace_back(u, n + u);
    for (Vertex v : g.neighbors(u)) arcs.emplace_back(u, n + v);
  }
  DstInstance inst;
  inst.graph = Digraph(2 * n + 1, std::move(arcs));
  inst.root = 2 * n;
  for (Vertex v = 0; v < n; ++v) inst.terminals.push_back(n + v);
  inst.budget = ds.budget;
  return inst;
}

PsiSetCover gen_setcover_from_psi(const PsiInstance& psi) {
  const Graph& h = psi.host;
  const Graph& g = psi.pattern;
  const Vertex nh = h.num_vertices();
  const int l = g.num_vertices();
  if (static_cast<Vertex>(psi.color.size()) != nh) throw std::invalid_argument("coloring size mismatch");
  for (int c : psi.color)
    if (c < 0 || c >= l) throw std::invalid_argument("color out of range");
  for (Vertex i = 0; i < l; ++i)
    if (g.degree(i) == 0) throw std::invalid_argument("pattern vertex " + std::to_string(i + 1) + " is isolated");
  std::vector<VertexSet> klass(l);
  for (Vertex v = 0; v < nh; ++v) klass[psi.color[v]].push_back(v);
  for (int i = 0; i < l; ++i)
    if (klass[i].empty()) throw std::invalid_argument("color class " + std::to_string(i + 1) + " is empty");

  PsiSetCover out;

  // b-subsets of [2b] in colex order (increasing bitmask), one per host vertex.
  int b = 0;
  while ((1LL << b) < nh) ++b;
  auto binom = [](int n, int k) {
    long double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  while (binom(2 * b, b) < nh) ++b;
  if (2 * b > 62) throw std::length_error("host graph too large for id encoding");
  out.id_bits = b;
  std::uint64_t mask = (std::uint64_t{1} << b) - 1;
  for (Vertex v = 0; v < nh; ++v) {
    out.id.push_back(mask);
    if (mask == 0) break;
    const std::uint64_t low = mask & (~mask + 1);
    const std::uint64_t ripple = mask + low;
    mask = (((ripple ^ mask) >> 2) / low) | ripple;
  }

  // Sets grouped by grid position.
  std::map<std::pair<int, int>, std::vector<std::pair<Vertex, Vertex>>> cells;
  for (int i = 0; i < l; ++i)
    for (Vertex v : klass[i]) cells[{i, i}].emplace_back(v, v);
  for (const auto& [gi, gj] : g.edges()) {
    cells[{gi, gj}];
    cells[{gj, gi}];
  }
  for (const auto& [x, y] : h.edges()) {
    const int cx = psi.color[x], cy = psi.color[y];
    if (cx == cy || !g.has_edge(cx, cy)) continue;
    cells[{cx, cy}].emplace_back(x, y);
    cells[{cy, cx}].emplace_back(y, x);
  }
  int element = 0;
  std::map<std::pair<int, int>, int> cell_element;
  for (auto& [pos, members] : cells) {
    if (members.empty())
      throw std::invalid_argument("grid position (" + std::to_string(pos.first + 1) + "," +
                                  std::to_string(pos.second + 1) + ") has no set");
    std::sort(members.begin(), members.end());
    cell_element[pos] = element++;
  }

  // Consecutive non-empty positions along rows, then along columns.
  std::vector<std::vector<int>> row_cols(l), col_rows(l);
  for (const auto& [pos, members] : cells) {
    row_cols[pos.first].push_back(pos.second);
    col_rows[pos.second].push_back(pos.first);
  }
  for (int i = 0; i < l; ++i) {
    std::sort(row_cols[i].begin(), row_cols[i].end());
    for (std::size_t a = 0; a + 1 < row_cols[i].size(); ++a) {
      out.pairs.push_back({i, row_cols[i][a], i, row_cols[i][a + 1], element, true});
      element += 2 * b;
    }
  }
  for (int j = 0; j < l; ++j) {
    std::sort(col_rows[j].begin(), col_rows[j].end());
    for (std::size_t a = 0; a + 1 < col_rows[j].size(); ++a) {
      out.pairs.push_back({col_rows[j][a], j, col_rows[j][a + 1], j, element, false});
      element += 2 * b;
    }
  }
  out.sc.num_elements = element;

  std::map<std::pair<int, int>, std::size_t> first_set;
  for (const auto& [pos, members] : cells) {
    first_set[pos] = out.sc.sets.size();
    for (const auto& [u, v] : members) {
      out.sc.sets.push_back({cell_element[pos]});
      out.info.push_back({pos.first, pos.second, u, v});
    }
  }
  for (const auto& pr : out.pairs) {
    // Row pairs key on the first endpoint, column pairs on the second.
    auto add = [&](int row, int col, bool complement) {
      const auto& members = cells[{row, col}];
      for (std::size_t s = 0; s < members.size(); ++s) {
        const Vertex key = pr.along_row ? members[s].first : members[s].second;
        auto& set = out.sc.sets[first_set[{row, col}] + s];
        for (int a = 0; a < 2 * b; ++a) {
          const bool in_id = (out.id[key] >> a) & 1;
          if (in_id != complement) set.push_back(pr.first_element + a);
        }
      }
    };
    add(pr.row1, pr.col1, true);
    add(pr.row2, pr.col2, false);
  }
  for (auto& s : out.sc.sets) std::sort(s.begin(), s.end());
  out.sc.budget = static_cast<int>(2 * g.num_edges() + l);
  return out;
}

namespace {

// Up to d distinct earlier positions for position i.
void draw_earlier(std::mt19937_64& rng, int i, int d, std::vector<int>& out) {
  out.clear();
  if (i <= d) {
    for (int j = 0; j < i; ++j) out.push_back(j);
    return;
  }
  std::uniform_int_distribution<int> pick(0, i - 1);
  while (static_cast<int>(out.size()) < d) {
    int j = pick(rng);
    if (std::find(out.begin(), out.end(), j) == out.end()) out.push_back(j);
  }
}

}  // namespace

DstInstance gen_random_sparse(int n, int d, double terminal_fraction, int k, std::uint64_t seed,
                              bool acyclic_terminals) {
  if (n < 1) throw std::invalid_argument("need at least one vertex");
  if (d < 0) throw std::invalid_argument("negative degeneracy bound");
  if (!(terminal_fraction >= 0.0 && terminal_fraction <= 1.0))
    throw std::invalid_argument("terminal fraction outside [0, 1]");
  if (k < 0) throw std::invalid_argument("negative budget");

  std::mt19937_64 rng(seed);
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<Vertex> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  std::shuffle(pick.begin(), pick.end(), rng);
  const int t = std::min(n - 1, static_cast<int>(std::floor(terminal_fraction * n)));
  DstInstance inst;
  inst.terminals.assign(pick.begin(), pick.begin() + t);
  std::sort(inst.terminals.begin(), inst.terminals.end());
  inst.root = pick[t];
  std::vector<char> is_terminal = to_mask(n, inst.terminals);

  std::vector<std::pair<Vertex, Vertex>> arcs;
  std::vector<int> earlier;
  std::bernoulli_distribution coin(0.5);
  for (int i = 1; i < n; ++i) {
    draw_earlier(rng, i, d, earlier);
    const Vertex v = order[i];
    for (int j : earlier) {
      const Vertex u = order[j];
      const bool forward = coin(rng);
      if (acyclic_terminals && is_terminal[u] && is_terminal[v]) {
        arcs.emplace_back(u, v);
      } else {
        arcs.push_back(forward ? std::pair{u, v} : std::pair{v, u});
      }
    }
  }
  inst.graph = Digraph(n, std::move(arcs));
  inst.budget = k;
  return inst;
}

Graph gen_random_degenerate_graph(int n, int d, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  if (d < 0) throw std::invalid_argument("negative degeneracy bound");
  std::mt19937_64 rng(seed);
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(static_cast<std::size_t>(n) * d);
  std::vector<int> earlier;
  for (int i = 1; i < n; ++i) {
    draw_earlier(rng, i, d, earlier);
    for (int j : earlier) edges.emplace_back(order[j], order[i]);
  }
  return Graph(n, std::move(edges));
}

SetCoverInstance gen_random_setcover(int num_elements, int num_sets, int max_set_size, int k, std::uint64_t seed) {
  if (num_elements < 1 || num_sets < 1 || max_set_size < 1 || k < 0)
    throw std::invalid_argument("invalid random set cover parameters");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> elem(0, num_elements - 1), set(0, num_sets - 1),
      size(1, std::min(max_set_size, num_elements));
  SetCoverInstance sc;
  sc.num_elements = num_elements;
  sc.budget = k;
  sc.sets.resize(num_sets);
  for (auto& s : sc.sets) {
    const int want = size(rng);
    while (static_cast<int>(s.size()) < want) {
      int e = elem(rng);
      if (std::find(s.begin(), s.end(), e) == s.end()) s.push_back(e);
    }
  }
  std::vector<char> covered(num_elements, 0);
  for (const auto& s : sc.sets)
    for (int e : s) covered[e] = 1;
  for (int e = 0; e < num_elements; ++e)
    if (!covered[e]) sc.sets[set(rng)].push_back(e);
  for (auto& s : sc.sets) std::sort(s.begin(), s.end());
  return sc;
}

}  // namespace steiner
