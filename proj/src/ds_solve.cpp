#include <algorithm>
#include <future>
#include <stdexcept>

#include "steiner/domset.hpp"
#include "steiner/exact_steiner.hpp"

namespace steiner {

bool verify_domset(const Graph& g, std::span<const Vertex> s) {
  const Vertex n = g.num_vertices();
  std::vector<char> dominated(n, 0);
  for (Vertex v : s) {
    if (v < 0 || v >= n) return false;
    dominated[v] = 1;
    for (Vertex u : g.neighbors(v)) dominated[u] = 1;
  }
  return std::all_of(dominated.begin(), dominated.end(), [](char c) { return c != 0; });
}

bool DsMask::edge_gone(Vertex u, Vertex v) const {
  if (removed_edges.empty()) return false;
  return std::binary_search(removed_edges.begin(), removed_edges.end(), std::pair{std::min(u, v), std::max(u, v)});
}

namespace {

template <typename F>
void for_each_live_neighbor(const Graph& g, const DsMask& mask, Vertex v, F&& f) {
  for (Vertex u : g.neighbors(v))
    if (!mask.vertex_gone(u) && !mask.edge_gone(v, u)) f(u);
}

}  // namespace

DsState ds_compute_state(const Graph& g, const VertexSet& y, int db, const DsMask& mask) {
  const Vertex n = g.num_vertices();
  enum : char { kNone, kY, kB, kW };
  std::vector<char> role(n, kNone);
  for (Vertex v : y) {
    if (v < 0 || v >= n || mask.vertex_gone(v)) throw std::invalid_argument("partial solution vertex not in graph");
    role[v] = kY;
  }
  DsState s;
  s.y = y;
  s.db = db;
  for (Vertex v = 0; v < n; ++v) {
    if (mask.vertex_gone(v) || role[v] == kY) continue;
    bool dominated = false;
    for_each_live_neighbor(g, mask, v, [&](Vertex u) { dominated = dominated || role[u] == kY; });
    role[v] = dominated ? kB : kW;
    (dominated ? s.b : s.w).push_back(v);
  }
  std::vector<char> heavy(n, 0);
  for (Vertex v : s.b) {
    int count = 0;
    for_each_live_neighbor(g, mask, v, [&](Vertex u) { count += role[u] == kW; });
    if (count >= db + 1) {
      heavy[v] = 1;
      s.bh.push_back(v);
    } else {
      s.bl.push_back(v);
    }
  }
  for (Vertex v : s.w) {
    bool high = false;
    for_each_live_neighbor(g, mask, v, [&](Vertex u) { high = high || heavy[u] || role[u] == kW; });
    (high ? s.wh : s.wl).push_back(v);
  }
  return s;
}

namespace {

enum class BranchKind { kRoot, kTake, kDelete };

class DsSearch {
 public:
  DsSearch(const DsInstance& inst, int db, const SolverConfig& cfg) : inst_(inst), db_(db), cfg_(cfg) {}

  Solution run(const VertexSet& y, const DsMask& mask, int depth, long long parent_mu, BranchKind kind,
               BranchStats& st) const {
    if (cfg_.deadline && std::chrono::steady_clock::now() > *cfg_.deadline) throw SolveTimeout();
    ++st.nodes;
    st.max_depth = std::max(st.max_depth, depth);

    const Graph& g = inst_.graph;
    const long long k = inst_.budget;
    DsState s = ds_compute_state(g, y, db_, mask);
    s.mu = static_cast<long long>(db_) * (k - static_cast<long long>(y.size())) - static_cast<long long>(s.wl.size());
    if (kind == BranchKind::kTake && s.mu > parent_mu - db_) ++st.measure_violations;
    if (kind == BranchKind::kDelete && s.mu > parent_mu - 1) ++st.measure_violations;

    if (static_cast<long long>(y.size()) > k) {
      ++st.budget_prunes;
      return Solution::infeasible();
    }
    if (static_cast<long long>(s.wl.size()) > static_cast<long long>(db_) * (k - static_cast<long long>(y.size()))) {
      ++st.count_prunes;
      return Solution::infeasible();
    }
    if (s.wh.empty()) return base_case(s, mask, st);

    std::vector<char> high(g.num_vertices(), 0);
    for (Vertex v : s.bh) high[v] = 1;
    for (Vertex v : s.wh) high[v] = 1;
    Vertex pick = -1;
    VertexSet pick_nb;
    for (Vertex v : s.wh) {
      VertexSet nb;
      for_each_live_neighbor(g, mask, v, [&](Vertex u) {
        if (high[u]) nb.push_back(u);
      });
      if (pick < 0 || nb.size() < pick_nb.size()) {
        pick = v;
        pick_nb = std::move(nb);
      }
    }
    const int dw = static_cast<int>(pick_nb.size());
    st.max_dw = std::max(st.max_dw, dw);
    if (cfg_.dw_bound && dw > *cfg_.dw_bound) ++st.dw_audit_violations;

    // Closed neighborhood candidates, ascending.
    VertexSet candidates = pick_nb;
    candidates.insert(std::lower_bound(candidates.begin(), candidates.end(), pick), pick);

    DsMask deleted = mask;
    if (deleted.removed_vertex.empty()) deleted.removed_vertex.assign(g.num_vertices(), 0);
    for (Vertex u : pick_nb) {
      if (std::binary_search(s.bh.begin(), s.bh.end(), u)) {
        deleted.removed_vertex[u] = 1;
      } else {
        deleted.removed_edges.emplace_back(std::min(pick, u), std::max(pick, u));
      }
    }
    std::sort(deleted.removed_edges.begin(), deleted.removed_edges.end());

    std::vector<Solution> results;
    const bool fork = cfg_.parallel && !cfg_.deterministic && depth < 2;
    if (fork) {
      std::vector<std::future<std::pair<Solution, BranchStats>>> jobs;
      for (Vertex u : candidates)
        jobs.push_back(std::async(std::launch::async, [this, &y, &mask, u, depth, &s] {
          BranchStats local;
          Solution r = run(with(y, u), mask, depth + 1, s.mu, BranchKind::kTake, local);
          return std::pair{std::move(r), local};
        }));
      jobs.push_back(std::async(std::launch::async, [this, &y, &deleted, depth, &s] {
        BranchStats local;
        Solution r = run(y, deleted, depth + 1, s.mu, BranchKind::kDelete, local);
        return std::pair{std::move(r), local};
      }));
      for (auto& job : jobs) {
        auto [r, local] = job.get();
        st.merge(local);
        results.push_back(std::move(r));
      }
      st.take_branches += static_cast<long long>(candidates.size());
      ++st.delete_branches;
    } else {
      for (Vertex u : candidates) {
        ++st.take_branches;
        results.push_back(run(with(y, u), mask, depth + 1, s.mu, BranchKind::kTake, st));
      }
      ++st.delete_branches;
      results.push_back(run(y, deleted, depth + 1, s.mu, BranchKind::kDelete, st));
    }

    Solution best = Solution::infeasible();
    for (auto& r : results)
      if (r.cost() < best.cost()) best = std::move(r);
    return best;
  }

 private:
  static VertexSet with(VertexSet y, Vertex u) {
    y.insert(std::lower_bound(y.begin(), y.end(), u), u);
    return y;
  }

  // W is independent and only adjacent to B_l: cover it with B_l vertices
  // through the exact augmenting-set routine on a two-layer digraph.
  Solution base_case(const DsState& s, const DsMask& mask, BranchStats& st) const {
    if (!s.bh.empty()) throw std::logic_error("W_h empty but B_h non-empty");
    const Graph& g = inst_.graph;
    const Vertex n = g.num_vertices();
    VertexSet chosen = s.y;

    std::vector<Vertex> local(n, -1);
    Vertex next = 1;  // 0 is the fresh root
    for (Vertex v : s.bl) local[v] = next++;
    VertexSet covered_w;
    std::vector<std::pair<Vertex, Vertex>> arcs;
    for (Vertex b : s.bl) arcs.emplace_back(0, local[b]);
    for (Vertex w : s.w) {
      bool isolated = true;
      for_each_live_neighbor(g, mask, w, [&](Vertex) { isolated = false; });
      if (isolated) {
        chosen.push_back(w);
        continue;
      }
      local[w] = next++;
      covered_w.push_back(local[w]);
      for_each_live_neighbor(g, mask, w, [&](Vertex b) {
        if (local[b] > 0 && local[b] <= static_cast<Vertex>(s.bl.size())) arcs.emplace_back(local[b], local[w]);
      });
    }
    std::sort(chosen.begin(), chosen.end());

    Digraph layered(next, std::move(arcs));
    AugmentQuery q;
    q.graph = &layered;
    q.root = 0;
    q.free_vertices = covered_w;
    q.required = covered_w;
    auto extra = min_augmenting_set(q);
    if (!extra || chosen.size() + extra->size() > static_cast<std::size_t>(inst_.budget)) {
      ++st.exact_infeasible;
      return Solution::infeasible();
    }
    for (Vertex b : *extra) chosen.push_back(s.bl[b - 1]);
    std::sort(chosen.begin(), chosen.end());
    ++st.exact_feasible;
    return Solution::of(std::move(chosen));
  }

  const DsInstance& inst_;
  int db_;
  const SolverConfig& cfg_;
};

}  // namespace

Solution ds_solve(const DsInstance& inst, int db, const VertexSet& y, const SolverConfig& cfg, BranchStats* stats) {
  if (db < 1) throw std::invalid_argument("degree bound must be at least 1");
  if (inst.budget < 0) throw std::invalid_argument("negative budget");
  const Graph& g = inst.graph;
  VertexSet start = y;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (g.degree(v) == 0) start.push_back(v);
  std::sort(start.begin(), start.end());
  start.erase(std::unique(start.begin(), start.end()), start.end());

  BranchStats local;
  DsSearch search(inst, db, cfg);
  Solution result = search.run(start, DsMask{}, 0, 0, BranchKind::kRoot, local);
  if (stats) stats->merge(local);
  return result;
}

}  // namespace steiner
