#include "steiner/dst_branch.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include "steiner/exact_steiner.hpp"

namespace steiner {

void BranchStats::merge(const BranchStats& o) {
  nodes += o.nodes;
  max_dw = std::max(max_dw, o.max_dw);
  max_depth = std::max(max_depth, o.max_depth);
  budget_prunes += o.budget_prunes;
  count_prunes += o.count_prunes;
  exact_feasible += o.exact_feasible;
  exact_infeasible += o.exact_infeasible;
  take_branches += o.take_branches;
  delete_branches += o.delete_branches;
  measure_violations += o.measure_violations;
  dw_audit_violations += o.dw_audit_violations;
}

std::string BranchStats::line() const {
  std::ostringstream os;
  os << "STATS nodes=" << nodes << " max_dw=" << max_dw << " max_depth=" << max_depth
     << " budget_prunes=" << budget_prunes << " count_prunes=" << count_prunes
     << " exact_feasible=" << exact_feasible << " exact_infeasible=" << exact_infeasible
     << " take_branches=" << take_branches << " delete_branches=" << delete_branches
     << " measure_violations=" << measure_violations;
  return os.str();
}

int effective_degree_bound(const SolverConfig& cfg, const DstInstance& reduced) {
  switch (cfg.mode) {
    case DegreeBoundMode::kDegenerateAuto:
      return std::max(1, degeneracy(reduced.graph).degeneracy);
    case DegreeBoundMode::kExplicit:
      if (cfg.db < 1) throw std::invalid_argument("degree bound must be at least 1");
      return cfg.db;
    case DegreeBoundMode::kMinorFree:
      if (cfg.minor_h < 3) throw std::invalid_argument("minor-free mode needs h >= 3");
      return cfg.minor_h - 2;
  }
  throw std::invalid_argument("unknown degree bound mode");
}

BranchState compute_partition(const ReducedInstance& ri, const VertexSet& y, int db,
                              std::span<const char> removed) {
  const DstInstance& inst = ri.inst;
  const Vertex n = inst.graph.num_vertices();
  auto is_removed = [&](Vertex v) { return !removed.empty() && removed[v]; };

  std::vector<char> is_terminal = to_mask(n, inst.terminals);
  std::vector<char> chosen(n, 0);
  for (Vertex v : y) {
    if (v < 0 || v >= n || v == inst.root || is_terminal[v])
      throw std::invalid_argument("partial solution meets the terminals or the root");
    if (is_removed(v)) throw std::invalid_argument("partial solution contains a deleted vertex");
    chosen[v] = 1;
  }
  chosen[inst.root] = 1;

  BranchState s;
  s.y = y;
  s.db = db;
  std::vector<char> open(n, 0);  // source terminals not yet dominated
  for (Vertex t : ri.source_terminals) {
    auto in = inst.graph.in(t);
    if (std::any_of(in.begin(), in.end(), [&](Vertex u) { return chosen[u] && !is_removed(u); })) {
      s.t1.push_back(t);
    } else {
      open[t] = 1;
    }
  }

  std::vector<char> heavy(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (is_terminal[v] || chosen[v] || is_removed(v)) continue;
    int count = 0;
    for (Vertex w : inst.graph.out(v)) count += open[w];
    if (count >= db + 1) {
      heavy[v] = 1;
      s.bh.push_back(v);
    } else {
      s.bl.push_back(v);
    }
  }
  for (Vertex t : ri.source_terminals) {
    if (!open[t]) continue;
    auto in = inst.graph.in(t);
    if (std::any_of(in.begin(), in.end(), [&](Vertex u) { return heavy[u]; })) {
      s.wh.push_back(t);
    } else {
      s.wl.push_back(t);
    }
  }
  s.mu = static_cast<long long>(db) * (inst.budget - static_cast<long long>(y.size())) -
         static_cast<long long>(s.wl.size());
  return s;
}

namespace {

enum class BranchKind { kRoot, kTake, kDelete };

class DstSearch {
 public:
  DstSearch(const ReducedInstance& ri, const SolverConfig& cfg, int db) : ri_(ri), cfg_(cfg), db_(db) {}

  Solution run(VertexSet y, std::vector<char> removed, int depth, long long parent_mu, BranchKind kind,
               BranchStats& st) const {
    if (cfg_.deadline && std::chrono::steady_clock::now() > *cfg_.deadline) throw SolveTimeout();
    ++st.nodes;
    st.max_depth = std::max(st.max_depth, depth);

    const BranchState s = compute_partition(ri_, y, db_, removed);
    if (kind == BranchKind::kTake && s.mu > parent_mu - db_) ++st.measure_violations;
    if (kind == BranchKind::kDelete && s.mu > parent_mu - 1) ++st.measure_violations;

    const long long k = ri_.inst.budget;
    if (static_cast<long long>(y.size()) > k) {
      ++st.budget_prunes;
      return Solution::infeasible();
    }
    if (static_cast<long long>(s.wl.size()) > static_cast<long long>(db_) * (k - static_cast<long long>(y.size()))) {
      ++st.count_prunes;
      return Solution::infeasible();
    }
    if (s.bh.empty()) return base_case(s, removed, st);

    // Vertex of W_h with the fewest heavy in-neighbors (lowest id on ties).
    std::vector<char> heavy(ri_.inst.graph.num_vertices(), 0);
    for (Vertex b : s.bh) heavy[b] = 1;
    Vertex pick = -1;
    VertexSet pick_heavy;
    for (Vertex w : s.wh) {
      VertexSet hin;
      for (Vertex u : ri_.inst.graph.in(w))
        if (heavy[u]) hin.push_back(u);
      if (pick < 0 || hin.size() < pick_heavy.size()) {
        pick = w;
        pick_heavy = std::move(hin);
      }
    }
    const int dw = static_cast<int>(pick_heavy.size());
    st.max_dw = std::max(st.max_dw, dw);
    if (cfg_.dw_bound && dw > *cfg_.dw_bound) ++st.dw_audit_violations;

    const bool fork = cfg_.parallel && !cfg_.deterministic && depth < 2;
    std::vector<Solution> results;
    if (fork) {
      std::vector<std::future<std::pair<Solution, BranchStats>>> jobs;
      for (Vertex u : pick_heavy)
        jobs.push_back(std::async(std::launch::async, [this, y, removed, u, depth, &s] {
          BranchStats local;
          Solution r = run(with(y, u), removed, depth + 1, s.mu, BranchKind::kTake, local);
          return std::pair{std::move(r), local};
        }));
      jobs.push_back(std::async(std::launch::async, [this, y, removed, depth, &s, &pick_heavy] {
        BranchStats local;
        std::vector<char> rm = removed;
        for (Vertex u : pick_heavy) rm[u] = 1;
        Solution r = run(y, std::move(rm), depth + 1, s.mu, BranchKind::kDelete, local);
        return std::pair{std::move(r), local};
      }));
      for (auto& job : jobs) {
        auto [r, local] = job.get();
        st.merge(local);
        results.push_back(std::move(r));
      }
      st.take_branches += static_cast<long long>(pick_heavy.size());
      ++st.delete_branches;
    } else {
      for (Vertex u : pick_heavy) {
        ++st.take_branches;
        results.push_back(run(with(y, u), removed, depth + 1, s.mu, BranchKind::kTake, st));
      }
      ++st.delete_branches;
      for (Vertex u : pick_heavy) removed[u] = 1;
      results.push_back(run(std::move(y), std::move(removed), depth + 1, s.mu, BranchKind::kDelete, st));
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

  Solution base_case(const BranchState& s, const std::vector<char>& removed, BranchStats& st) const {
    // Here W_h is empty, so T0 \ T1 == W_l.
    if (!s.wh.empty()) throw std::logic_error("base case reached with non-empty W_h");
    AugmentQuery q;
    q.graph = &ri_.inst.graph;
    q.root = ri_.inst.root;
    std::set_union(ri_.inst.terminals.begin(), ri_.inst.terminals.end(), s.y.begin(), s.y.end(),
                   std::back_inserter(q.free_vertices));
    std::set_union(s.y.begin(), s.y.end(), s.wl.begin(), s.wl.end(), std::back_inserter(q.required));
    q.removed = removed;
    auto extra = min_augmenting_set(q);
    if (!extra || s.y.size() + extra->size() > static_cast<std::size_t>(ri_.inst.budget)) {
      ++st.exact_infeasible;
      return Solution::infeasible();
    }
    ++st.exact_feasible;
    VertexSet all;
    std::set_union(s.y.begin(), s.y.end(), extra->begin(), extra->end(), std::back_inserter(all));
    return Solution::of(std::move(all));
  }

  const ReducedInstance& ri_;
  const SolverConfig& cfg_;
  int db_;
};

}  // namespace

Solution dst_solve(const ReducedInstance& ri, const SolverConfig& cfg, const VertexSet& y, BranchStats* stats) {
  validate(ri.inst);
  if (!is_acyclic(terminal_subgraph(ri.inst)))
    throw std::invalid_argument("dst_solve requires an acyclic terminal subgraph");
  const int db = effective_degree_bound(cfg, ri.inst);
  if (!std::is_sorted(y.begin(), y.end())) throw std::invalid_argument("partial solution must be sorted");

  BranchStats local;
  DstSearch search(ri, cfg, db);
  Solution result = search.run(y, std::vector<char>(ri.inst.graph.num_vertices(), 0), 0, 0, BranchKind::kRoot, local);
  if (stats) stats->merge(local);
  return result;
}

Solution solve_driver(const DstInstance& inst, const SolverConfig& cfg, BranchStats* stats, int* db_used) {
  validate(inst);
  ReducedInstance ri = reduce(inst);
  SolverConfig resolved = cfg;
  resolved.db = effective_degree_bound(cfg, ri.inst);
  resolved.mode = DegreeBoundMode::kExplicit;
  if (db_used) *db_used = resolved.db;

  Solution s = dst_solve(ri, resolved, {}, stats);
  if (!s.feasible) return s;
  VertexSet original;
  for (Vertex v : s.vertices) original.push_back(ri.original_of[v]);
  std::sort(original.begin(), original.end());
  return Solution::of(std::move(original));
}

}  // namespace steiner
