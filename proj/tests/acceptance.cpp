// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Usage: acceptance <path-to-steiner-cli> [workdir]

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "steiner/ds_approx.hpp"
#include "steiner/domset.hpp"
#include "steiner/dst_branch.hpp"
#include "steiner/exact_steiner.hpp"
#include "steiner/io.hpp"
#include "steiner/oracles.hpp"
#include "steiner/reductions.hpp"
#include "support.hpp"

using namespace steiner;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(double x, int precision = 2) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(precision);
  s << x;
  return s.str();
}

// Measure and branching counters accumulated across criteria 1 and 6.
BranchStats g_measure;
long long g_measure_runs = 0;
long long g_dw_nodes_checked = 0;
long long g_dw_violations = 0;
int g_dw_worst_excess = 0;

Outcome dst_oracle_equivalence() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1001);
  int instances = 0, mismatches = 0, feasible = 0;
  for (; instances < 600; ++instances) {
    const int n = 4 + static_cast<int>(rng() % 11);  // 4..14
    const int d = 1 + static_cast<int>(rng() % 3);
    const int k = static_cast<int>(rng() % 5);
    DstInstance inst = gen_random_sparse(n, d, 0.15 + 0.1 * static_cast<double>(rng() % 4), k, rng(), true);
    const int deg = degeneracy(inst.graph).degeneracy;
    if (deg > 3 || testing_support::has_cycle(terminal_subgraph(inst))) {
      ++mismatches;  // generator broke its own contract
      continue;
    }
    SolverConfig cfg;  // degeneracy-auto
    cfg.stats = true;
    cfg.dw_bound = std::max(1, deg);
    BranchStats st;
    int db = 0;
    Solution got = solve_driver(inst, cfg, &st, &db);
    Solution want = oracle::brute_force_dst(inst);
    if (got.cost() != want.cost() || (got.feasible && !verify_dst(inst, got))) ++mismatches;
    feasible += want.feasible;
    g_measure.merge(st);
    ++g_measure_runs;
    g_dw_nodes_checked += st.nodes;
    g_dw_violations += st.dw_audit_violations;
    g_dw_worst_excess = std::max(g_dw_worst_excess, st.max_dw - std::max(1, deg));
  }
  const double secs = seconds_since(start);
  return {mismatches == 0 && instances >= 500 && secs < 300,
          std::to_string(instances) + " instances (" + std::to_string(feasible) + " feasible), " +
              std::to_string(mismatches) + " mismatches, " + fmt(secs) + " s"};
}

Outcome rule_one_soundness() {
  std::mt19937_64 rng(1002);
  int instances = 0, mismatches = 0, cyclic_after = 0, attempts = 0;
  while (instances < 250 && attempts < 100000) {
    ++attempts;
    const int n = 3 + static_cast<int>(rng() % 10);  // 3..12
    DstInstance inst = gen_random_sparse(n, 1 + static_cast<int>(rng() % 3), 0.5 + 0.1 * (rng() % 4),
                                         static_cast<int>(rng() % 4), rng(), false);
    if (!testing_support::has_cycle(terminal_subgraph(inst))) continue;
    ++instances;
    ReducedInstance ri = reduce(inst);
    if (testing_support::has_cycle(terminal_subgraph(ri.inst)) || !is_acyclic(terminal_subgraph(ri.inst)))
      ++cyclic_after;
    if (oracle::brute_force_dst(inst).cost() != oracle::brute_force_dst(ri.inst).cost()) ++mismatches;
  }
  return {instances >= 200 && mismatches == 0 && cyclic_after == 0,
          std::to_string(instances) + " instances with terminal cycles, " + std::to_string(mismatches) +
              " optimum changes, " + std::to_string(cyclic_after) + " cyclic outputs"};
}

Outcome subroutine_exactness() {
  std::mt19937_64 rng(1003);
  int queries = 0, mismatches = 0, feasible = 0;
  while (queries < 600) {
    const Vertex n = 2 + static_cast<Vertex>(rng() % 11);  // 2..12
    Digraph d = testing_support::random_digraph(n, 0.1 + 0.05 * (rng() % 5), rng);
    const Vertex root = static_cast<Vertex>(rng() % n);
    VertexSet free_vertices, required;
    for (Vertex v = 0; v < n; ++v)
      if (v != root && rng() % 3 == 0) free_vertices.push_back(v);
    for (Vertex v : free_vertices)
      if (required.size() < 5 && rng() % 3 != 0) required.push_back(v);
    if (required.empty()) continue;
    ++queries;
    auto got = min_augmenting_set({&d, root, free_vertices, required, {}});
    auto want = oracle::brute_force_augment(d, root, free_vertices, required);
    if (got.has_value() != want.has_value() || (got && got->size() != want->size())) ++mismatches;
    feasible += want.has_value();
  }
  return {mismatches == 0, std::to_string(queries) + " queries (" + std::to_string(feasible) + " feasible), " +
                               std::to_string(mismatches) + " mismatches"};
}

Outcome ds_exactness() {
  std::mt19937_64 rng(1006);
  int instances = 0, mismatches = 0;
  for (; instances < 600; ++instances) {
    const Vertex n = 1 + static_cast<Vertex>(rng() % 14);
    Graph g = instances % 2 ? gen_random_degenerate_graph(n, 1 + static_cast<int>(rng() % 3), rng())
                            : testing_support::random_graph(n, 0.1 + 0.05 * (rng() % 6), rng);
    DsInstance inst{g, static_cast<int>(rng() % 5)};
    SolverConfig cfg;
    cfg.stats = true;
    BranchStats st;
    Solution got = ds_solve(inst, std::max(1, degeneracy(g).degeneracy), {}, cfg, &st);
    Solution want = oracle::brute_force_domset(inst);
    if (got.cost() != want.cost() || (got.feasible && !verify_domset(g, got.vertices))) ++mismatches;
    g_measure.merge(st);
    ++g_measure_runs;
  }
  return {mismatches == 0, std::to_string(instances) + " graphs, " + std::to_string(mismatches) + " mismatches"};
}

Outcome measure_law() {
  // Extra runs with explicit bounds, so the law is exercised for d_b > 1 and
  // on bounds that differ from the degeneracy.
  std::mt19937_64 rng(1004);
  for (int round = 0; round < 200; ++round) {
    SolverConfig cfg;
    cfg.mode = DegreeBoundMode::kExplicit;
    cfg.db = 1 + round % 4;
    cfg.stats = true;
    BranchStats st;
    solve_driver(gen_random_sparse(6 + static_cast<int>(rng() % 9), 3, 0.4, 4, rng(), true), cfg, &st);
    ds_solve({gen_random_degenerate_graph(6 + static_cast<int>(rng() % 9), 3, rng()), 4}, cfg.db, {}, cfg, &st);
    g_measure.merge(st);
    g_measure_runs += 2;
  }
  const long long children = g_measure.take_branches + g_measure.delete_branches;
  return {g_measure.measure_violations == 0 && children > 0,
          std::to_string(g_measure_runs) + " solver runs, " + std::to_string(children) + " branches, " +
              std::to_string(g_measure.measure_violations) + " violations"};
}

Outcome branching_audit() {
  return {g_dw_violations == 0 && g_dw_nodes_checked > 0,
          std::to_string(g_dw_nodes_checked) + " search nodes, max d_w - d = " + std::to_string(g_dw_worst_excess) +
              ", " + std::to_string(g_dw_violations) + " violations"};
}

Outcome approx_ratio() {
  std::mt19937_64 rng(1007);
  int graphs = 0, invalid = 0, ratio_checked = 0, ratio_violations = 0;
  double worst = 0;
  for (; graphs < 1200; ++graphs) {
    const bool small = graphs % 2 == 0;
    const Vertex n = small ? 1 + static_cast<Vertex>(rng() % 14) : 15 + static_cast<Vertex>(rng() % 300);
    Graph g = graphs % 3 ? gen_random_degenerate_graph(n, 1 + static_cast<int>(rng() % 4), rng())
                         : testing_support::random_graph(n, small ? 0.2 : 4.0 / n, rng);
    ApproxResult r = ds_approx(g);
    if (!verify_domset(g, r.dominating_set)) ++invalid;
    if (!small) continue;
    Solution opt = oracle::brute_force_domset({g, static_cast<int>(n)});
    const std::size_t d = std::max(1, r.degeneracy);
    ++ratio_checked;
    if (r.dominating_set.size() > d * d * opt.vertices.size()) ++ratio_violations;
    if (!opt.vertices.empty())
      worst = std::max(worst, static_cast<double>(r.dominating_set.size()) / (d * d * opt.vertices.size()));
  }
  return {invalid == 0 && ratio_violations == 0,
          std::to_string(graphs) + " graphs, " + std::to_string(invalid) + " non-dominating; " +
              std::to_string(ratio_checked) + " with OPT, " + std::to_string(ratio_violations) +
              " ratio violations (worst |Y|/(d^2 OPT) = " + fmt(worst) + ")"};
}

Outcome approx_scaling() {
  const std::array<int, 3> sizes{250'000, 500'000, 1'000'000};
  std::vector<double> medians;
  for (int n : sizes) {
    Graph g = gen_random_degenerate_graph(n, 4, 77);
    std::vector<double> runs;
    for (int rep = 0; rep < 5; ++rep) {
      const auto start = Clock::now();
      ApproxResult r = ds_approx(g);
      runs.push_back(seconds_since(start));
      if (r.dominating_set.empty()) return {false, "empty result"};
    }
    std::sort(runs.begin(), runs.end());
    medians.push_back(runs[2]);
  }
  const double r1 = medians[1] / medians[0], r2 = medians[2] / medians[1];
  return {r1 <= 2.5 && r2 <= 2.5, "median s at n=2.5e5/5e5/1e6: " + fmt(medians[0], 3) + "/" + fmt(medians[1], 3) +
                                      "/" + fmt(medians[2], 3) + ", ratios " + fmt(r1) + ", " + fmt(r2)};
}

Outcome reduction_correspondences() {
  std::mt19937_64 rng(1009);
  std::vector<std::string> failures;

  // (a) two-degenerate gadget.
  int a_total = 0, a_deg = 0, a_opt_checked = 0, a_opt = 0;
  for (; a_total < 150; ++a_total) {
    const int m = 1 + static_cast<int>(rng() % (a_total < 100 ? 6 : 20));
    SetCoverInstance sc = gen_random_setcover(1 + static_cast<int>(rng() % 8), m, 4, m, rng());
    DstInstance inst = gen_dst_from_setcover_2deg(sc);
    Graph g = underlying(inst.graph);
    const bool exactly_two =
        degeneracy(g).degeneracy == 2 && testing_support::core_empty(g, 3) && !testing_support::core_empty(g, 2);
    a_deg += exactly_two;
    if (m <= 6) {
      ++a_opt_checked;
      auto cover = oracle::brute_force_setcover(sc);
      a_opt += cover && oracle::brute_force_dst(inst).cost() == cover->size();
    }
  }
  if (a_deg != a_total) failures.push_back("(a) degeneracy");
  if (a_opt != a_opt_checked) failures.push_back("(a) optimum");

  // (b) dominating set gadget.
  int b_total = 0, b_ok = 0;
  for (; b_total < 150; ++b_total) {
    const int m = 1 + static_cast<int>(rng() % 5);
    SetCoverInstance sc = gen_random_setcover(1 + static_cast<int>(rng() % 5), m, 3, m, rng());
    DsInstance ds = gen_domset_from_setcover(sc, 1.0, 2.0);
    auto cover = oracle::brute_force_setcover(sc);
    b_ok += cover && ds.budget == sc.budget + 2 && oracle::brute_force_domset(ds).cost() == cover->size() + 2;
  }
  if (b_ok != b_total) failures.push_back("(b)");

  // (c) layered dominating set to DST.
  int c_total = 0, c_ok = 0;
  for (; c_total < 150; ++c_total) {
    const Vertex n = 1 + static_cast<Vertex>(rng() % 10);
    DsInstance ds{testing_support::random_graph(n, 0.1 + 0.1 * (rng() % 4), rng), static_cast<int>(n)};
    c_ok += oracle::brute_force_dst(gen_dst_from_domset(ds)).cost() == oracle::brute_force_domset(ds).cost();
  }
  if (c_ok != c_total) failures.push_back("(c)");

  // (d) exchange property of the pair gadgets, every pair of sets checked.
  int d_instances = 0;
  long long d_pairs = 0, d_bad = 0;
  for (; d_instances < 200; ++d_instances) {
    PsiInstance psi = testing_support::random_psi(rng);
    PsiSetCover out = gen_setcover_from_psi(psi);
    std::map<std::pair<int, int>, std::vector<std::size_t>> at;
    for (std::size_t s = 0; s < out.info.size(); ++s) at[{out.info[s].row, out.info[s].col}].push_back(s);
    for (const auto& pr : out.pairs)
      for (std::size_t s1 : at[{pr.row1, pr.col1}])
        for (std::size_t s2 : at[{pr.row2, pr.col2}]) {
          std::set<int> covered(out.sc.sets[s1].begin(), out.sc.sets[s1].end());
          covered.insert(out.sc.sets[s2].begin(), out.sc.sets[s2].end());
          bool all = true;
          for (int a = 0; a < 2 * out.id_bits; ++a) all = all && covered.count(pr.first_element + a) > 0;
          const bool agree = pr.along_row ? out.info[s1].u == out.info[s2].u : out.info[s1].v == out.info[s2].v;
          ++d_pairs;
          d_bad += all != agree;
        }
  }
  if (d_bad != 0) failures.push_back("(d)");

  std::string detail = "(a) " + std::to_string(a_deg) + "/" + std::to_string(a_total) + " degeneracy 2, " +
                       std::to_string(a_opt) + "/" + std::to_string(a_opt_checked) + " optima; (b) " +
                       std::to_string(b_ok) + "/" + std::to_string(b_total) + "; (c) " + std::to_string(c_ok) + "/" +
                       std::to_string(c_total) + "; (d) " + std::to_string(d_pairs) + " set pairs over " +
                       std::to_string(d_instances) + " PSI instances, " + std::to_string(d_bad) + " violations";
  for (const auto& f : failures) detail += " [failed " + f + "]";
  return {failures.empty(), detail};
}

// Runs the CLI through the shell, returning exit status and stdout bytes.
std::pair<int, std::string> shell(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return {-1, out};
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome determinism(const std::string& cli, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto put = [&](const std::string& name, const std::string& cmd) {
    const auto path = (dir / name).string();
    std::ofstream(path) << shell(cli + " " + cmd).second;
    return path;
  };
  const std::string sc = put("a.sc", "gen random-sc --n 7 --m 6 --max-size 3 --k 4 --seed 5");
  const std::string dst = put("a.dst", "gen random-dst --n 13 --d 3 --frac 0.3 --k 4 --seed 5 --acyclic");
  const std::string ds = put("a.ds", "gen random-ds --n 13 --d 2 --k 4 --seed 5");
  const std::string big_ds = put("big.ds", "gen random-ds --n 3000 --d 4 --k 4 --seed 5");
  const std::string sol = put("a.sol", "solve dst " + dst);
  const std::string ds_sol = put("a.ds.sol", "solve ds " + ds);
  {
    std::ofstream(dir / "a.psi") << "p psi 4 2 2 1\nv 1 1\nv 2 1\nv 3 2\nv 4 2\nh 1 3\nh 2 4\ng 1 2\n";
  }
  const std::string psi = (dir / "a.psi").string();

  const std::vector<std::string> commands{
      "solve dst " + dst + " --stats",
      "solve dst " + dst + " --mode db --db 2 --stats",
      "solve dst " + dst + " --mode minor-free:5",
      "solve ds " + ds + " --stats",
      "approx ds " + big_ds + " --trace",
      "gen random-dst --n 40 --d 3 --frac 0.3 --k 4 --seed 9 --acyclic",
      "gen random-ds --n 40 --d 3 --k 4 --seed 9",
      "gen random-sc --n 10 --m 8 --max-size 3 --k 4 --seed 9",
      "gen sc2dst " + sc,
      "gen sc2dst-log " + sc + " --gamma 1 --c 2",
      "gen sc2ds " + sc + " --gamma 1 --c 2",
      "gen ds2dst " + ds,
      "gen psi2sc " + psi,
      "verify dst " + dst + " " + sol,
      "verify ds " + ds + " " + ds_sol,
      "oracle dst " + dst,
      "oracle ds " + ds,
      "oracle sc " + sc,
      "bench " + dst + " --kind dst --random 3 --n 12 --budget 3 --seed 4 --deterministic",
      "bench " + ds + " --kind ds --random 3 --n 12 --budget 3 --deterministic",
      "bench --kind approx --random 3 --n 500 --d 3 --deterministic",
  };
  int differing = 0, failing = 0;
  std::string first_bad;
  for (const auto& c : commands) {
    auto a = shell(cli + " " + c);
    auto b = shell(cli + " " + c);
    if (a.first != 0 || a.second.empty()) {
      ++failing;
      if (first_bad.empty()) first_bad = c;
    }
    if (a != b) {
      ++differing;
      if (first_bad.empty()) first_bad = c;
    }
  }
  std::string detail = std::to_string(commands.size()) + " commands run twice, " + std::to_string(differing) +
                       " differ, " + std::to_string(failing) + " failed";
  if (!first_bad.empty()) detail += " (first: " + first_bad + ")";
  return {differing == 0 && failing == 0, detail};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <steiner-cli> [workdir]\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::filesystem::path dir =
      argc > 2 ? std::filesystem::path(argv[2]) : std::filesystem::temp_directory_path() / "steiner_acceptance";

  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  // Criteria 4 and 5 aggregate the counters gathered by 1 and 6. The timing
  // criterion goes first, before the other suites churn the allocator.
  const std::vector<Criterion> criteria{
      {8, "approximation scaling", approx_scaling},
      {1, "DST oracle equivalence", dst_oracle_equivalence},
      {2, "terminal-cycle contraction soundness", rule_one_soundness},
      {3, "augmenting-set subroutine exactness", subroutine_exactness},
      {6, "dominating set exactness", ds_exactness},
      {4, "measure law", measure_law},
      {5, "branching-factor audit", branching_audit},
      {7, "approximation ratio", approx_ratio},
      {9, "reduction correspondences", reduction_correspondences},
      {10, "determinism", [&] { return determinism(cli, dir); }},
  };
  std::map<int, std::string> lines;
  bool all = true;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    lines[c.id] = std::string(o.pass ? "PASS" : "FAIL") + " [" + std::to_string(c.id) + "] " + c.name + ": " + o.detail;
    std::cerr << "  finished criterion " << c.id << '\n';
  }
  for (const auto& [id, line] : lines) std::cout << line << '\n';
  return all ? 0 : 1;
}
