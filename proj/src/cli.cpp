#include "steiner/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "steiner/ds_approx.hpp"
#include "steiner/domset.hpp"
#include "steiner/dst_branch.hpp"
#include "steiner/io.hpp"
#include "steiner/oracles.hpp"
#include "steiner/reductions.hpp"

namespace steiner {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Opens `path`, or falls back to `in` for "" and "-".
class Source {
 public:
  Source(const std::string& path, std::istream& in) : stream_(&in) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ifstream>(path);
    if (!*file_) throw InputError("cannot open '" + path + "'");
    stream_ = file_.get();
  }
  std::istream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::istream* stream_;
};

struct SolveOptions {
  std::optional<int> k;
  int db = 1;
  std::string mode = "auto";
  bool parallel = false;
  bool stats = false;
  std::optional<double> time_limit;
};

SolverConfig make_config(const SolveOptions& o) {
  SolverConfig cfg;
  cfg.db = o.db;
  if (o.mode == "auto") {
    cfg.mode = DegreeBoundMode::kDegenerateAuto;
  } else if (o.mode == "db") {
    cfg.mode = DegreeBoundMode::kExplicit;
    if (o.db < 1) throw UsageError("--db must be at least 1");
  } else if (o.mode.rfind("minor-free:", 0) == 0) {
    cfg.mode = DegreeBoundMode::kMinorFree;
    try {
      std::size_t used = 0;
      const std::string h = o.mode.substr(11);
      cfg.minor_h = std::stoi(h, &used);
      if (used != h.size()) throw std::invalid_argument(h);
    } catch (const std::logic_error&) {
      throw UsageError("bad --mode '" + o.mode + "'");
    }
    if (cfg.minor_h < 1) throw UsageError("minor-free:<h> needs h >= 1");
  } else {
    throw UsageError("unknown --mode '" + o.mode + "' (auto|db|minor-free:<h>)");
  }
  cfg.parallel = o.parallel;
  cfg.deterministic = !o.parallel;
  cfg.stats = o.stats;
  if (o.time_limit) {
    const auto limit = std::chrono::duration<double>(*o.time_limit);
    cfg.deadline = std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(limit);
  }
  return cfg;
}

// Degree bound for the dominating set solver; it works on an undirected graph
// so the modes are resolved here rather than in the DST driver.
int ds_degree_bound(const SolverConfig& cfg, const Graph& g) {
  switch (cfg.mode) {
    case DegreeBoundMode::kExplicit: return cfg.db;
    case DegreeBoundMode::kMinorFree: return std::max(1, cfg.minor_h - 2);
    case DegreeBoundMode::kDegenerateAuto: break;
  }
  return std::max(1, degeneracy(g).degeneracy);
}

std::string mode_name(const SolverConfig& cfg) {
  switch (cfg.mode) {
    case DegreeBoundMode::kExplicit: return "db";
    case DegreeBoundMode::kMinorFree: return "minor-free:" + std::to_string(cfg.minor_h);
    case DegreeBoundMode::kDegenerateAuto: break;
  }
  return "auto";
}

Solution solve_dst(DstInstance inst, const SolveOptions& o, BranchStats& stats, int& db_used) {
  if (o.k) inst.budget = *o.k;
  validate(inst);
  return solve_driver(inst, make_config(o), &stats, &db_used);
}

Solution solve_ds(DsInstance inst, const SolveOptions& o, BranchStats& stats, int& db_used) {
  if (o.k) inst.budget = *o.k;
  if (inst.budget < 0) throw std::invalid_argument("negative budget");
  SolverConfig cfg = make_config(o);
  db_used = ds_degree_bound(cfg, inst.graph);
  return ds_solve(inst, db_used, {}, cfg, &stats);
}

// Why `sol` fails as a DST solution, or empty when it is valid.
std::string explain_dst(const DstInstance& inst, const Solution& sol) {
  if (!sol.feasible) return "solution is INFEASIBLE";
  const Vertex n = inst.graph.num_vertices();
  for (std::size_t i = 0; i < sol.vertices.size(); ++i) {
    const Vertex v = sol.vertices[i];
    if (v < 0 || v >= n) return "vertex " + std::to_string(v + 1) + " out of range";
    if (i > 0 && sol.vertices[i - 1] == v) return "vertex " + std::to_string(v + 1) + " repeated";
    if (v == inst.root) return "solution contains the root";
    if (std::binary_search(inst.terminals.begin(), inst.terminals.end(), v))
      return "solution contains terminal " + std::to_string(v + 1);
  }
  if (static_cast<long long>(sol.vertices.size()) > inst.budget)
    return "size " + std::to_string(sol.vertices.size()) + " exceeds budget " + std::to_string(inst.budget);
  if (verify_dst(inst, sol)) return {};
  std::vector<char> allowed = to_mask(n, sol.vertices);
  for (Vertex t : inst.terminals) allowed[t] = 1;
  allowed[inst.root] = 1;
  std::vector<char> seen(n, 0);
  std::vector<Vertex> queue{inst.root};
  seen[inst.root] = 1;
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (Vertex w : inst.graph.out(queue[h]))
      if (allowed[w] && !seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
  for (Vertex t : inst.terminals)
    if (!seen[t]) return "terminal " + std::to_string(t + 1) + " is not reached from the root";
  return "rejected";
}

std::string explain_ds(const DsInstance& inst, const Solution& sol) {
  if (!sol.feasible) return "solution is INFEASIBLE";
  const Vertex n = inst.graph.num_vertices();
  for (std::size_t i = 0; i < sol.vertices.size(); ++i) {
    const Vertex v = sol.vertices[i];
    if (v < 0 || v >= n) return "vertex " + std::to_string(v + 1) + " out of range";
    if (i > 0 && sol.vertices[i - 1] == v) return "vertex " + std::to_string(v + 1) + " repeated";
  }
  if (static_cast<long long>(sol.vertices.size()) > inst.budget)
    return "size " + std::to_string(sol.vertices.size()) + " exceeds budget " + std::to_string(inst.budget);
  std::vector<char> dominated = to_mask(n, sol.vertices);
  for (Vertex v : sol.vertices)
    for (Vertex w : inst.graph.neighbors(v)) dominated[w] = 1;
  for (Vertex v = 0; v < n; ++v)
    if (!dominated[v]) return "vertex " + std::to_string(v + 1) + " is not dominated";
  return {};
}

struct BenchOptions {
  std::vector<std::string> files;
  std::string kind = "dst";
  int random = 0;
  int n = 20, d = 2, k = 4;
  double frac = 0.3;
  std::uint64_t seed = 1;
  bool deterministic = false;
};

struct BenchRow {
  std::string instance;
  long long n = 0, m = 0, k = 0;
  int db = 0;
  std::string mode;
  std::string size;
  long long nodes = 0;
  int max_dw = 0;
  double millis = 0;
};

BenchRow make_row(const std::string& name, long long n, long long m, long long k) {
  BenchRow row;
  row.instance = name;
  row.n = n;
  row.m = m;
  row.k = k;
  return row;
}

template <typename F>
double timed(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string size_of(const Solution& s) { return s.feasible ? std::to_string(s.vertices.size()) : "inf"; }

BenchRow bench_dst(const std::string& name, const DstInstance& inst, const SolveOptions& so) {
  BenchRow row = make_row(name, inst.graph.num_vertices(), static_cast<long long>(inst.graph.num_arcs()), so.k.value_or(inst.budget));
  BranchStats stats;
  Solution sol;
  row.millis = timed([&] { sol = solve_dst(inst, so, stats, row.db); });
  row.mode = mode_name(make_config(so));
  row.size = size_of(sol);
  row.nodes = stats.nodes;
  row.max_dw = stats.max_dw;
  return row;
}

BenchRow bench_ds(const std::string& name, const DsInstance& inst, const SolveOptions& so) {
  BenchRow row = make_row(name, inst.graph.num_vertices(), static_cast<long long>(inst.graph.num_edges()), so.k.value_or(inst.budget));
  BranchStats stats;
  Solution sol;
  row.millis = timed([&] { sol = solve_ds(inst, so, stats, row.db); });
  row.mode = mode_name(make_config(so));
  row.size = size_of(sol);
  row.nodes = stats.nodes;
  row.max_dw = stats.max_dw;
  return row;
}

BenchRow bench_approx(const std::string& name, const DsInstance& inst) {
  BenchRow row = make_row(name, inst.graph.num_vertices(), static_cast<long long>(inst.graph.num_edges()), inst.budget);
  ApproxResult res;
  row.millis = timed([&] { res = ds_approx(inst.graph); });
  row.db = res.degeneracy;
  row.mode = "approx";
  row.size = std::to_string(res.dominating_set.size());
  row.nodes = static_cast<long long>(res.iterations);
  return row;
}

class Cli {
 public:
  Cli(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Exact and approximate solvers for Directed Steiner Tree and Dominating Set", "steiner"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "steiner 1.0");

    auto* solve = app.add_subcommand("solve", "exact solver");
    solve->add_option("kind", kind_, "dst | ds")->required()->check(CLI::IsMember({"dst", "ds"}));
    solve->add_option("file", file_, "instance file (default: stdin)");
    add_solve_flags(solve, solve_);

    auto* approx = app.add_subcommand("approx", "greedy dominating set");
    approx->add_option("kind", kind_, "ds")->required()->check(CLI::IsMember({"ds"}));
    approx->add_option("file", file_, "instance file (default: stdin)");
    approx->add_flag("--trace", trace_, "print one line per iteration");

    auto* gen = app.add_subcommand("gen", "instance generators");
    gen->add_option("what", kind_, "sc2dst | sc2dst-log | sc2ds | ds2dst | psi2sc | random-dst | random-ds | random-sc")
        ->required()
        ->check(CLI::IsMember({"sc2dst", "sc2dst-log", "sc2ds", "ds2dst", "psi2sc", "random-dst", "random-ds",
                               "random-sc"}));
    gen->add_option("file", file_, "input instance for reductions (default: stdin)");
    gen->add_option("--gamma", gamma_, "padding exponent numerator")->capture_default_str();
    gen->add_option("--c", c_, "padding exponent denominator")->capture_default_str();
    gen->add_option("--cap", cap_, "largest padding allowed")->capture_default_str();
    gen->add_option("--n", n_, "vertices (elements for random-sc)")->capture_default_str();
    gen->add_option("--m", m_, "sets for random-sc")->capture_default_str();
    gen->add_option("--max-size", max_size_, "largest set for random-sc")->capture_default_str();
    gen->add_option("--d", d_, "degeneracy bound")->capture_default_str();
    gen->add_option("--frac", frac_, "terminal fraction")->capture_default_str();
    gen->add_option("--k", gen_k_, "budget")->capture_default_str();
    gen->add_option("--seed", seed_, "random seed")->capture_default_str();
    gen->add_flag("--acyclic", acyclic_, "orient terminal-terminal arcs acyclically");

    auto* verify = app.add_subcommand("verify", "check a solution file");
    verify->add_option("kind", kind_, "dst | ds")->required()->check(CLI::IsMember({"dst", "ds"}));
    verify->add_option("file", file_, "instance file")->required();
    verify->add_option("solution", solution_file_, "solution file")->required();

    auto* oracle = app.add_subcommand("oracle", "brute-force reference solver");
    oracle->add_option("kind", kind_, "dst | ds | sc")->required()->check(CLI::IsMember({"dst", "ds", "sc"}));
    oracle->add_option("file", file_, "instance file (default: stdin)");

    auto* bench = app.add_subcommand("bench", "CSV timings");
    bench->add_option("files", bench_.files, "instance files");
    bench->add_option("--kind", bench_.kind, "dst | ds | approx")
        ->check(CLI::IsMember({"dst", "ds", "approx"}))
        ->capture_default_str();
    bench->add_option("--random", bench_.random, "number of generated instances")->capture_default_str();
    bench->add_option("--n", bench_.n, "vertices per generated instance")->capture_default_str();
    bench->add_option("--d", bench_.d, "degeneracy bound")->capture_default_str();
    bench->add_option("--frac", bench_.frac, "terminal fraction")->capture_default_str();
    bench->add_option("--seed", bench_.seed, "base seed")->capture_default_str();
    bench->add_flag("--deterministic", bench_.deterministic, "report millis as 0");
    add_solve_flags(bench, solve_);
    bench->add_option("--budget", bench_.k, "budget of generated instances")->capture_default_str();

    std::vector<std::string> argv{"steiner"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::vector<char*> raw;
    for (auto& a : argv) raw.push_back(a.data());
    try {
      app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out_, err_);
      return code == 0 ? kExitOk : kExitUsage;
    }

    try {
      if (*solve) return do_solve();
      if (*approx) return do_approx();
      if (*gen) return do_gen();
      if (*verify) return do_verify();
      if (*oracle) return do_oracle();
      return do_bench();
    } catch (const UsageError& e) {
      err_ << "error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const io::ParseError& e) {
      err_ << "parse error: " << e.what() << '\n';
      return kExitBadInput;
    } catch (const InputError& e) {
      err_ << "error: " << e.what() << '\n';
      return kExitBadInput;
    } catch (const oracle::SizeGuardExceeded& e) {
      err_ << e.what() << '\n';
      return kExitOracleRefused;
    } catch (const SolveTimeout& e) {
      err_ << "timeout: " << e.what() << '\n';
      return kExitTimeout;
    } catch (const std::invalid_argument& e) {
      err_ << "invalid instance: " << e.what() << '\n';
      return kExitBadInput;
    } catch (const std::length_error& e) {
      err_ << "error: " << e.what() << '\n';
      return kExitBadInput;
    }
  }

 private:
  static void add_solve_flags(CLI::App* sub, SolveOptions& o) {
    sub->add_option("--k", o.k, "budget (overrides the file)");
    sub->add_option("--db", o.db, "degree bound for --mode db")->capture_default_str();
    sub->add_option("--mode", o.mode, "auto | db | minor-free:<h>")->capture_default_str();
    sub->add_flag("--parallel", o.parallel, "explore the top of the search tree concurrently");
    sub->add_flag("--stats", o.stats, "print search counters");
    sub->add_option("--time-limit", o.time_limit, "seconds; exceeding it exits 5")->check(CLI::PositiveNumber);
  }

  int do_solve() {
    Source src(file_, in_);
    BranchStats stats;
    int db = 0;
    Solution sol = kind_ == "dst" ? solve_dst(io::parse_dst(src.get()), solve_, stats, db)
                                  : solve_ds(io::parse_ds(src.get()), solve_, stats, db);
    io::emit_solution(out_, sol);
    if (solve_.stats) out_ << stats.line() << " db=" << db << '\n';
    return kExitOk;
  }

  int do_approx() {
    Source src(file_, in_);
    DsInstance inst = io::parse_ds(src.get());
    ApproxOptions opts;
    if (trace_)
      opts.trace = [this](Vertex v, int key, std::size_t size) {
        out_ << "TRACE " << v + 1 << ' ' << key << ' ' << size << '\n';
      };
    ApproxResult res = ds_approx(inst.graph, opts);
    io::emit_solution(out_, Solution::of(res.dominating_set));
    out_ << "DEGENERACY " << res.degeneracy << '\n';
    return kExitOk;
  }

  int do_gen() {
    if (kind_ == "random-dst") {
      io::emit(out_, gen_random_sparse(n_, d_, frac_, gen_k_, seed_, acyclic_));
    } else if (kind_ == "random-ds") {
      io::emit(out_, DsInstance{gen_random_degenerate_graph(n_, d_, seed_), gen_k_});
    } else if (kind_ == "random-sc") {
      io::emit(out_, gen_random_setcover(n_, m_, max_size_, gen_k_, seed_));
    } else {
      Source src(file_, in_);
      if (kind_ == "sc2dst") io::emit(out_, gen_dst_from_setcover_2deg(io::parse_sc(src.get())));
      else if (kind_ == "sc2dst-log") io::emit(out_, gen_dst_from_setcover_logdeg(io::parse_sc(src.get()), gamma_, c_, cap_));
      else if (kind_ == "sc2ds") io::emit(out_, gen_domset_from_setcover(io::parse_sc(src.get()), gamma_, c_, cap_));
      else if (kind_ == "ds2dst") io::emit(out_, gen_dst_from_domset(io::parse_ds(src.get())));
      else io::emit(out_, gen_setcover_from_psi(io::parse_psi(src.get())).sc);
    }
    return kExitOk;
  }

  int do_verify() {
    Source src(file_, in_);
    Source sol_src(solution_file_, in_);
    std::string reason;
    if (kind_ == "dst") {
      DstInstance inst = io::parse_dst(src.get());
      validate(inst);
      reason = explain_dst(inst, io::parse_solution(sol_src.get()));
    } else {
      reason = explain_ds(io::parse_ds(src.get()), io::parse_solution(sol_src.get()));
    }
    if (reason.empty()) {
      out_ << "OK\n";
      return kExitOk;
    }
    out_ << "INVALID " << reason << '\n';
    return kExitVerifyFailed;
  }

  int do_oracle() {
    Source src(file_, in_);
    if (kind_ == "dst") {
      io::emit_solution(out_, oracle::brute_force_dst(io::parse_dst(src.get())));
    } else if (kind_ == "ds") {
      io::emit_solution(out_, oracle::brute_force_domset(io::parse_ds(src.get())));
    } else {
      SetCoverInstance sc = io::parse_sc(src.get());
      auto cover = oracle::brute_force_setcover(sc);
      if (!cover || static_cast<long long>(cover->size()) > sc.budget) {
        io::emit_solution(out_, Solution::infeasible());
      } else {
        io::emit_solution(out_, Solution::of(VertexSet(cover->begin(), cover->end())));
      }
    }
    return kExitOk;
  }

  int do_bench() {
    std::vector<BenchRow> rows;
    auto run_one = [&](const std::string& name, std::istream& s) {
      if (bench_.kind == "dst") rows.push_back(bench_dst(name, io::parse_dst(s), solve_));
      else if (bench_.kind == "ds") rows.push_back(bench_ds(name, io::parse_ds(s), solve_));
      else rows.push_back(bench_approx(name, io::parse_ds(s)));
    };
    for (const auto& f : bench_.files) {
      Source src(f, in_);
      run_one(f, src.get());
    }
    for (int i = 0; i < bench_.random; ++i) {
      const std::uint64_t seed = bench_.seed + static_cast<std::uint64_t>(i);
      const std::string name = "random-" + std::to_string(seed);
      if (bench_.kind == "dst") {
        rows.push_back(bench_dst(name, gen_random_sparse(bench_.n, bench_.d, bench_.frac, bench_.k, seed, true), solve_));
      } else {
        DsInstance inst{gen_random_degenerate_graph(bench_.n, bench_.d, seed), bench_.k};
        rows.push_back(bench_.kind == "ds" ? bench_ds(name, inst, solve_) : bench_approx(name, inst));
      }
    }
    out_ << "instance,n,m,k,db,mode,size,nodes,max_dw,millis\n";
    for (const auto& r : rows) {
      out_ << r.instance << ',' << r.n << ',' << r.m << ',' << r.k << ',' << r.db << ',' << r.mode << ',' << r.size
           << ',' << r.nodes << ',' << r.max_dw << ',';
      if (bench_.deterministic) {
        out_ << 0;
      } else {
        std::ostringstream ms;
        ms.setf(std::ios::fixed);
        ms.precision(3);
        ms << r.millis;
        out_ << ms.str();
      }
      out_ << '\n';
    }
    return kExitOk;
  }

  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;

  std::string kind_, file_, solution_file_;
  SolveOptions solve_;
  BenchOptions bench_;
  bool trace_ = false;
  double gamma_ = 1.0, c_ = 2.0;
  long long cap_ = kDefaultPaddingCap;
  int n_ = 10, m_ = 6, max_size_ = 3, d_ = 2, gen_k_ = 3;
  double frac_ = 0.3;
  std::uint64_t seed_ = 1;
  bool acyclic_ = false;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  return Cli(in, out, err).run(args);
}

}  // namespace steiner
