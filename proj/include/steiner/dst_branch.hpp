#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "steiner/dst_instance.hpp"

namespace steiner {

/// Counters collected by the branching solvers.
struct BranchStats {
  long long nodes = 0;
  int max_dw = 0;
  int max_depth = 0;
  long long budget_prunes = 0;      // |Y| > k
  long long count_prunes = 0;       // |W_l| > d_b (k - |Y|)
  long long exact_feasible = 0;     // base case solved within budget
  long long exact_infeasible = 0;   // base case over budget or unreachable
  long long take_branches = 0;
  long long delete_branches = 0;
  long long measure_violations = 0;
  long long dw_audit_violations = 0;  // d_w above the audit bound, when set

  void merge(const BranchStats& o);
  /// One machine-readable line, without trailing newline.
  std::string line() const;
};

struct SolveTimeout : std::runtime_error {
  SolveTimeout() : std::runtime_error("time limit exceeded") {}
};

enum class DegreeBoundMode { kDegenerateAuto, kExplicit, kMinorFree };

struct SolverConfig {
  int db = 1;
  DegreeBoundMode mode = DegreeBoundMode::kDegenerateAuto;
  int minor_h = 3;            // used by kMinorFree: d_b = h - 2
  bool deterministic = true;  // forces sequential exploration
  bool parallel = false;
  bool stats = false;
  /// Audit bound on every observed d_w (counted in dw_audit_violations).
  std::optional<int> dw_bound;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// The degree bound the config selects for `reduced`.
int effective_degree_bound(const SolverConfig& cfg, const DstInstance& reduced);

/// Partition of the non-terminals and source terminals relative to a partial
/// solution Y. The root counts as already chosen when deciding T1.
struct BranchState {
  VertexSet y, t1, bh, bl, wh, wl;
  int db = 1;
  long long mu = 0;  // db * (k - |Y|) - |W_l|
};

/// Computes the partition from scratch. `removed` (optional) masks deleted
/// vertices. Throws std::invalid_argument if Y meets T or the root.
BranchState compute_partition(const ReducedInstance& ri, const VertexSet& y, int db,
                              std::span<const char> removed = {});

/// Smallest solution of size <= k containing Y, or infeasible. The instance
/// must be reduced (acyclic terminal subgraph).
Solution dst_solve(const ReducedInstance& ri, const SolverConfig& cfg, const VertexSet& y = {},
                   BranchStats* stats = nullptr);

/// reduce -> choose d_b -> dst_solve, reporting vertices in original ids.
Solution solve_driver(const DstInstance& inst, const SolverConfig& cfg, BranchStats* stats = nullptr,
                      int* db_used = nullptr);

}  // namespace steiner
