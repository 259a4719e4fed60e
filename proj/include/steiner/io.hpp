#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>

#include "steiner/domset.hpp"
#include "steiner/dst_instance.hpp"
#include "steiner/reductions.hpp"

namespace steiner::io {

/// Malformed input; `line()` is 1-based (0 when the problem is global, such
/// as a missing header).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + reason : reason), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Text formats (ids 1-based in files, 0-based in memory):
//   c <comment>
//   p dst <n> <m> <k>   then  r <v> | t <v> | a <u> <v>       (m arc lines)
//   p ds  <n> <m> <k>   then  e <u> <v>                       (m edge lines)
//   p sc  <n> <m> <k>   then  s <set-id> <elem>...            (m set lines)
//   p psi <nH> <mH> <l> <mG>  then  v <vertex> <color> | h <u> <v> | g <i> <j>

using AnyInstance = std::variant<DstInstance, DsInstance, SetCoverInstance, PsiInstance>;

AnyInstance parse_any(std::istream& in);
DstInstance parse_dst(std::istream& in);
DsInstance parse_ds(std::istream& in);
SetCoverInstance parse_sc(std::istream& in);
PsiInstance parse_psi(std::istream& in);

void emit(std::ostream& out, const DstInstance& inst);
void emit(std::ostream& out, const DsInstance& inst);
void emit(std::ostream& out, const SetCoverInstance& sc);
void emit(std::ostream& out, const PsiInstance& psi);

/// Solver report: "SIZE <s>" and "S <ids...>", or "INFEASIBLE".
void emit_solution(std::ostream& out, const Solution& sol);

/// Reads a report as written by emit_solution (SIZE line optional).
Solution parse_solution(std::istream& in);

}  // namespace steiner::io
