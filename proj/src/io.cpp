#include "steiner/io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

namespace steiner::io {

namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

// Non-blank, non-comment lines split on whitespace.
std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    std::istringstream ss(text);
    Line line{number, {}};
    for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
    if (line.tokens.empty() || line.tokens[0] == "c") continue;
    lines.push_back(std::move(line));
  }
  return lines;
}

long long to_int(const Line& line, std::size_t i) {
  if (i >= line.tokens.size()) throw ParseError(line.number, "missing field " + std::to_string(i + 1));
  const std::string& s = line.tokens[i];
  long long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError(line.number, "not an integer: '" + s + "'");
  return value;
}

void expect_fields(const Line& line, std::size_t count) {
  if (line.tokens.size() != count)
    throw ParseError(line.number, "expected " + std::to_string(count) + " fields, got " +
                                      std::to_string(line.tokens.size()));
}

Vertex to_vertex(const Line& line, std::size_t i, long long n, const char* what = "vertex") {
  long long v = to_int(line, i);
  if (v < 1 || v > n) throw ParseError(line.number, std::string(what) + " " + std::to_string(v) + " out of range [1, " + std::to_string(n) + "]");
  return static_cast<Vertex>(v - 1);
}

long long non_negative(const Line& line, std::size_t i, const char* what) {
  long long v = to_int(line, i);
  if (v < 0) throw ParseError(line.number, std::string(what) + " must be non-negative");
  return v;
}

struct Header {
  std::string kind;
  Line line;
};

Header header_of(const std::vector<Line>& lines) {
  if (lines.empty()) throw ParseError(0, "missing 'p' header");
  const Line& h = lines.front();
  if (h.tokens[0] != "p" || h.tokens.size() < 2) throw ParseError(h.number, "expected 'p' header line");
  return {h.tokens[1], h};
}

void count_check(const Line& header, const char* what, long long expected, long long actual, std::size_t last_line) {
  if (expected != actual)
    throw ParseError(actual > expected ? last_line : header.number,
                     std::string("header declares ") + std::to_string(expected) + " " + what + " lines, body has " +
                         std::to_string(actual));
}

DstInstance dst_from(const std::vector<Line>& lines) {
  const Line& h = lines.front();
  expect_fields(h, 5);
  const long long n = non_negative(h, 2, "vertex count"), m = non_negative(h, 3, "arc count"),
                  k = non_negative(h, 4, "budget");
  std::optional<Vertex> root;
  std::size_t root_line = 0;
  VertexSet terminals;
  std::vector<std::pair<Vertex, Vertex>> arcs;
  std::size_t extra_line = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    const std::string& tag = l.tokens[0];
    if (tag == "r") {
      expect_fields(l, 2);
      if (root) throw ParseError(l.number, "second root line");
      root = to_vertex(l, 1, n);
      root_line = l.number;
    } else if (tag == "t") {
      expect_fields(l, 2);
      terminals.push_back(to_vertex(l, 1, n));
    } else if (tag == "a") {
      expect_fields(l, 3);
      arcs.emplace_back(to_vertex(l, 1, n), to_vertex(l, 2, n));
      if (static_cast<long long>(arcs.size()) == m + 1) extra_line = l.number;
    } else {
      throw ParseError(l.number, "unexpected line type '" + tag + "' in dst file");
    }
  }
  count_check(h, "arc", m, static_cast<long long>(arcs.size()), extra_line);
  if (!root) throw ParseError(0, "missing root line 'r <v>'");
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
  if (std::binary_search(terminals.begin(), terminals.end(), *root))
    throw ParseError(root_line, "root is also a terminal");
  DstInstance inst;
  inst.graph = Digraph(static_cast<Vertex>(n), std::move(arcs));
  inst.root = *root;
  inst.terminals = std::move(terminals);
  inst.budget = static_cast<int>(k);
  return inst;
}

DsInstance ds_from(const std::vector<Line>& lines) {
  const Line& h = lines.front();
  expect_fields(h, 5);
  const long long n = non_negative(h, 2, "vertex count"), m = non_negative(h, 3, "edge count"),
                  k = non_negative(h, 4, "budget");
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::size_t extra_line = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens[0] != "e") throw ParseError(l.number, "unexpected line type '" + l.tokens[0] + "' in ds file");
    expect_fields(l, 3);
    edges.emplace_back(to_vertex(l, 1, n), to_vertex(l, 2, n));
    if (static_cast<long long>(edges.size()) == m + 1) extra_line = l.number;
  }
  count_check(h, "edge", m, static_cast<long long>(edges.size()), extra_line);
  return {Graph(static_cast<Vertex>(n), std::move(edges)), static_cast<int>(k)};
}

SetCoverInstance sc_from(const std::vector<Line>& lines) {
  const Line& h = lines.front();
  expect_fields(h, 5);
  const long long n = non_negative(h, 2, "element count"), m = non_negative(h, 3, "set count"),
                  k = non_negative(h, 4, "budget");
  SetCoverInstance sc;
  sc.num_elements = static_cast<int>(n);
  sc.budget = static_cast<int>(k);
  sc.sets.resize(m);
  std::vector<char> seen(m, 0);
  long long count = 0;
  std::size_t extra_line = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens[0] != "s") throw ParseError(l.number, "unexpected line type '" + l.tokens[0] + "' in sc file");
    if (++count == m + 1) extra_line = l.number;
    if (count > m) continue;
    const Vertex id = to_vertex(l, 1, m, "set id");
    if (seen[id]) throw ParseError(l.number, "set " + std::to_string(id + 1) + " listed twice");
    seen[id] = 1;
    if (l.tokens.size() < 3) throw ParseError(l.number, "set " + std::to_string(id + 1) + " is empty");
    auto& s = sc.sets[id];
    for (std::size_t j = 2; j < l.tokens.size(); ++j) s.push_back(to_vertex(l, j, n, "element"));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  count_check(h, "set", m, count, extra_line);
  return sc;
}

PsiInstance psi_from(const std::vector<Line>& lines) {
  const Line& h = lines.front();
  expect_fields(h, 6);
  const long long nh = non_negative(h, 2, "host vertex count"), mh = non_negative(h, 3, "host edge count"),
                  l = non_negative(h, 4, "pattern vertex count"), mg = non_negative(h, 5, "pattern edge count");
  std::vector<int> color(nh, -1);
  std::vector<std::pair<Vertex, Vertex>> host, pattern;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& ln = lines[i];
    const std::string& tag = ln.tokens[0];
    expect_fields(ln, 3);
    if (tag == "v") {
      Vertex v = to_vertex(ln, 1, nh);
      if (color[v] != -1) throw ParseError(ln.number, "vertex colored twice");
      color[v] = to_vertex(ln, 2, l, "color");
    } else if (tag == "h") {
      host.emplace_back(to_vertex(ln, 1, nh), to_vertex(ln, 2, nh));
    } else if (tag == "g") {
      pattern.emplace_back(to_vertex(ln, 1, l), to_vertex(ln, 2, l));
    } else {
      throw ParseError(ln.number, "unexpected line type '" + tag + "' in psi file");
    }
  }
  if (static_cast<long long>(host.size()) != mh) throw ParseError(h.number, "host edge count mismatch");
  if (static_cast<long long>(pattern.size()) != mg) throw ParseError(h.number, "pattern edge count mismatch");
  for (long long v = 0; v < nh; ++v)
    if (color[v] == -1) throw ParseError(0, "host vertex " + std::to_string(v + 1) + " has no color");
  return {Graph(static_cast<Vertex>(nh), std::move(host)), Graph(static_cast<Vertex>(l), std::move(pattern)),
          std::move(color)};
}

template <typename T>
T parse_kind(std::istream& in, const std::string& kind, T (*build)(const std::vector<Line>&)) {
  auto lines = read_lines(in);
  Header h = header_of(lines);
  if (h.kind != kind) throw ParseError(h.line.number, "expected a '" + kind + "' file, found '" + h.kind + "'");
  return build(lines);
}

}  // namespace

AnyInstance parse_any(std::istream& in) {
  auto lines = read_lines(in);
  Header h = header_of(lines);
  if (h.kind == "dst") return dst_from(lines);
  if (h.kind == "ds") return ds_from(lines);
  if (h.kind == "sc") return sc_from(lines);
  if (h.kind == "psi") return psi_from(lines);
  throw ParseError(h.line.number, "unknown instance kind '" + h.kind + "'");
}

DstInstance parse_dst(std::istream& in) { return parse_kind(in, "dst", &dst_from); }
DsInstance parse_ds(std::istream& in) { return parse_kind(in, "ds", &ds_from); }
SetCoverInstance parse_sc(std::istream& in) { return parse_kind(in, "sc", &sc_from); }
PsiInstance parse_psi(std::istream& in) { return parse_kind(in, "psi", &psi_from); }

void emit(std::ostream& out, const DstInstance& inst) {
  out << "p dst " << inst.graph.num_vertices() << ' ' << inst.graph.num_arcs() << ' ' << inst.budget << '\n';
  out << "r " << inst.root + 1 << '\n';
  for (Vertex t : inst.terminals) out << "t " << t + 1 << '\n';
  for (const auto& [u, v] : inst.graph.arcs()) out << "a " << u + 1 << ' ' << v + 1 << '\n';
}

void emit(std::ostream& out, const DsInstance& inst) {
  out << "p ds " << inst.graph.num_vertices() << ' ' << inst.graph.num_edges() << ' ' << inst.budget << '\n';
  for (const auto& [u, v] : inst.graph.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

void emit(std::ostream& out, const SetCoverInstance& sc) {
  out << "p sc " << sc.num_elements << ' ' << sc.sets.size() << ' ' << sc.budget << '\n';
  for (std::size_t j = 0; j < sc.sets.size(); ++j) {
    out << "s " << j + 1;
    for (int e : sc.sets[j]) out << ' ' << e + 1;
    out << '\n';
  }
}

void emit(std::ostream& out, const PsiInstance& psi) {
  out << "p psi " << psi.host.num_vertices() << ' ' << psi.host.num_edges() << ' ' << psi.pattern.num_vertices()
      << ' ' << psi.pattern.num_edges() << '\n';
  for (std::size_t v = 0; v < psi.color.size(); ++v) out << "v " << v + 1 << ' ' << psi.color[v] + 1 << '\n';
  for (const auto& [u, v] : psi.host.edges()) out << "h " << u + 1 << ' ' << v + 1 << '\n';
  for (const auto& [u, v] : psi.pattern.edges()) out << "g " << u + 1 << ' ' << v + 1 << '\n';
}

void emit_solution(std::ostream& out, const Solution& sol) {
  if (!sol.feasible) {
    out << "INFEASIBLE\n";
    return;
  }
  out << "SIZE " << sol.vertices.size() << "\nS";
  for (Vertex v : sol.vertices) out << ' ' << v + 1;
  out << '\n';
}

Solution parse_solution(std::istream& in) {
  auto lines = read_lines(in);
  std::optional<Solution> result;
  std::optional<long long> declared;
  for (const Line& l : lines) {
    const std::string& tag = l.tokens[0];
    if (tag == "INFEASIBLE") {
      result = Solution::infeasible();
    } else if (tag == "SIZE") {
      expect_fields(l, 2);
      declared = non_negative(l, 1, "size");
    } else if (tag == "S") {
      VertexSet s;
      for (std::size_t i = 1; i < l.tokens.size(); ++i) {
        long long v = to_int(l, i);
        if (v < 1) throw ParseError(l.number, "vertex ids are 1-based");
        s.push_back(static_cast<Vertex>(v - 1));
      }
      std::sort(s.begin(), s.end());
      result = Solution::of(std::move(s));
    } else if (tag == "STATS") {
      continue;
    } else {
      throw ParseError(l.number, "unexpected line in solution file");
    }
  }
  if (!result) throw ParseError(0, "solution file has neither an 'S' line nor INFEASIBLE");
  if (declared && result->feasible && *declared != static_cast<long long>(result->vertices.size()))
    throw ParseError(0, "SIZE line disagrees with the S line");
  return *result;
}

}  // namespace steiner::io
