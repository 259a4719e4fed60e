#include "steiner/dst_instance.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

namespace steiner {

void validate(const DstInstance& inst) {
  const Vertex n = inst.graph.num_vertices();
  if (inst.root < 0 || inst.root >= n) throw std::invalid_argument("root out of range");
  if (inst.budget < 0) throw std::invalid_argument("negative budget");
  if (!std::is_sorted(inst.terminals.begin(), inst.terminals.end()) ||
      std::adjacent_find(inst.terminals.begin(), inst.terminals.end()) != inst.terminals.end())
    throw std::invalid_argument("terminal set must be sorted and unique");
  for (Vertex t : inst.terminals) {
    if (t < 0 || t >= n) throw std::invalid_argument("terminal " + std::to_string(t) + " out of range");
    if (t == inst.root) throw std::invalid_argument("root is a terminal");
  }
}

std::vector<char> to_mask(Vertex n, const VertexSet& s) {
  std::vector<char> mask(n, 0);
  for (Vertex v : s) mask[v] = 1;
  return mask;
}

Digraph terminal_subgraph(const DstInstance& inst) {
  return induced_subgraph(inst.graph, to_mask(inst.graph.num_vertices(), inst.terminals));
}

VertexSet source_terminals(const DstInstance& inst) {
  auto is_terminal = to_mask(inst.graph.num_vertices(), inst.terminals);
  VertexSet sources;
  for (Vertex t : inst.terminals) {
    auto in = inst.graph.in(t);
    if (std::none_of(in.begin(), in.end(), [&](Vertex u) { return is_terminal[u]; })) sources.push_back(t);
  }
  return sources;
}

ReducedInstance reduce(const DstInstance& inst) {
  validate(inst);
  const Vertex n = inst.graph.num_vertices();
  std::vector<Vertex> term_index;
  Digraph dt = induced_subgraph(inst.graph, to_mask(n, inst.terminals), &term_index);
  auto comps = scc_labels(dt);

  // Every vertex starts in its own class; terminals in one component share
  // the class of the component's first terminal.
  std::vector<Vertex> label(n);
  std::vector<Vertex> comp_rep(comps.count, -1);
  for (Vertex v = 0; v < n; ++v) {
    label[v] = v;
    if (term_index[v] < 0) continue;
    Vertex& rep = comp_rep[comps.label[term_index[v]]];
    if (rep == -1) rep = v;
    label[v] = rep;
  }
  Contraction c = contract_classes(inst.graph, label);

  ReducedInstance ri;
  ri.contraction_map = std::move(c.map);
  ri.inst.graph = std::move(c.graph);
  ri.inst.root = ri.contraction_map[inst.root];
  ri.inst.budget = inst.budget;
  for (Vertex t : inst.terminals) ri.inst.terminals.push_back(ri.contraction_map[t]);
  std::sort(ri.inst.terminals.begin(), ri.inst.terminals.end());
  ri.inst.terminals.erase(std::unique(ri.inst.terminals.begin(), ri.inst.terminals.end()),
                          ri.inst.terminals.end());
  ri.original_of.assign(ri.inst.graph.num_vertices(), -1);
  for (Vertex v = n - 1; v >= 0; --v) ri.original_of[ri.contraction_map[v]] = v;
  ri.source_terminals = source_terminals(ri.inst);
  assert(is_acyclic(terminal_subgraph(ri.inst)));
  return ri;
}

bool verify_dst(const DstInstance& inst, const Solution& sol) {
  if (!sol.feasible) return false;
  const Vertex n = inst.graph.num_vertices();
  if (static_cast<long>(sol.vertices.size()) > inst.budget) return false;
  std::vector<char> allowed = to_mask(n, inst.terminals);
  for (Vertex v : sol.vertices) {
    if (v < 0 || v >= n || v == inst.root || allowed[v]) return false;
    allowed[v] = 1;
  }
  allowed[inst.root] = 1;

  std::vector<char> seen(n, 0);
  std::vector<Vertex> queue{inst.root};
  seen[inst.root] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (Vertex w : inst.graph.out(queue[head]))
      if (allowed[w] && !seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
  return std::all_of(inst.terminals.begin(), inst.terminals.end(), [&](Vertex t) { return seen[t]; });
}

}  // namespace steiner
