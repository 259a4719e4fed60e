#pragma once

#include <cstdint>
#include <vector>

#include "steiner/domset.hpp"
#include "steiner/dst_instance.hpp"

namespace steiner {

/// Set Cover instance over elements [0, num_elements).
struct SetCoverInstance {
  int num_elements = 0;
  std::vector<std::vector<int>> sets;  // each sorted, unique, non-empty
  int budget = 0;

  friend bool operator==(const SetCoverInstance&, const SetCoverInstance&) = default;
};

/// Throws std::invalid_argument on empty sets or out-of-range elements.
void validate(const SetCoverInstance& sc);

/// Partitioned subgraph isomorphism instance. `color[v]` is in [0, pattern size).
struct PsiInstance {
  Graph host;
  Graph pattern;
  std::vector<int> color;
};

inline constexpr long long kDefaultPaddingCap = 1'000'000;

/// Degeneracy-2 digraph: one subdivided cycle per element, one vertex per
/// set, a subdivided master cycle carrying the root. DST optimum equals the
/// Set Cover optimum; budget unchanged. Rejects uncovered elements and an
/// empty family.
DstInstance gen_dst_from_setcover_2deg(const SetCoverInstance& sc);

/// Root -> set vertices -> element terminals, plus ceil(m^(2 gamma / c))
/// isolated padding vertices. Throws std::length_error when the padding
/// exceeds `cap`.
DstInstance gen_dst_from_setcover_logdeg(const SetCoverInstance& sc, double gamma, double c,
                                         long long cap = kDefaultPaddingCap);

/// Set and element vertices, a root r adjacent to all sets and to a pendant
/// p, and a disjoint star of ceil(m^(2 gamma / c)) leaves. Budget k + 2.
DsInstance gen_domset_from_setcover(const SetCoverInstance& sc, double gamma, double c,
                                    long long cap = kDefaultPaddingCap);

/// Two-layer digraph V x {1,2} plus a root: (u,1) -> (v,2) iff u == v or uv
/// is an edge. Vertex (v,1) is v, (v,2) is n + v, the root is 2n.
DstInstance gen_dst_from_domset(const DsInstance& ds);

/// Grid Set Cover built from a PSI instance, with the bookkeeping needed to
/// inspect the construction.
struct PsiSetCover {
  struct SetInfo {
    int row = 0, col = 0;     // grid position (color classes)
    Vertex u = 0, v = 0;      // host vertices; u == v on the diagonal
  };
  struct ConsecutivePair {
    int row1 = 0, col1 = 0, row2 = 0, col2 = 0;
    int first_element = 0;    // 2b consecutive element ids
    bool along_row = true;    // same row (true) or same column (false)
  };
  SetCoverInstance sc;
  std::vector<SetInfo> info;  // parallel to sc.sets
  std::vector<ConsecutivePair> pairs;
  int id_bits = 0;            // b: ids are b-subsets of [2b]
  std::vector<std::uint64_t> id;  // bitmask per host vertex
};

/// Grid construction: sets per cross-color host edge at pattern-edge positions
/// (both orientations) and one diagonal set per host vertex; budget
/// 2 |E_G| + |V_G|. Rejects patterns with isolated vertices, empty color
/// classes, and empty positions on pattern edges.
PsiSetCover gen_setcover_from_psi(const PsiInstance& psi);

/// Seeded random DST instance of degeneracy <= d: each vertex, in a random
/// order, draws up to d neighbors among earlier vertices with random arc
/// direction. With `acyclic_terminals`, terminal-terminal arcs follow that
/// order so D[T] is a DAG. The root is drawn among the non-terminals.
DstInstance gen_random_sparse(int n, int d, double terminal_fraction, int k, std::uint64_t seed,
                              bool acyclic_terminals);

/// Seeded random undirected graph of degeneracy <= d, same drawing scheme.
Graph gen_random_degenerate_graph(int n, int d, std::uint64_t seed);

/// Seeded random Set Cover with every element covered at least once.
SetCoverInstance gen_random_setcover(int num_elements, int num_sets, int max_set_size, int k, std::uint64_t seed);

}  // namespace steiner
