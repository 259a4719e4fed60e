#include <doctest.h>

#include "steiner/ds_approx.hpp"
#include "steiner/domset.hpp"
#include "steiner/oracles.hpp"
#include "steiner/reductions.hpp"
#include "support.hpp"

using namespace steiner;

TEST_CASE("edge cases") {
  CHECK(ds_approx(Graph(0, {})).dominating_set.empty());
  CHECK(ds_approx(Graph(3, {})).dominating_set == VertexSet{0, 1, 2});
  ApproxResult star = ds_approx(Graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}));
  CHECK(star.degeneracy == 1);
  CHECK(verify_domset(Graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}), star.dominating_set));
  CHECK(star.dominating_set.size() == 1);
}

TEST_CASE("output dominates and the audit holds on random graphs") {
  std::mt19937_64 rng(71);
  for (int round = 0; round < 400; ++round) {
    const Vertex n = 1 + static_cast<Vertex>(rng() % 60);
    Graph g = round % 2 ? testing_support::random_graph(n, 0.02 + 0.03 * (rng() % 5), rng)
                        : gen_random_degenerate_graph(n, 1 + static_cast<int>(rng() % 4), rng());
    ApproxOptions opts;
    opts.audit = true;
    ApproxResult r;
    REQUIRE_NOTHROW(r = ds_approx(g, opts));
    CHECK(verify_domset(g, r.dominating_set));
    CHECK(std::is_sorted(r.dominating_set.begin(), r.dominating_set.end()));
    if (n <= 12) CHECK(r.degeneracy == testing_support::brute_degeneracy(g));
  }
}

TEST_CASE("ratio against the optimum") {
  std::mt19937_64 rng(72);
  for (int round = 0; round < 300; ++round) {
    const Vertex n = 1 + static_cast<Vertex>(rng() % 12);
    Graph g = gen_random_degenerate_graph(n, 1 + static_cast<int>(rng() % 3), rng());
    ApproxResult r = ds_approx(g);
    Solution opt = oracle::brute_force_domset({g, n});
    REQUIRE(opt.feasible);
    const std::size_t d = std::max(1, r.degeneracy);
    CHECK(r.dominating_set.size() <= d * d * opt.vertices.size());
  }
}

TEST_CASE("trace reports every iteration in order") {
  Graph g = gen_random_degenerate_graph(200, 3, 5);
  std::vector<std::size_t> sizes;
  ApproxOptions opts;
  opts.trace = [&](Vertex, int, std::size_t y) { sizes.push_back(y); };
  ApproxResult r = ds_approx(g, opts);
  CHECK(sizes.size() == r.iterations);
  CHECK(std::is_sorted(sizes.begin(), sizes.end()));
  CHECK(std::adjacent_find(sizes.begin(), sizes.end()) == sizes.end());
  CHECK(ds_approx(g).dominating_set == r.dominating_set);
}

TEST_CASE("degeneracy override is used") {
  Graph g = gen_random_degenerate_graph(100, 2, 9);
  ApproxOptions opts;
  opts.degeneracy = 5;
  ApproxResult r = ds_approx(g, opts);
  CHECK(r.degeneracy == 5);
  CHECK(verify_domset(g, r.dominating_set));
}
