#include <doctest.h>

#include <random>
#include <vector>

#include "steiner/kernels.hpp"

using namespace steiner;
using namespace steiner::kernels;

namespace {

struct Case {
  std::vector<std::int32_t> best, lhs, rhs;
  std::vector<std::uint32_t> arg;
};

Case random_case(std::size_t len, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int32_t> small(0, 12);
  auto draw = [&] { return rng() % 5 == 0 ? kInfinity : small(rng); };
  Case c;
  for (std::size_t i = 0; i < len; ++i) {
    c.best.push_back(rng() % 7 == 0 ? kInfinity : small(rng) * 2);
    c.lhs.push_back(draw());
    c.rhs.push_back(draw());
    c.arg.push_back(static_cast<std::uint32_t>(rng() % 4));
  }
  return c;
}

// Plain loop written from the contract, independent of the library kernels.
void reference(Case& c, std::uint32_t tag) {
  for (std::size_t i = 0; i < c.best.size(); ++i) {
    const std::int32_t sum = c.lhs[i] + c.rhs[i];
    if (sum < c.best[i]) {
      c.best[i] = sum;
      c.arg[i] = tag;
    }
  }
}

void apply(MinPlusFn fn, Case& c, std::uint32_t tag) { fn(c.best, c.arg, c.lhs, c.rhs, tag); }

}  // namespace

TEST_CASE("scalar kernel follows the contract") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 500; ++round) {
    Case c = random_case(rng() % 70, rng);
    Case expected = c;
    reference(expected, 9);
    apply(min_plus_scalar, c, 9);
    CHECK(c.best == expected.best);
    CHECK(c.arg == expected.arg);
  }
}

TEST_CASE("every supported backend is equivalent to scalar") {
  std::mt19937_64 rng(32);
  for (Backend b : {Backend::kScalar, Backend::kAvx2, Backend::kNeon}) {
    if (!backend_supported(b)) {
      MESSAGE("backend ", backend_name(b), " not supported here");
      CHECK(min_plus_for(b) == min_plus_for(Backend::kScalar));
      continue;
    }
    for (int round = 0; round < 2000; ++round) {
      // Lengths around vector widths and tails.
      Case c = random_case(round % 41 + (round % 3 == 0 ? 64 : 0), rng);
      Case expected = c;
      const auto tag = static_cast<std::uint32_t>(round);
      apply(min_plus_scalar, expected, tag);
      apply(min_plus_for(b), c, tag);
      REQUIRE(c.best == expected.best);
      REQUIRE(c.arg == expected.arg);
    }
  }
}

TEST_CASE("ties keep the earlier tag") {
  for (Backend b : {Backend::kScalar, Backend::kAvx2, Backend::kNeon}) {
    Case c{std::vector<std::int32_t>(19, 4), std::vector<std::int32_t>(19, 2), std::vector<std::int32_t>(19, 2),
           std::vector<std::uint32_t>(19, 1)};
    apply(min_plus_for(b), c, 7);
    CHECK(c.arg == std::vector<std::uint32_t>(19, 1));
  }
}

TEST_CASE("infinite operands never improve a finite entry") {
  Case c{std::vector<std::int32_t>(33, 100), std::vector<std::int32_t>(33, kInfinity),
         std::vector<std::int32_t>(33, 0), std::vector<std::uint32_t>(33, 0)};
  apply(min_plus_for(detect_backend()), c, 3);
  CHECK(c.best == std::vector<std::int32_t>(33, 100));
}

TEST_CASE("active backend can be switched") {
  const Backend before = active_backend();
  set_active_backend(Backend::kScalar);
  CHECK(active_backend() == Backend::kScalar);
  std::mt19937_64 rng(33);
  Case c = random_case(50, rng);
  Case expected = c;
  reference(expected, 2);
  min_plus(c.best, c.arg, c.lhs, c.rhs, 2);
  CHECK(c.best == expected.best);
  set_active_backend(before);
  CHECK(backend_supported(detect_backend()));
  CHECK(backend_name(Backend::kScalar) == "scalar");
}
