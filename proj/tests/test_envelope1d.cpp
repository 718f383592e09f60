#include <doctest.h>

#include <cmath>

#include "lcmin/envelope1d.hpp"
#include "lcmin/generators.hpp"
#include "oracle.hpp"

using namespace lcmin;

namespace {

SequenceGrid grid1(std::vector<double> v) {
  const int n = static_cast<int>(v.size()) - 1;
  return SequenceGrid({n}, Scale::log, std::move(v));
}

}  // namespace

TEST_CASE("sweep on a non-convex sequence") {
  const auto p = sweep(grid1({0, 2, 1, 6}));
  CHECK(p.contacts == std::vector<int>{0, 2, 3});
  REQUIRE(p.segments.size() == 2);
  CHECK(p.segments[0].slope == doctest::Approx(0.5));
  CHECK(p.segments[0].intercept == doctest::Approx(0.0));
  CHECK(p.segments[1].slope == doctest::Approx(5.0));
  CHECK(p.segments[1].intercept == doctest::Approx(-9.0));
  const std::vector<double> expect{0, 0.5, 1, 6};
  for (std::size_t i = 0; i < expect.size(); ++i) CHECK(p.minorant[i] == doctest::Approx(expect[i]));
  CHECK(p.boundary_affected == std::vector<int>{3});
}

TEST_CASE("sweep keeps convex data") {
  const auto p = sweep(grid1({0, 0, 1, 3}));
  CHECK(p.contacts == std::vector<int>{0, 1, 2, 3});
  CHECK(p.minorant == std::vector<double>{0, 0, 1, 3});
}

TEST_CASE("sweep skips +inf entries") {
  const auto p = sweep(grid1({0, kInf, 1, 6}));
  CHECK(p.contacts == std::vector<int>{0, 2, 3});
  CHECK(p.minorant[1] == doctest::Approx(0.5));
}

TEST_CASE("sweep right of the last finite point is +inf") {
  const auto p = sweep(grid1({0, 1, kInf}));
  CHECK(p.minorant[2] == kInf);
}

TEST_CASE("sweep preconditions") {
  CHECK_THROWS_AS(sweep(SequenceGrid({1, 1}, Scale::log, {0, 0, 0, 0})), Error);
  CHECK_THROWS_AS(sweep(SequenceGrid({2}, Scale::exp, {1, 1, 1})), Error);
  CHECK_THROWS_AS(sweep(grid1({kInf, 1, 2})), Error);
}

TEST_CASE("evaluate") {
  const auto p = sweep(grid1({0, 2, 1, 6}));
  CHECK(evaluate(p, 1.0) == doctest::Approx(0.5));
  CHECK(evaluate(p, 0.0) == 0.0);
  CHECK(evaluate(p, 2.0) == doctest::Approx(1.0));
  CHECK(evaluate(p, 3.0) == doctest::Approx(6.0));
  CHECK(evaluate(p, 2.5) == doctest::Approx(3.5));
  CHECK_THROWS_AS(evaluate(p, 3.5), Error);
  CHECK_THROWS_AS(evaluate(p, -0.1), Error);
}

TEST_CASE("sweep matches the chord oracle") {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = rng.uniform_int(0, 20);
    const auto g = gen::random_values({n}, rng, -5.0, 5.0, 0.15);
    const auto p = sweep(g);
    const auto o = oracle::hull_1d(std::vector<double>(g.values().begin(), g.values().end()));
    for (int i = 0; i <= n; ++i) {
      if (std::isinf(o[i])) CHECK(p.minorant[i] == o[i]);
      else CHECK(std::abs(p.minorant[i] - o[i]) <= 1e-9);
    }
    // Contacts are exact values and the minorant never exceeds the data.
    for (int c : p.contacts) CHECK(p.minorant[c] == g[c]);
    for (int i = 0; i <= n; ++i) CHECK(p.minorant[i] <= g[i] + 1e-12);
  }
}
