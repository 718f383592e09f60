#include <doctest.h>

#include <cmath>

#include "lcmin/lpsolve.hpp"
#include "lcmin/rng.hpp"
#include "oracle.hpp"

using namespace lcmin;
using namespace lcmin::lp;

TEST_CASE("single bound") {
  DenseLP lp(1);
  lp.set_objective(std::vector<double>{1.0});
  lp.add_row(std::vector<double>{1.0}, 5.0);
  const auto s = solve(lp);
  REQUIRE(s.status == Status::optimal);
  CHECK(s.optimum == doctest::Approx(5.0));
  CHECK(s.point[0] == doctest::Approx(5.0));
  CHECK(s.active_rows == std::vector<std::size_t>{0});
}

TEST_CASE("unbounded free variable") {
  DenseLP lp(1);
  lp.set_objective(std::vector<double>{1.0});
  CHECK(solve(lp).status == Status::unbounded);
}

TEST_CASE("infeasible system") {
  DenseLP lp(1);
  lp.set_objective(std::vector<double>{1.0});
  lp.add_row(std::vector<double>{1.0}, -1.0);
  lp.add_row(std::vector<double>{-1.0}, -1.0);  // x >= 1
  CHECK(solve(lp).status == Status::infeasible);
}

TEST_CASE("two variables with nonneg bounds") {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x, y >= 0 -> (1.6, 1.2), 2.8
  DenseLP lp(2);
  lp.set_objective(std::vector<double>{1.0, 1.0});
  lp.set_bound(0, Bound::nonneg);
  lp.set_bound(1, Bound::nonneg);
  lp.add_row(std::vector<double>{1.0, 2.0}, 4.0);
  lp.add_row(std::vector<double>{3.0, 1.0}, 6.0);
  const auto s = solve(lp);
  REQUIRE(s.status == Status::optimal);
  CHECK(s.optimum == doctest::Approx(2.8));
  CHECK(s.point[0] == doctest::Approx(1.6));
  CHECK(s.point[1] == doctest::Approx(1.2));
}

TEST_CASE("rows with +inf rhs are ignored, invalid rhs rejected") {
  DenseLP lp(1);
  lp.add_row(std::vector<double>{1.0}, oracle::inf);
  lp.add_row(std::vector<double>{1.0}, 3.0);
  const auto s = solve(lp, std::vector<double>{1.0});
  REQUIRE(s.status == Status::optimal);
  CHECK(s.optimum == doctest::Approx(3.0));
  CHECK(s.active_rows == std::vector<std::size_t>{1});
  CHECK_THROWS_AS(lp.add_row(std::vector<double>{1.0}, std::nan("")), Error);
  CHECK_THROWS_AS(lp.add_row(std::vector<double>{1.0}, -oracle::inf), Error);
}

TEST_CASE("envelope LP on the not-convex grid") {
  const double a[3][3] = {{0, 3, 8}, {3, 15, 35}, {8, 35, 80}};
  DenseLP lp(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) lp.add_row(std::vector<double>{double(i), double(j), 1.0}, a[i][j]);
  const auto s = solve(lp, std::vector<double>{1.0, 1.0, 1.0});
  REQUIRE(s.status == Status::optimal);
  CHECK(s.optimum == doctest::Approx(8.0).epsilon(1e-12));
  for (std::size_t r = 0; r < lp.num_rows(); ++r) {
    double lhs = 0;
    for (std::size_t j = 0; j < 3; ++j) lhs += lp.row(r)[j] * s.point[j];
    CHECK(lhs <= lp.rhs(r) + kFeasTol);
  }
}

TEST_CASE("brute-force envelope examples") {
  std::vector<WeightedPoint> p1{{{0}, 0}, {{1}, 2}, {{2}, 1}, {{3}, 6}};
  CHECK(brute_force_envelope(p1, std::vector<double>{1.0}) == doctest::Approx(0.5));
  CHECK(brute_force_envelope(p1, std::vector<double>{2.0}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(brute_force_envelope(p1, std::vector<double>{4.0}), Error);

  std::vector<WeightedPoint> p2{{{0, 0}, 0}, {{2, 0}, 8}, {{0, 2}, 8}, {{1, 1}, 15}};
  CHECK(brute_force_envelope(p2, std::vector<double>{1.0, 1.0}) == doctest::Approx(8.0));
}

TEST_CASE("LP duality against the brute-force envelope and the planar oracle") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n1 = rng.uniform_int(1, 4), n2 = rng.uniform_int(0, 4);
    std::vector<WeightedPoint> pts;
    std::vector<oracle::P2> opts;
    DenseLP lp(3);
    for (int i = 0; i <= n1; ++i)
      for (int j = 0; j <= n2; ++j) {
        const double v = rng.uniform(-3.0, 5.0);
        pts.push_back({{double(i), double(j)}, v});
        opts.push_back({double(i), double(j), v});
        lp.add_row(std::vector<double>{double(i), double(j), 1.0}, v);
      }
    for (int i = 0; i <= n1; ++i)
      for (int j = 0; j <= n2; ++j) {
        const auto s = solve(lp, std::vector<double>{double(i), double(j), 1.0});
        REQUIRE(s.status == Status::optimal);
        const double bf = brute_force_envelope(pts, std::vector<double>{double(i), double(j)});
        CHECK(std::abs(s.optimum - bf) <= 1e-8);
        CHECK(std::abs(bf - oracle::hull_2d(opts, i, j)) <= 1e-8);
      }
  }
}
