#include <doctest.h>

#include <cmath>

#include "lcmin/core.hpp"

using namespace lcmin;

namespace {

SequenceGrid grid1(std::vector<double> v, Scale s = Scale::log) {
  const int n = static_cast<int>(v.size()) - 1;
  return SequenceGrid({n}, s, std::move(v));
}

}  // namespace

TEST_CASE("multi-index arithmetic") {
  const MultiIndex a{1, 0, 2};
  CHECK(a.order() == 3);
  CHECK(a.dim() == 3);
  CHECK((a + MultiIndex::unit(3, 1)) == MultiIndex{1, 1, 2});
  CHECK((a - MultiIndex{1, 0, 0}) == MultiIndex{0, 0, 2});
  CHECK_THROWS_AS((a - MultiIndex{2, 0, 0}), Error);
  CHECK_THROWS_AS(MultiIndex({-1}), Error);
  CHECK(a.to_string() == "(1,0,2)");
  CHECK(MultiIndex::zero(2).is_zero());
}

TEST_CASE("box layout is row-major with the last axis fastest") {
  BoxLayout layout({2, 3});
  CHECK(layout.size() == 12);
  CHECK(layout.flat(MultiIndex{0, 1}) == 1);
  CHECK(layout.flat(MultiIndex{1, 0}) == 4);
  for (std::size_t i = 0; i < layout.size(); ++i) CHECK(layout.flat(layout.index(i)) == i);
  CHECK(layout.shift(0, 0, 1) == std::optional<std::size_t>(4));
  CHECK_FALSE(layout.shift(0, 0, -1).has_value());
  CHECK(layout.on_outer_face(layout.flat(MultiIndex{2, 0})));
  CHECK(layout.on_outer_face(layout.flat(MultiIndex{0, 3})));
  CHECK_FALSE(layout.on_outer_face(layout.flat(MultiIndex{1, 2})));
  CHECK(layout.max_order() == 5);
}

TEST_CASE("validate_grid") {
  CHECK(validate_grid(grid1({0, 2, 1, 6})).empty());

  const auto v = validate_grid(grid1({kInf, 2, 1, 6}));
  REQUIRE(v.size() == 1);
  CHECK(v[0].index == MultiIndex{0});
  CHECK(v[0].rule == "(iv)");

  std::vector<double> values(9, 1.0);
  values[4] = std::nan("");
  const auto missing = validate_grid(SequenceGrid({2, 2}, Scale::log, values));
  REQUIRE(missing.size() == 1);
  CHECK(missing[0].message == "box incomplete at (1,1)");

  const auto neg = validate_grid(grid1({0, -kInf, 1}));
  REQUIRE(neg.size() == 1);
  CHECK(neg[0].rule == "(i)");
  CHECK(validate_grid(grid1({1, 0.0, 2}, Scale::exp)).size() == 1);
  CHECK(validate_grid(grid1({0, kInf, 1})).empty());

  // Pure and idempotent.
  const auto g = grid1({kInf, -kInf, 1});
  CHECK(validate_grid(g) == validate_grid(g));
}

TEST_CASE("growth_check") {
  auto from = [](int n, auto f) { return SequenceGrid::from_function({n}, Scale::log, [&](const MultiIndex& a) { return f(a.order()); }); };
  CHECK(growth_check(from(6, [](int p) { return double(p) * p; })).passes);
  CHECK_FALSE(growth_check(from(6, [](int p) { return 2.0 * p; })).passes);
  for (double c : {-1.0, 0.0, 0.5, 3.0}) CHECK_FALSE(growth_check(from(6, [c](int p) { return c * p; })).passes);

  const auto g = SequenceGrid::from_function({5, 5}, Scale::log, [](const MultiIndex& a) {
    const double o = a.order();
    return o * std::log(o + 1.0);
  });
  const auto d = growth_check(g);
  CHECK(d.passes);
  // Outer shells |alpha| in {9, 10}: 2 + 1 points.
  CHECK(d.ratios.size() == 3);
  CHECK(d.min_boundary_ratio == doctest::Approx(std::log(10.0)));

  CHECK_THROWS_AS(growth_check(from(2, [](int p) { return double(p); })), Error);
  CHECK_THROWS_AS(growth_check(grid1({1, 2, 3, 4}, Scale::exp)), Error);
}

TEST_CASE("scale conversion") {
  const auto a = to_log(grid1({1, 1, 2}, Scale::exp));
  CHECK(a.scale() == Scale::log);
  CHECK(a[0] == 0.0);
  CHECK(a[1] == 0.0);
  CHECK(a[2] == doctest::Approx(std::log(2.0)));
  CHECK(to_exp(grid1({0, kInf}))[1] == kInf);
  CHECK(to_log(grid1({1, kInf}, Scale::exp))[1] == kInf);
  CHECK_THROWS_AS(to_log(grid1({1, -2}, Scale::exp)), Error);

  const auto g = grid1({0, 0.3, 1.7, kInf, 12.5});
  const auto back = to_log(to_exp(g));
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::isinf(g[i])) CHECK(back[i] == g[i]);
    else CHECK(std::abs(back[i] - g[i]) <= 1e-12 * std::max(1.0, std::abs(g[i])));
  }
}

TEST_CASE("grid construction rejects a wrong value count") {
  CHECK_THROWS_AS((SequenceGrid({2}, Scale::log, {0, 1})), Error);
  CHECK(grid1({0, 1}).is_normalized());
  CHECK_FALSE(grid1({2, 1}, Scale::exp).is_normalized());
}
