#include <doctest.h>

#include <cmath>

#include "lcmin/envelope.hpp"
#include "lcmin/envelope1d.hpp"
#include "lcmin/generators.hpp"
#include "oracle.hpp"

using namespace lcmin;

namespace {

SequenceGrid grid1(std::vector<double> v) {
  const int n = static_cast<int>(v.size()) - 1;
  return SequenceGrid({n}, Scale::log, std::move(v));
}

SequenceGrid notconvex22() { return gen::paper_notconvex({2, 2}, Scale::log); }

}  // namespace

TEST_CASE("h_of_k") {
  const auto g = grid1({0, 2, 1, 6});
  auto s = h_of_k(g, std::vector<double>{0.0});
  CHECK(s.h == 0.0);
  CHECK(s.touching == std::vector<std::size_t>{0});
  s = h_of_k(g, std::vector<double>{0.5});
  CHECK(s.h == 0.0);
  CHECK(s.touching == std::vector<std::size_t>{0, 2});

  const auto lin = SequenceGrid::from_function({3, 3}, Scale::log, [](const MultiIndex& a) { return double(a.order()); });
  s = h_of_k(lin, std::vector<double>{1.0, 1.0});
  CHECK(s.h == 0.0);
  CHECK(s.touching.size() == 16);

  CHECK_THROWS_AS(h_of_k(g, std::vector<double>{0.0, 1.0}), Error);
}

TEST_CASE("dual_value") {
  const auto g = grid1({0, 0, 1, 3});
  KGridSpec spec{{-1.0}, {3.0}, 0.25};
  CHECK(spec.total_points() == 17);
  const auto v = dual_value(g, std::vector<double>{1.0}, spec);
  CHECK(v.value == doctest::Approx(0.0));
  CHECK(dual_value(g, std::vector<double>{0.0}, spec).value == doctest::Approx(0.0));

  const auto nc = notconvex22();
  const auto dv = dual_value(nc, std::vector<double>{1.0, 1.0}, KGridSpec{{0, 0}, {8, 8}, 0.5});
  CHECK(dv.value <= 8.0 + 1e-12);
  CHECK(dv.value >= 7.9);

  CHECK_THROWS_AS(dual_value(g, std::vector<double>{1.0}, KGridSpec{{1.0}, {0.0}, 0.25}), Error);
  CHECK_THROWS_AS(dual_value(g, std::vector<double>{1.0}, KGridSpec{{0.0}, {1.0}, 0.0}), Error);
  CHECK_THROWS_AS(dual_value(g, std::vector<double>{4.0}, spec), Error);
}

TEST_CASE("minorant_lp examples") {
  const auto r = minorant_lp(grid1({0, 2, 1, 6}));
  const std::vector<double> expect{0, 0.5, 1, 6};
  for (std::size_t i = 0; i < 4; ++i) CHECK(r.minorant[i] == doctest::Approx(expect[i]));
  CHECK(r.contact_set == std::vector<std::size_t>{0, 2, 3});

  const auto nc = minorant_lp(notconvex22());
  CHECK(nc.minorant.at({1, 1}) == doctest::Approx(8.0));
  CHECK(nc.minorant.at({0, 0}) == 0.0);
  REQUIRE(nc.certificates[4].has_value());
  const auto& cert = *nc.certificates[4];
  CHECK(cert.k[0] + cert.k[1] + cert.h == doctest::Approx(8.0));

  const auto sq = SequenceGrid::from_function({3, 3}, Scale::log, [](const MultiIndex& a) {
    return double(a.order()) * a.order();
  });
  const auto rs = minorant_lp(sq);
  for (std::size_t i = 0; i < sq.size(); ++i) CHECK(rs.minorant[i] == doctest::Approx(sq[i]).epsilon(1e-12));
  CHECK(rs.contact_set.size() == sq.size());
}

TEST_CASE("minorant_lp preconditions") {
  CHECK_THROWS_AS(minorant_lp(SequenceGrid({2}, Scale::exp, {1, 2, 3})), Error);
  CHECK_THROWS_AS(minorant_lp(grid1({kInf, 1, 2})), Error);
}

TEST_CASE("+inf points impose no constraint") {
  const auto r = minorant_lp(grid1({0, kInf, 1, 6}));
  CHECK(r.minorant[1] == doctest::Approx(0.5));
  CHECK(r.minorant[3] == doctest::Approx(6.0));
  const auto t = minorant_lp(grid1({0, 1, kInf}));
  CHECK(t.minorant[2] == kInf);
  CHECK_FALSE(t.certificates[2].has_value());
}

TEST_CASE("certificates are supporting planes") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = gen::random_values({3, 3}, rng, -2.0, 4.0, 0.1);
    const auto r = minorant_lp(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!r.certificates[i]) {
        CHECK(r.minorant[i] == kInf);
        continue;
      }
      const auto& c = *r.certificates[i];
      const auto alpha = g.layout().coords(i);
      CHECK(c.k[0] * alpha[0] + c.k[1] * alpha[1] + c.h == doctest::Approx(r.minorant[i]).epsilon(1e-9));
      for (std::size_t b = 0; b < g.size(); ++b) {
        if (std::isinf(g[b])) continue;
        const auto beta = g.layout().coords(b);
        CHECK(c.k[0] * beta[0] + c.k[1] * beta[1] + c.h <= g[b] + 1e-9);
      }
    }
  }
}

TEST_CASE("minorant_lp agrees with the sweep and the oracles") {
  SplitMix64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.uniform_int(1, 15);
    const auto g = gen::random_values({n}, rng, -3.0, 3.0, 0.1);
    const auto lp = minorant_lp(g);
    const auto sw = sweep(g);
    const auto o = oracle::hull_1d(std::vector<double>(g.values().begin(), g.values().end()));
    for (int i = 0; i <= n; ++i) {
      if (std::isinf(o[i])) {
        CHECK(lp.minorant[i] == kInf);
        continue;
      }
      CHECK(std::abs(lp.minorant[i] - o[i]) <= 1e-8);
      CHECK(std::abs(sw.minorant[i] - o[i]) <= 1e-8);
    }
  }
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = gen::random_values({rng.uniform_int(1, 4), rng.uniform_int(1, 4)}, rng, -3.0, 3.0);
    const auto lp = minorant_lp(g);
    const auto bf = minorant_brute_force(g);
    std::vector<oracle::P2> pts;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto a = g.layout().coords(i);
      pts.push_back({double(a[0]), double(a[1]), g[i]});
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto a = g.layout().coords(i);
      const double o = oracle::hull_2d(pts, a[0], a[1]);
      CHECK(std::abs(lp.minorant[i] - o) <= 1e-8);
      CHECK(std::abs(bf[i] - o) <= 1e-8);
    }
  }
}

TEST_CASE("dual grid is a lower bound") {
  SplitMix64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = gen::random_lifted({3, 3}, rng);
    const auto lp = minorant_lp(g);
    const auto dg = minorant_dual_grid(g, default_k_grid(g, 0.5));
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(dg[i].value <= lp.minorant[i] + 1e-9);
  }
}

TEST_CASE("serial and parallel runs agree") {
  SplitMix64 rng(77);
  const auto g = gen::random_lifted({4, 4, 3}, rng);
  const auto a = minorant_lp(g, Exec::serial);
  const auto b = minorant_lp(g, Exec::parallel);
  CHECK(a.minorant == b.minorant);
  CHECK(a.contact_set == b.contact_set);
  CHECK(a.boundary_affected == b.boundary_affected);
}

TEST_CASE("boundary_restriction") {
  const auto g = notconvex22();
  const auto face = boundary_restriction(g, 1);
  REQUIRE(face.dim() == 1);
  CHECK(face.values()[0] == 0.0);
  CHECK(face.values()[1] == 3.0);
  CHECK(face.values()[2] == 8.0);
  CHECK_THROWS_AS(boundary_restriction(grid1({0, 1}), 0), Error);
  CHECK_THROWS_AS(boundary_restriction(g, 2), Error);
}

TEST_CASE("stability_probe") {
  const auto small = grid1({0, 2, 1, 6});
  const auto r20 = stability_probe(small, grid1({0, 2, 1, 6, 20}));
  CHECK(r20.unstable.empty());
  CHECK(r20.max_diff == doctest::Approx(0.0));

  // With (4,2) the hull runs 0 -> (2,1) -> (4,2): index 3 drops from 6 to 1.5,
  // indices 0..2 keep their values.
  const auto r2 = stability_probe(small, grid1({0, 2, 1, 6, 2}));
  CHECK(r2.unstable == std::vector<std::size_t>{3});
  CHECK(r2.max_diff == doctest::Approx(4.5));

  const auto conv = grid1({0, 0, 1, 3});
  CHECK(stability_probe(conv, grid1({0, 0, 1, 3, 6, 10})).unstable.empty());

  CHECK_THROWS_AS(stability_probe(small, grid1({0, 2, 1, 7, 8})), Error);
  CHECK_THROWS_AS(stability_probe(grid1({0, 2, 1, 6, 2}), small), Error);
}
