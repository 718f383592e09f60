#include "lcmin/envelope.hpp"

#include <algorithm>
#include <cmath>

#include "lcmin/lpsolve.hpp"

namespace lcmin {

namespace {

void require_log_and_valid(const SequenceGrid& g) {
  if (g.scale() != Scale::log) throw Error(ErrorKind::ScaleMismatch, "expected a LOG-scale grid");
  const auto violations = validate_grid(g);
  if (!violations.empty()) throw Error(ErrorKind::Validation, violations.front().message);
}

double dot(std::span<const double> k, std::span<const int> alpha) {
  double s = 0.0;
  for (std::size_t j = 0; j < k.size(); ++j) s += k[j] * alpha[j];
  return s;
}

/// min_beta (a_beta - <k, beta>) without building the touching list.
double intercept(const SequenceGrid& g, std::span<const double> k) {
  double h = kInf;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double a = g[i];
    if (!std::isfinite(a)) continue;
    h = std::min(h, a - dot(k, g.layout().coords(i)));
  }
  return h;
}

}  // namespace

SupportPlane h_of_k(const SequenceGrid& g, std::span<const double> k) {
  if (k.size() != static_cast<std::size_t>(g.dim()))
    throw Error(ErrorKind::DimensionMismatch, "slope dimension != grid dimension");
  SupportPlane plane;
  plane.k.assign(k.begin(), k.end());
  plane.h = intercept(g, k);
  if (!std::isfinite(plane.h)) throw Error(ErrorKind::AllInfinite, "no finite entry in the grid");
  const double tol = kTouchTol * std::max(1.0, std::abs(plane.h));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double a = g[i];
    if (!std::isfinite(a)) continue;
    if (a - dot(k, g.layout().coords(i)) <= plane.h + tol) plane.touching.push_back(i);
  }
  return plane;
}

// ------------------------------------------------------------ sampled dual

std::size_t KGridSpec::points_on_axis(std::size_t axis) const {
  return static_cast<std::size_t>(std::floor((hi[axis] - lo[axis]) / step + 1e-9)) + 1;
}

std::size_t KGridSpec::total_points() const {
  std::size_t n = 1;
  for (std::size_t j = 0; j < lo.size(); ++j) n *= points_on_axis(j);
  return n;
}

KGridSpec default_k_grid(const SequenceGrid& g, double step) {
  const auto d = static_cast<std::size_t>(g.dim());
  KGridSpec spec;
  spec.lo.assign(d, kInf);
  spec.hi.assign(d, -kInf);
  spec.step = step;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double a = g.log_value(i);
    if (!std::isfinite(a)) continue;
    for (std::size_t j = 0; j < d; ++j) {
      auto next = g.layout().shift(i, static_cast<int>(j), 1);
      if (!next) continue;
      const double b = g.log_value(*next);
      if (!std::isfinite(b)) continue;
      spec.lo[j] = std::min(spec.lo[j], b - a);
      spec.hi[j] = std::max(spec.hi[j], b - a);
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    if (spec.lo[j] > spec.hi[j]) spec.lo[j] = spec.hi[j] = 0.0;
  }
  return spec;
}

DualValue dual_value(const SequenceGrid& g, std::span<const double> x, const KGridSpec& spec, Exec exec) {
  const auto d = static_cast<std::size_t>(g.dim());
  if (x.size() != d) throw Error(ErrorKind::DimensionMismatch, "point dimension != grid dimension");
  for (std::size_t j = 0; j < d; ++j)
    if (!(x[j] >= 0.0 && x[j] <= g.box()[j])) throw Error(ErrorKind::OutOfRange, "x must lie in the box");
  if (spec.lo.size() != d || spec.hi.size() != d || !(spec.step > 0.0))
    throw Error(ErrorKind::EmptyKGrid, "slope grid needs one range per axis and a positive step");
  for (std::size_t j = 0; j < d; ++j)
    if (!(spec.lo[j] <= spec.hi[j])) throw Error(ErrorKind::EmptyKGrid, "slope range is empty");

  std::vector<std::size_t> counts(d);
  for (std::size_t j = 0; j < d; ++j) counts[j] = spec.points_on_axis(j);
  const std::size_t total = spec.total_points();

  auto slope_at = [&](std::size_t flat, std::vector<double>& k) {
    k.resize(d);
    for (std::size_t j = d; j-- > 0;) {
      k[j] = spec.lo[j] + static_cast<double>(flat % counts[j]) * spec.step;
      flat /= counts[j];
    }
  };

  std::vector<double> values(total);
  for_each_index(total, exec, [&](std::size_t s) {
    std::vector<double> k;
    slope_at(s, k);
    double v = intercept(g, k);
    for (std::size_t j = 0; j < d; ++j) v += k[j] * x[j];
    values[s] = v;
  });

  std::size_t best = 0;
  for (std::size_t s = 1; s < total; ++s)
    if (values[s] > values[best]) best = s;
  DualValue out;
  out.value = values[best];
  slope_at(best, out.best_k);
  out.spec = spec;
  return out;
}

std::vector<DualValue> minorant_dual_grid(const SequenceGrid& g, const KGridSpec& spec, Exec exec) {
  std::vector<DualValue> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto c = g.layout().coords(i);
    std::vector<double> x(c.begin(), c.end());
    out[i] = dual_value(g, x, spec, exec);
  }
  return out;
}

// ------------------------------------------------------------ exact minorant

MinorantResult minorant_lp(const SequenceGrid& g, Exec exec) {
  require_log_and_valid(g);
  const auto d = static_cast<std::size_t>(g.dim());
  const auto& layout = g.layout();

  // Row id == flat index; +inf rows are dropped by the solver.
  lp::DenseLP lp(d + 1);
  std::vector<double> row(d + 1, 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto c = layout.coords(i);
    for (std::size_t j = 0; j < d; ++j) row[j] = c[j];
    lp.add_row(row, g[i]);
  }

  std::vector<double> values(g.size(), kInf);
  std::vector<std::optional<SupportPlane>> certs(g.size());
  for_each_index(g.size(), exec, [&](std::size_t i) {
    auto c = layout.coords(i);
    std::vector<double> objective(d + 1, 1.0);
    for (std::size_t j = 0; j < d; ++j) objective[j] = c[j];
    const auto sol = lp::solve(lp, objective);
    if (sol.status == lp::Status::unbounded) return;  // outside the hull of finite points
    if (sol.status != lp::Status::optimal)
      throw Error(ErrorKind::NumericBreakdown, "envelope LP reported infeasible at " + layout.index(i).to_string());
    values[i] = std::min(sol.optimum, g[i]);
    certs[i] = h_of_k(g, std::span<const double>(sol.point.data(), d));
  });

  MinorantResult result{SequenceGrid(std::vector<int>(g.box().begin(), g.box().end()), Scale::log, values),
                        std::move(certs), {}, {}};
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double a = g[i];
    if (std::isfinite(a) && values[i] >= a - 1e-9 * std::max(1.0, std::abs(a))) result.contact_set.push_back(i);
    const auto& cert = result.certificates[i];
    if (cert && std::any_of(cert->touching.begin(), cert->touching.end(),
                            [&](std::size_t t) { return layout.on_outer_face(t); }))
      result.boundary_affected.push_back(i);
  }
  return result;
}

std::vector<double> minorant_brute_force(const SequenceGrid& g, Exec exec) {
  require_log_and_valid(g);
  const auto d = static_cast<std::size_t>(g.dim());
  std::vector<lp::WeightedPoint> points;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!std::isfinite(g[i])) continue;
    auto c = g.layout().coords(i);
    points.push_back({std::vector<double>(c.begin(), c.end()), g[i]});
  }
  std::vector<double> out(g.size(), kInf);
  for_each_index(g.size(), exec, [&](std::size_t i) {
    auto c = g.layout().coords(i);
    std::vector<double> target(c.begin(), c.end());
    try {
      out[i] = lp::brute_force_envelope(points, target);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TargetOutsideHull) throw;
    }
  });
  (void)d;
  return out;
}

SequenceGrid boundary_restriction(const SequenceGrid& g, int axis) {
  if (g.dim() < 2) throw Error(ErrorKind::DimensionMismatch, "face restriction needs d >= 2");
  if (axis < 0 || axis >= g.dim()) throw Error(ErrorKind::OutOfRange, "axis out of range");
  std::vector<int> box(g.box().begin(), g.box().end());
  box.erase(box.begin() + axis);
  return SequenceGrid::from_function(box, g.scale(), [&](const MultiIndex& face) {
    std::vector<int> full(face.entries().begin(), face.entries().end());
    full.insert(full.begin() + axis, 0);
    return g.at(MultiIndex(std::move(full)));
  });
}

StabilityReport stability_probe(const SequenceGrid& small, const SequenceGrid& large, Exec exec) {
  if (small.dim() != large.dim() || small.scale() != large.scale())
    throw Error(ErrorKind::GridMismatch, "grids differ in dimension or scale");
  for (int j = 0; j < small.dim(); ++j)
    if (small.box()[static_cast<std::size_t>(j)] > large.box()[static_cast<std::size_t>(j)])
      throw Error(ErrorKind::GridMismatch, "the large grid does not contain the small box");
  for (std::size_t i = 0; i < small.size(); ++i) {
    const double a = small[i];
    const double b = large.at(small.layout().index(i));
    if (!(a == b))
      throw Error(ErrorKind::GridMismatch, "grids disagree at " + small.layout().index(i).to_string());
  }

  const auto ms = minorant_lp(small, exec);
  const auto ml = minorant_lp(large, exec);
  StabilityReport report;
  report.diffs.resize(small.size());
  for (std::size_t i = 0; i < small.size(); ++i) {
    const double x = ms.minorant[i];
    const double y = ml.minorant.at(small.layout().index(i));
    const double diff = (x == y) ? 0.0 : std::abs(x - y);
    report.diffs[i] = diff;
    report.max_diff = std::max(report.max_diff, diff);
    if (diff > kStabilityTol) report.unstable.push_back(i);
  }
  return report;
}

}  // namespace lcmin
