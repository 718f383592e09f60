#include "lcmin/assoc.hpp"

#include <algorithm>
#include <cmath>

namespace lcmin {

namespace {

void require_weight(const SequenceGrid& g) {
  const auto violations = validate_grid(g);
  if (!violations.empty()) throw Error(ErrorKind::Validation, violations.front().message);
  if (!g.is_normalized()) throw Error(ErrorKind::NotNormalized, "expected M_0 = 1");
}

SequenceGrid as_log(const SequenceGrid& g) { return g.scale() == Scale::log ? g : to_log(g); }

bool near_max(double v, double best) { return v >= best - 1e-12 * std::max(1.0, std::abs(best)); }

/// A(k) on a LOG grid, no checks.
double trace_unchecked(const SequenceGrid& lg, std::span<const double> k) {
  double best = -kInf;
  for (std::size_t i = 0; i < lg.size(); ++i) {
    const double a = lg[i];
    if (!std::isfinite(a)) continue;
    auto alpha = lg.layout().coords(i);
    double v = 0.0 - a;
    for (std::size_t j = 0; j < k.size(); ++j) v += k[j] * alpha[j];
    best = std::max(best, v);
  }
  return best;
}

}  // namespace

OmegaValue omega(const SequenceGrid& g, std::span<const double> t) {
  require_weight(g);
  const auto d = static_cast<std::size_t>(g.dim());
  if (t.size() != d) throw Error(ErrorKind::DimensionMismatch, "t dimension != grid dimension");

  std::vector<double> log_t(d);
  for (std::size_t j = 0; j < d; ++j) log_t[j] = std::log(std::abs(t[j]));

  std::vector<double> terms(g.size(), -kInf);
  double best = -kInf;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double a = g.log_value(i);
    if (!std::isfinite(a)) continue;
    auto alpha = g.layout().coords(i);
    double v = 0.0 - a;
    bool admissible = true;
    for (std::size_t j = 0; j < d && admissible; ++j) {
      if (alpha[j] == 0) continue;  // 0^0 = 1
      if (t[j] == 0.0) admissible = false;
      else v += alpha[j] * log_t[j];
    }
    if (!admissible) continue;
    terms[i] = v;
    best = std::max(best, v);
  }

  OmegaValue out;
  out.value = best;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (terms[i] != -kInf && near_max(terms[i], best)) out.argmax.push_back(i);
  out.sup_on_boundary = std::all_of(out.argmax.begin(), out.argmax.end(),
                                    [&](std::size_t i) { return g.layout().on_outer_face(i); });
  return out;
}

double trace_function(const SequenceGrid& g, std::span<const double> k) {
  require_weight(g);
  if (k.size() != static_cast<std::size_t>(g.dim()))
    throw Error(ErrorKind::DimensionMismatch, "k dimension != grid dimension");
  return trace_unchecked(as_log(g), k);
}

LogConvexMinorant log_convex_minorant(const SequenceGrid& g, Exec exec) {
  require_weight(g);
  auto env = minorant_lp(as_log(g), exec);
  SequenceGrid m = g.scale() == Scale::exp ? to_exp(env.minorant) : env.minorant;
  return {std::move(m), std::move(env)};
}

// ------------------------------------------------------------------- Q3

std::size_t SGridSpec::total_points() const {
  std::size_t n = 1;
  for (auto p : points) n *= p;
  return n;
}

SGridSpec default_s_grid(const SequenceGrid& g) {
  const auto k = default_k_grid(g);
  const auto d = static_cast<std::size_t>(g.dim());
  const std::size_t per_axis = d <= 2 ? 200 : d == 3 ? 50 : 20;
  SGridSpec spec{k.lo, k.hi, std::vector<std::size_t>(d, per_axis)};
  for (std::size_t j = 0; j < d; ++j) {
    if (spec.log_lo[j] == spec.log_hi[j]) {
      spec.log_lo[j] -= 1.0;
      spec.log_hi[j] += 1.0;
    }
  }
  return spec;
}

Q3Table::Q3Table(const SequenceGrid& g, SGridSpec spec, Exec exec)
    : spec_(std::move(spec)), dim_(static_cast<std::size_t>(g.dim())), layout_(std::vector<int>(g.box().begin(), g.box().end())) {
  require_weight(g);
  if (spec_.log_lo.size() != dim_ || spec_.log_hi.size() != dim_ || spec_.points.size() != dim_)
    throw Error(ErrorKind::EmptySGrid, "s-grid needs one range per axis");
  for (std::size_t j = 0; j < dim_; ++j) {
    if (spec_.points[j] == 0 || !std::isfinite(spec_.log_lo[j]) || !std::isfinite(spec_.log_hi[j]) ||
        spec_.log_lo[j] > spec_.log_hi[j])
      throw Error(ErrorKind::EmptySGrid, "s-grid axis " + std::to_string(j) + " is empty");
  }

  const std::size_t total = spec_.total_points();
  log_s_.resize(total * dim_);
  for (std::size_t s = 0; s < total; ++s) {
    std::size_t rest = s;
    for (std::size_t j = dim_; j-- > 0;) {
      const std::size_t n = spec_.points[j];
      const std::size_t idx = rest % n;
      rest /= n;
      const double step = n > 1 ? (spec_.log_hi[j] - spec_.log_lo[j]) / static_cast<double>(n - 1) : 0.0;
      log_s_[s * dim_ + j] = spec_.log_lo[j] + static_cast<double>(idx) * step;
    }
  }

  // omega(s) = A(log s) for s in the open orthant.
  const SequenceGrid lg = as_log(g);
  omega_.resize(total);
  for_each_index(total, exec, [&](std::size_t s) {
    omega_[s] = trace_unchecked(lg, std::span<const double>(log_s_.data() + s * dim_, dim_));
  });
}

Q3Value Q3Table::at_flat(std::span<const int> alpha) const {
  std::size_t best = 0;
  double best_value = -kInf;
  for (std::size_t s = 0; s < omega_.size(); ++s) {
    double v = 0.0 - omega_[s];
    for (std::size_t j = 0; j < dim_; ++j) v += alpha[j] * log_s_[s * dim_ + j];
    if (v > best_value) {
      best_value = v;
      best = s;
    }
  }
  Q3Value out;
  out.log_value = best_value;
  out.best_log_s.assign(log_s_.begin() + static_cast<std::ptrdiff_t>(best * dim_),
                        log_s_.begin() + static_cast<std::ptrdiff_t>((best + 1) * dim_));
  return out;
}

Q3Value Q3Table::at(const MultiIndex& alpha) const {
  if (!layout_.contains(alpha)) throw Error(ErrorKind::OutOfRange, "alpha outside the box: " + alpha.to_string());
  return at_flat(alpha.entries());
}

std::vector<double> Q3Table::all(Exec exec) const {
  std::vector<double> out(layout_.size());
  for_each_index(layout_.size(), exec, [&](std::size_t i) { out[i] = at_flat(layout_.coords(i)).log_value; });
  return out;
}

Q3Value q3_supremum(const SequenceGrid& g, const MultiIndex& alpha, const SGridSpec& spec, Exec exec) {
  return Q3Table(g, spec, exec).at(alpha);
}

// ------------------------------------------------------------ convexity

LogConvexityReport check_log_convexity(const SequenceGrid& g, const Q3Options& opts, Exec exec) {
  require_weight(g);
  const SequenceGrid lg = as_log(g);
  const auto& layout = lg.layout();
  const int d = lg.dim();
  LogConvexityReport report;

  for (std::size_t i = 0; i < lg.size() && report.coordinatewise_ok; ++i) {
    for (int j = 0; j < d; ++j) {
      auto lo = layout.shift(i, j, -1);
      auto hi = layout.shift(i, j, 1);
      if (!lo || !hi) continue;
      if (2.0 * lg[i] > lg[*lo] + lg[*hi] + 1e-9) {
        report.coordinatewise_ok = false;
        report.coordinatewise_violation.emplace(layout.index(i), j);
        break;
      }
    }
  }

  const auto env = minorant_lp(lg, exec);
  report.log_minorant.assign(env.minorant.values().begin(), env.minorant.values().end());
  std::vector<bool> affected(lg.size(), false);
  for (auto i : env.boundary_affected) affected[i] = true;
  for (std::size_t i = 0; i < lg.size(); ++i) {
    const double a = lg[i];
    const double c = env.minorant[i];
    const double gap = (a == c) ? 0.0 : a - c;
    if (gap > report.max_gap) {
      report.max_gap = gap;
      report.max_gap_at = layout.index(i);
    }
    if (gap > kGapTol * std::max(1.0, std::abs(c))) {
      report.globally_convex = false;
      if (affected[i]) report.boundary_caveat = true;
    }
  }

  const Q3Table table(lg, opts.s_grid ? *opts.s_grid : default_s_grid(lg), exec);
  report.log_q3 = table.all(exec);
  const double slack = std::log1p(opts.rel_tol);
  for (std::size_t i = 0; i < lg.size(); ++i) {
    if (layout.on_outer_face(i) || !std::isfinite(lg[i])) continue;
    if (report.log_q3[i] < lg[i] - slack) {
      report.q3_holds = false;
      report.q3_failure = layout.index(i);
      break;
    }
  }
  return report;
}

}  // namespace lcmin
