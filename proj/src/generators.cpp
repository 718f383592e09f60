#include "lcmin/generators.hpp"

#include <algorithm>
#include <cmath>

#include "lcmin/matrices.hpp"

namespace lcmin::gen {

namespace {

SequenceGrid in_scale(const SequenceGrid& log_grid, Scale scale) {
  if (scale == Scale::log) return log_grid;
  for (double a : log_grid.values())
    if (std::isfinite(a) && !std::isfinite(std::exp(a)))
      throw Error(ErrorKind::InvalidArgument, "EXP entries overflow a double; use the log scale");
  return to_exp(log_grid);
}

}  // namespace

SequenceGrid paper_notconvex(std::vector<int> box, Scale scale) {
  if (box.size() != 2) throw Error(ErrorKind::DimensionMismatch, "paper-notconvex is two-dimensional");
  auto g = SequenceGrid::from_function(std::move(box), Scale::log, [](const MultiIndex& a) {
    const double x = a[0] + 1.0, y = a[1] + 1.0;
    return x * x * y * y - 1.0;
  });
  return in_scale(g, scale);
}

SequenceGrid factorial(int n, Scale scale) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "n must be >= 0");
  auto g = SequenceGrid::from_function({n}, Scale::log, [](const MultiIndex& a) { return std::lgamma(a[0] + 1.0); });
  if (scale == Scale::log) return g;
  // Exact products rather than exp(lgamma).
  return SequenceGrid::from_function({n}, Scale::exp, [](const MultiIndex& a) {
    double f = 1.0;
    for (int p = 2; p <= a[0]; ++p) f *= p;
    return f;
  });
}

SequenceGrid l37r_counterexample(std::vector<int> box, Scale scale) {
  return in_scale(counterexample_grid(std::move(box)), scale);
}

SequenceGrid random_lifted(std::vector<int> box, SplitMix64& rng, Scale scale) {
  BoxLayout layout(box);
  std::vector<double> values(layout.size());
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const double u = rng.uniform();
    const double o = layout.order(i);
    values[i] = i == 0 ? 0.0 : u + o * o;
  }
  return in_scale(SequenceGrid(std::move(box), Scale::log, std::move(values)), scale);
}

SequenceGrid random_values(std::vector<int> box, SplitMix64& rng, double lo, double hi, double inf_prob) {
  BoxLayout layout(box);
  std::vector<double> values(layout.size());
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const double v = rng.uniform(lo, hi);
    const bool infinite = i > 0 && inf_prob > 0.0 && rng.uniform() < inf_prob;
    values[i] = infinite ? kInf : v;
  }
  return SequenceGrid(std::move(box), Scale::log, std::move(values));
}

SequenceGrid random_convex(std::vector<int> box, SplitMix64& rng, int terms, int pieces) {
  const std::size_t d = box.size();
  struct Affine {
    std::vector<double> k;
    double c;
  };
  std::vector<std::vector<Affine>> maxima(static_cast<std::size_t>(terms));
  for (auto& term : maxima) {
    for (int p = 0; p < pieces; ++p) {
      Affine f{std::vector<double>(d), rng.uniform(-2.0, 2.0)};
      for (auto& k : f.k) k = rng.uniform(-3.0, 3.0);
      term.push_back(std::move(f));
    }
  }
  auto value = [&](const MultiIndex& a) {
    double s = 0.0;
    for (const auto& term : maxima) {
      double best = -kInf;
      for (const auto& f : term) {
        double v = f.c;
        for (std::size_t j = 0; j < d; ++j) v += f.k[j] * a[static_cast<int>(j)];
        best = std::max(best, v);
      }
      s += best;
    }
    for (std::size_t j = 0; j < d; ++j) s += 0.5 * a[static_cast<int>(j)] * a[static_cast<int>(j)];
    return s;
  };
  const double origin = value(MultiIndex::zero(static_cast<int>(d)));
  return SequenceGrid::from_function(std::move(box), Scale::log,
                                     [&](const MultiIndex& a) { return a.is_zero() ? 0.0 : value(a) - origin; });
}

}  // namespace lcmin::gen
