/**
 * @file assoc.hpp
 * @brief Associated function, trace function, log-convex minorant and the
 *        log-convexity tests for weight sequences M_alpha.
 *
 * All functions accept a grid in either scale and work on a_alpha = log M_alpha;
 * grids must be validated and normalized (M_0 = 1). Conventions: 0^0 = 1,
 * log 0 = -inf, and for t with zero coordinates the supremum defining omega
 * runs over N^d_{0,t} = {alpha : alpha_j = 0 whenever t_j = 0}.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lcmin/core.hpp"
#include "lcmin/envelope.hpp"
#include "lcmin/exec.hpp"

namespace lcmin {

struct OmegaValue {
  double value = 0.0;
  /// Flat indices attaining the supremum.
  std::vector<std::size_t> argmax;
  /// Every maximizer lies on the outer face: the value is a lower bound for
  /// the untruncated sequence.
  bool sup_on_boundary = false;
};

/// omega_M(t) = sup_alpha log(|t^alpha| / M_alpha). Throws NotNormalized.
OmegaValue omega(const SequenceGrid& g, std::span<const double> t);

/// A(k) = sup_alpha (<k, alpha> - log M_alpha); equals omega(g, exp k).
double trace_function(const SequenceGrid& g, std::span<const double> k);

struct LogConvexMinorant {
  /// M^lc = exp(a^c), in the scale of the input grid.
  SequenceGrid minorant;
  /// The LP result on log M, with its certificates.
  MinorantResult envelope;
};

LogConvexMinorant log_convex_minorant(const SequenceGrid& g, Exec exec = Exec::serial);

/// Samples s log-uniformly: log s_j runs over points[j] equispaced values in
/// [log_lo[j], log_hi[j]].
struct SGridSpec {
  std::vector<double> log_lo;
  std::vector<double> log_hi;
  std::vector<std::size_t> points;

  std::size_t total_points() const;
};

/// Range from the extreme forward differences of log M (as for the slope
/// grid of the envelope); 200 points per axis for d <= 2, 50 for d = 3 and
/// 20 beyond.
SGridSpec default_s_grid(const SequenceGrid& g);

struct Q3Value {
  /// log sup_s s^alpha / exp omega(s)
  double log_value = 0.0;
  /// log s at the best sample.
  std::vector<double> best_log_s;
};

/// Precomputed omega over an s-grid; the q3 supremum at every alpha reuses it.
class Q3Table {
 public:
  Q3Table(const SequenceGrid& g, SGridSpec spec, Exec exec = Exec::serial);

  Q3Value at(const MultiIndex& alpha) const;
  /// log q3 for every lattice point of the grid's box.
  std::vector<double> all(Exec exec = Exec::serial) const;
  const SGridSpec& spec() const { return spec_; }

 private:
  Q3Value at_flat(std::span<const int> alpha) const;

  SGridSpec spec_;
  std::size_t dim_ = 0;
  BoxLayout layout_;
  std::vector<double> log_s_;  // total_points x dim
  std::vector<double> omega_;  // omega at each sample
};

/// sup over the sampled s of s^alpha / exp omega_M(s), in log space. Always
/// <= log M_alpha. Throws EmptySGrid on a degenerate spec.
Q3Value q3_supremum(const SequenceGrid& g, const MultiIndex& alpha, const SGridSpec& spec,
                    Exec exec = Exec::serial);

struct Q3Options {
  std::optional<SGridSpec> s_grid;
  /// q3 counts as reaching M_alpha when it is >= M_alpha / (1 + rel_tol).
  double rel_tol = 0.02;
};

struct LogConvexityReport {
  bool coordinatewise_ok = true;
  /// First (alpha, axis) with 2 a_alpha > a_{alpha-e_j} + a_{alpha+e_j} + 1e-9.
  std::optional<std::pair<MultiIndex, int>> coordinatewise_violation;
  bool globally_convex = true;
  /// max_alpha (a_alpha - a^c_alpha) over the whole box.
  double max_gap = 0.0;
  std::optional<MultiIndex> max_gap_at;
  bool q3_holds = true;
  std::optional<MultiIndex> q3_failure;
  /// Some index with a positive gap has a certificate touching the outer face.
  bool boundary_caveat = false;
  /// log M^lc and log q3 per lattice point.
  std::vector<double> log_minorant;
  std::vector<double> log_q3;
};

inline constexpr double kGapTol = 1e-9;

LogConvexityReport check_log_convexity(const SequenceGrid& g, const Q3Options& opts = {},
                                       Exec exec = Exec::serial);

}  // namespace lcmin
