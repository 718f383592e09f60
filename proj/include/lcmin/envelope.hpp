/**
 * @file envelope.hpp
 * @brief Convex minorant of a sequence on N_0^d through supporting hyperplanes.
 *
 * For a slope k in R^d the best intercept of an affine minorant with that
 * slope is h_k = min_beta (a_beta - <k, beta>), and the convex minorant is
 * a^c_alpha = sup_k (<k, alpha> + h_k). The supremum over all slopes is
 * computed exactly per lattice point as the linear program
 *
 *     maximize <k, alpha> + c   s.t.   <k, beta> + c <= a_beta  for finite a_beta,
 *
 * whose optimal (k, c) is stored as the certificate. A sampled-slope version
 * (`dual_value`) gives lower bounds and is kept for cross-checks.
 *
 * Index lists in this module are flat indices into the grid's BoxLayout.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lcmin/core.hpp"
#include "lcmin/exec.hpp"

namespace lcmin {

struct SupportPlane {
  std::vector<double> k;
  double h = 0.0;
  /// Points where a_beta - <k, beta> attains h.
  std::vector<std::size_t> touching;
};

/// Relative tolerance for membership in a touching set.
inline constexpr double kTouchTol = 1e-12;

/// h_k = min over finite entries of a_beta - <k, beta>. Throws AllInfinite
/// when no entry is finite.
SupportPlane h_of_k(const SequenceGrid& g, std::span<const double> k);

/// Axis-aligned uniform slope grid: k_j in {lo_j, lo_j + step, ..., <= hi_j}.
struct KGridSpec {
  std::vector<double> lo;
  std::vector<double> hi;
  double step = 0.25;

  std::size_t points_on_axis(std::size_t axis) const;
  std::size_t total_points() const;
};

/// Per axis, the range of the forward differences a_{alpha+e_j} - a_alpha
/// over the box. Every supporting slope of the one-dimensional hull along an
/// axis lies in it.
KGridSpec default_k_grid(const SequenceGrid& g, double step = 0.25);

struct DualValue {
  double value = 0.0;
  std::vector<double> best_k;
  KGridSpec spec;
};

/// max over the sampled slopes of <k, x> + h_k: a lower bound for the convex
/// minorant at x. Throws EmptyKGrid on a degenerate spec and OutOfRange when
/// x leaves the box.
DualValue dual_value(const SequenceGrid& g, std::span<const double> x, const KGridSpec& spec,
                     Exec exec = Exec::serial);

struct MinorantResult {
  /// LOG scale, a^c_alpha.
  SequenceGrid minorant;
  /// Empty where the minorant is +inf (alpha outside the hull of the finite
  /// points).
  std::vector<std::optional<SupportPlane>> certificates;
  /// a^c_alpha = a_alpha.
  std::vector<std::size_t> contact_set;
  /// Certificates touching the outer face of the box; values there are upper
  /// bounds for the untruncated sequence.
  std::vector<std::size_t> boundary_affected;
};

/// Exact convex minorant, one LP per lattice point. Throws ScaleMismatch on
/// EXP grids and Validation on grids that fail validate_grid.
MinorantResult minorant_lp(const SequenceGrid& g, Exec exec = Exec::serial);

/// Minorant values from lp::brute_force_envelope (exponential; small grids).
std::vector<double> minorant_brute_force(const SequenceGrid& g, Exec exec = Exec::serial);

/// dual_value at every lattice point of the box.
std::vector<DualValue> minorant_dual_grid(const SequenceGrid& g, const KGridSpec& spec, Exec exec = Exec::serial);

/// The (d-1)-dimensional face {alpha_axis = 0}. Throws DimensionMismatch when
/// d < 2.
SequenceGrid boundary_restriction(const SequenceGrid& g, int axis);

struct StabilityReport {
  /// |a^c_small - a^c_large| on the small box.
  std::vector<double> diffs;
  std::vector<std::size_t> unstable;
  double max_diff = 0.0;
};

inline constexpr double kStabilityTol = 1e-9;

/// Compares minorants on a box and an enlargement of it. Throws GridMismatch
/// when the grids disagree on the common box.
StabilityReport stability_probe(const SequenceGrid& small, const SequenceGrid& large, Exec exec = Exec::serial);

}  // namespace lcmin
