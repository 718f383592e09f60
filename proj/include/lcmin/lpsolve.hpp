/**
 * @file lpsolve.hpp
 * @brief Dense simplex for small linear programs with many inequality rows.
 *
 * Problems have the shape
 *
 *     maximize  <c, x>   subject to  A x <= b,  x_j free or x_j >= 0,
 *
 * with few variables (<= 64) and possibly very many rows. The solver works on
 * the dual, which in standard form has one equality per variable and one
 * column per row, so the basis stays (#vars x #vars) no matter how many rows
 * there are. Pivoting follows Bland's rule, which makes runs deterministic
 * and cycle-free. The primal point is recovered from the simplex multipliers
 * of the final dual basis.
 *
 * For the envelope problem the dual is exactly the barycentric formulation
 * min sum_b y_b a_b over y >= 0 with sum_b y_b (b, 1) = (alpha, 1).
 */
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lcmin/error.hpp"

namespace lcmin::lp {

enum class Bound { free, nonneg };

class DenseLP {
 public:
  explicit DenseLP(std::size_t num_vars);

  std::size_t num_vars() const { return num_vars_; }
  std::size_t num_rows() const { return rhs_.size(); }

  void set_objective(std::span<const double> c);
  void set_bound(std::size_t var, Bound b);
  /// Adds `<coeffs, x> <= rhs`. A +inf rhs is accepted and the row is dropped
  /// at solve time; coefficients must be finite.
  void add_row(std::span<const double> coeffs, double rhs);

  std::span<const double> objective() const { return objective_; }
  std::span<const double> row(std::size_t i) const { return {rows_.data() + i * num_vars_, num_vars_}; }
  double rhs(std::size_t i) const { return rhs_[i]; }
  Bound bound(std::size_t var) const { return bounds_[var]; }

 private:
  std::size_t num_vars_;
  std::vector<double> objective_;
  std::vector<double> rows_;
  std::vector<double> rhs_;
  std::vector<Bound> bounds_;
};

enum class Status { optimal, unbounded, infeasible };

struct Solution {
  Status status = Status::infeasible;
  double optimum = 0.0;
  std::vector<double> point;
  /// Row ids (in insertion order numbering) tight at `point`, ascending.
  std::vector<std::size_t> active_rows;
};

/// Tolerance for feasibility and activity checks on returned points.
inline constexpr double kFeasTol = 1e-9;

Solution solve(const DenseLP& lp);
/// Same constraints, different objective; avoids copying large row blocks
/// when many objectives share one constraint set.
Solution solve(const DenseLP& lp, std::span<const double> objective);

struct WeightedPoint {
  std::vector<double> x;
  double value;
};

/// Lower convex envelope of `points` at `target` by enumerating every subset
/// of at most d+1 affinely independent points whose convex hull contains the
/// target (Caratheodory). Exponential; meant as an oracle for <= 25 points.
/// Throws TargetOutsideHull when no subset contains the target.
double brute_force_envelope(std::span<const WeightedPoint> points, std::span<const double> target);

}  // namespace lcmin::lp
