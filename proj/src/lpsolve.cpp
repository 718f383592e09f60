#include "lcmin/lpsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "lcmin/error.hpp"

namespace lcmin::lp {

DenseLP::DenseLP(std::size_t num_vars)
    : num_vars_(num_vars), objective_(num_vars, 0.0), bounds_(num_vars, Bound::free) {
  if (num_vars == 0) throw Error(ErrorKind::InvalidArgument, "LP needs at least one variable");
  if (num_vars > 64) throw Error(ErrorKind::InvalidArgument, "LP supports at most 64 variables");
}

void DenseLP::set_objective(std::span<const double> c) {
  if (c.size() != num_vars_) throw Error(ErrorKind::DimensionMismatch, "objective length != variable count");
  for (double v : c)
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "objective entries must be finite");
  objective_.assign(c.begin(), c.end());
}

void DenseLP::set_bound(std::size_t var, Bound b) {
  if (var >= num_vars_) throw Error(ErrorKind::OutOfRange, "variable index out of range");
  bounds_[var] = b;
}

void DenseLP::add_row(std::span<const double> coeffs, double rhs) {
  if (coeffs.size() != num_vars_) throw Error(ErrorKind::DimensionMismatch, "row length != variable count");
  for (double v : coeffs)
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "constraint coefficients must be finite");
  if (std::isnan(rhs) || rhs == -std::numeric_limits<double>::infinity())
    throw Error(ErrorKind::InvalidArgument, "right-hand side must be finite or +inf");
  rows_.insert(rows_.end(), coeffs.begin(), coeffs.end());
  rhs_.push_back(rhs);
}

namespace {

constexpr double kPivotFloor = 1e-13;
constexpr double kRatioPivotTol = 1e-11;

/// LU factorization with partial pivoting of a row-equilibrated square matrix.
class Factor {
 public:
  explicit Factor(std::size_t m) : m_(m), lu_(m * m), perm_(m), row_scale_(m) {}

  /// Throws NumericBreakdown when a pivot stays below kPivotFloor after
  /// equilibration.
  void factor(std::vector<double> mat) {
    for (std::size_t i = 0; i < m_; ++i) {
      double mx = 0.0;
      for (std::size_t j = 0; j < m_; ++j) mx = std::max(mx, std::abs(mat[i * m_ + j]));
      row_scale_[i] = mx > 0.0 ? 1.0 / mx : 1.0;
      for (std::size_t j = 0; j < m_; ++j) mat[i * m_ + j] *= row_scale_[i];
    }
    lu_ = std::move(mat);
    for (std::size_t i = 0; i < m_; ++i) perm_[i] = i;
    for (std::size_t k = 0; k < m_; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i < m_; ++i)
        if (std::abs(lu_[i * m_ + k]) > std::abs(lu_[p * m_ + k])) p = i;
      if (std::abs(lu_[p * m_ + k]) < kPivotFloor)
        throw Error(ErrorKind::NumericBreakdown, "basis matrix is numerically singular");
      if (p != k) {
        for (std::size_t j = 0; j < m_; ++j) std::swap(lu_[k * m_ + j], lu_[p * m_ + j]);
        std::swap(perm_[k], perm_[p]);
      }
      const double piv = lu_[k * m_ + k];
      for (std::size_t i = k + 1; i < m_; ++i) {
        const double f = lu_[i * m_ + k] / piv;
        lu_[i * m_ + k] = f;
        for (std::size_t j = k + 1; j < m_; ++j) lu_[i * m_ + j] -= f * lu_[k * m_ + j];
      }
    }
  }

  /// Solves B x = r.
  std::vector<double> solve(std::span<const double> r) const {
    std::vector<double> x(m_);
    for (std::size_t i = 0; i < m_; ++i) x[i] = r[perm_[i]] * row_scale_[perm_[i]];
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < i; ++j) x[i] -= lu_[i * m_ + j] * x[j];
    for (std::size_t i = m_; i-- > 0;) {
      for (std::size_t j = i + 1; j < m_; ++j) x[i] -= lu_[i * m_ + j] * x[j];
      x[i] /= lu_[i * m_ + i];
    }
    return x;
  }

  /// Solves B^T z = r.
  std::vector<double> solve_transposed(std::span<const double> r) const {
    // (D B) = P^T L U  =>  B^T z = r  <=>  U^T L^T P (D^{-1} z) = r.
    std::vector<double> w(r.begin(), r.end());
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < i; ++j) w[i] -= lu_[j * m_ + i] * w[j];
      w[i] /= lu_[i * m_ + i];
    }
    for (std::size_t i = m_; i-- > 0;)
      for (std::size_t j = i + 1; j < m_; ++j) w[i] -= lu_[j * m_ + i] * w[j];
    std::vector<double> z(m_);
    for (std::size_t i = 0; i < m_; ++i) z[perm_[i]] = w[i] * row_scale_[perm_[i]];
    return z;
  }

 private:
  std::size_t m_;
  std::vector<double> lu_;
  std::vector<std::size_t> perm_;
  std::vector<double> row_scale_;
};

enum class RunStatus { optimal, unbounded, infeasible };

/// Two-phase revised simplex on the dual standard form
///   min <cost, v>  s.t.  D v = rhs,  v >= 0
/// whose columns are: one per kept primal row (the row itself, cost b_i),
/// one surplus column -e_j per nonnegative primal variable, and one
/// artificial column e_j per equation (phase one only).
class DualStandardForm {
 public:
  DualStandardForm(const DenseLP& lp, std::span<const double> objective) : lp_(lp), m_(lp.num_vars()) {
    for (std::size_t i = 0; i < lp.num_rows(); ++i)
      if (std::isfinite(lp.rhs(i))) kept_.push_back(i);
    for (std::size_t j = 0; j < m_; ++j)
      if (lp.bound(j) == Bound::nonneg) surplus_.push_back(j);
    sign_.assign(m_, 1.0);
    rhs_.assign(objective.begin(), objective.end());
    for (std::size_t j = 0; j < m_; ++j) {
      if (rhs_[j] < 0.0) {
        sign_[j] = -1.0;
        rhs_[j] = -rhs_[j];
      }
    }
    double max_b = 1.0, max_a = 1.0, max_c = 1.0;
    for (std::size_t i : kept_) {
      max_b = std::max(max_b, std::abs(lp.rhs(i)));
      for (double a : lp.row(i)) max_a = std::max(max_a, std::abs(a));
    }
    for (double c : objective) max_c = std::max(max_c, std::abs(c));
    cost_tol_ = 1e-13 * max_b * max_a;
    phase1_cost_tol_ = 1e-13 * max_a;
    infeasibility_tol_ = 1e-9 * max_c;
  }

  std::size_t num_rows_vars() const { return kept_.size(); }
  std::size_t first_artificial() const { return kept_.size() + surplus_.size(); }
  std::size_t num_columns() const { return first_artificial() + m_; }
  bool is_artificial(std::size_t v) const { return v >= first_artificial(); }

  void column(std::size_t v, std::vector<double>& out) const {
    out.assign(m_, 0.0);
    if (v < kept_.size()) {
      auto r = lp_.row(kept_[v]);
      for (std::size_t j = 0; j < m_; ++j) out[j] = sign_[j] * r[j];
    } else if (v < first_artificial()) {
      const std::size_t j = surplus_[v - kept_.size()];
      out[j] = -sign_[j];
    } else {
      out[v - first_artificial()] = 1.0;
    }
  }

  double phase2_cost(std::size_t v) const { return v < kept_.size() ? lp_.rhs(kept_[v]) : 0.0; }

  /// Reduced cost of column v against multipliers pi (already sign-adjusted).
  double reduced_cost(std::size_t v, double cost, std::span<const double> pi_signed) const {
    if (v < kept_.size()) {
      auto r = lp_.row(kept_[v]);
      double dot = 0.0;
      for (std::size_t j = 0; j < m_; ++j) dot += r[j] * pi_signed[j];
      return cost - dot;
    }
    if (v < first_artificial()) {
      const std::size_t j = surplus_[v - kept_.size()];
      return cost + pi_signed[j];
    }
    return cost - pi_signed[v - first_artificial()] * sign_[v - first_artificial()];
  }

  struct Outcome {
    RunStatus status;
    std::vector<std::size_t> basis;
    std::vector<double> x_basic;
    std::vector<double> pi;  // multipliers of the (sign-flipped) equations
    double objective = 0.0;
  };

  /// Runs both phases against right-hand side `rhs` (must be >= 0).
  Outcome run(const std::vector<double>& rhs) const {
    std::vector<std::size_t> basis(m_);
    for (std::size_t j = 0; j < m_; ++j) basis[j] = first_artificial() + j;

    auto phase1_cost = [&](std::size_t v) { return is_artificial(v) ? 1.0 : 0.0; };
    auto phase2_cost_fn = [&](std::size_t v) { return phase2_cost(v); };

    Outcome out;
    auto p1 = iterate(basis, rhs, phase1_cost, /*allow_artificial_entry=*/true, phase1_cost_tol_);
    if (p1.status != RunStatus::optimal) throw Error(ErrorKind::NumericBreakdown, "phase one did not terminate");
    if (p1.objective > infeasibility_tol_) {
      out.status = RunStatus::infeasible;
      return out;
    }
    drive_out_artificials(basis);
    return iterate(basis, rhs, phase2_cost_fn, /*allow_artificial_entry=*/false, cost_tol_);
  }

 private:
  template <class CostFn>
  Outcome iterate(std::vector<std::size_t>& basis, const std::vector<double>& rhs, CostFn&& cost,
                  bool allow_artificial_entry, double cost_tol) const {
    const std::size_t n = num_columns();
    const std::size_t max_iter = 100000 + 50 * n;
    std::vector<char> is_basic(n, 0);
    for (std::size_t v : basis) is_basic[v] = 1;

    Factor fac(m_);
    std::vector<double> bmat(m_ * m_), col, cb(m_), pi_signed(m_);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
      for (std::size_t k = 0; k < m_; ++k) {
        column(basis[k], col);
        for (std::size_t j = 0; j < m_; ++j) bmat[j * m_ + k] = col[j];
        cb[k] = cost(basis[k]);
      }
      fac.factor(bmat);
      std::vector<double> xb = fac.solve(rhs);
      std::vector<double> pi = fac.solve_transposed(cb);
      for (std::size_t j = 0; j < m_; ++j) pi_signed[j] = pi[j] * sign_[j];

      // Bland: lowest-index column with negative reduced cost enters.
      std::optional<std::size_t> entering;
      for (std::size_t v = 0; v < n; ++v) {
        if (is_basic[v]) continue;
        if (is_artificial(v) && !allow_artificial_entry) continue;
        if (reduced_cost(v, cost(v), pi_signed) < -cost_tol) {
          entering = v;
          break;
        }
      }
      if (!entering) {
        Outcome out;
        out.status = RunStatus::optimal;
        out.objective = 0.0;
        for (std::size_t k = 0; k < m_; ++k) out.objective += cb[k] * xb[k];
        out.basis = basis;
        out.x_basic = std::move(xb);
        out.pi = std::move(pi);
        return out;
      }

      column(*entering, col);
      std::vector<double> u = fac.solve(col);
      std::optional<std::size_t> leave;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < m_; ++k) {
        if (u[k] <= kRatioPivotTol) continue;
        const double ratio = std::max(xb[k], 0.0) / u[k];
        const double tie = 1e-12 * (1.0 + std::abs(best));
        if (!leave || ratio < best - tie) {
          best = ratio;
          leave = k;
        } else if (ratio <= best + tie && basis[k] < basis[*leave]) {
          leave = k;
        }
      }
      if (!leave) {
        Outcome out;
        out.status = RunStatus::unbounded;
        return out;
      }
      is_basic[basis[*leave]] = 0;
      basis[*leave] = *entering;
      is_basic[*entering] = 1;
    }
    throw Error(ErrorKind::NumericBreakdown, "simplex iteration limit reached");
  }

  /// Pivots basic artificials (all at level zero after a feasible phase one)
  /// out in favour of real columns; an artificial that cannot leave marks a
  /// redundant equation and stays basic at zero.
  void drive_out_artificials(std::vector<std::size_t>& basis) const {
    Factor fac(m_);
    std::vector<double> bmat(m_ * m_), col, e(m_);
    for (std::size_t k = 0; k < m_; ++k) {
      if (!is_artificial(basis[k])) continue;
      for (std::size_t c = 0; c < m_; ++c) {
        column(basis[c], col);
        for (std::size_t j = 0; j < m_; ++j) bmat[j * m_ + c] = col[j];
      }
      fac.factor(bmat);
      std::fill(e.begin(), e.end(), 0.0);
      e[k] = 1.0;
      const std::vector<double> row_k = fac.solve_transposed(e);  // e_k^T B^{-1}
      for (std::size_t v = 0; v < first_artificial(); ++v) {
        if (std::find(basis.begin(), basis.end(), v) != basis.end()) continue;
        column(v, col);
        double dot = 0.0;
        for (std::size_t j = 0; j < m_; ++j) dot += row_k[j] * col[j];
        if (std::abs(dot) > 1e-9) {
          basis[k] = v;
          break;
        }
      }
    }
  }

 public:
  const std::vector<double>& rhs() const { return rhs_; }
  const std::vector<double>& sign() const { return sign_; }
  const std::vector<std::size_t>& kept() const { return kept_; }

 private:
  const DenseLP& lp_;
  std::size_t m_;
  std::vector<std::size_t> kept_;
  std::vector<std::size_t> surplus_;
  std::vector<double> sign_;
  std::vector<double> rhs_;
  double cost_tol_ = 0.0;
  double phase1_cost_tol_ = 0.0;
  double infeasibility_tol_ = 0.0;
};

}  // namespace

Solution solve(const DenseLP& lp) { return solve(lp, lp.objective()); }

Solution solve(const DenseLP& lp, std::span<const double> objective) {
  if (objective.size() != lp.num_vars())
    throw Error(ErrorKind::DimensionMismatch, "objective length != variable count");
  for (double v : objective)
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "objective entries must be finite");

  DualStandardForm dual(lp, objective);
  const auto outcome = dual.run(dual.rhs());

  Solution sol;
  if (outcome.status == RunStatus::unbounded) {
    sol.status = Status::infeasible;
    return sol;
  }
  if (outcome.status == RunStatus::infeasible) {
    // Dual infeasible: the primal is unbounded if it is feasible at all.
    // Feasibility is decided by the dual of "maximize 0", which is always
    // feasible and is bounded exactly when the primal is feasible.
    const std::vector<double> zero(lp.num_vars(), 0.0);
    DualStandardForm feas(lp, zero);
    const auto f = feas.run(feas.rhs());
    sol.status = f.status == RunStatus::optimal ? Status::unbounded : Status::infeasible;
    return sol;
  }

  sol.status = Status::optimal;
  sol.optimum = outcome.objective;
  sol.point.resize(lp.num_vars());
  for (std::size_t j = 0; j < lp.num_vars(); ++j) sol.point[j] = dual.sign()[j] * outcome.pi[j];
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    const double b = lp.rhs(i);
    if (!std::isfinite(b)) continue;
    double lhs = 0.0;
    auto r = lp.row(i);
    for (std::size_t j = 0; j < lp.num_vars(); ++j) lhs += r[j] * sol.point[j];
    if (std::abs(lhs - b) <= kFeasTol * std::max(1.0, std::abs(b))) sol.active_rows.push_back(i);
  }
  return sol;
}

// ------------------------------------------------------------------- oracle

namespace {

/// Barycentric weights of `target` w.r.t. the subset, if the subset is
/// affinely independent and its affine hull contains the target.
std::optional<std::vector<double>> barycentric(std::span<const WeightedPoint> points,
                                               std::span<const std::size_t> subset,
                                               std::span<const double> target) {
  const std::size_t d = target.size();
  const std::size_t rows = d + 1;
  const std::size_t s = subset.size();
  // Augmented (d+1) x (s+1) system: [x_i; 1] lambda = [target; 1].
  std::vector<double> a(rows * (s + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < s; ++c) a[r * (s + 1) + c] = r < d ? points[subset[c]].x[r] : 1.0;
    a[r * (s + 1) + s] = r < d ? target[r] : 1.0;
  }
  for (std::size_t c = 0; c < s; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < rows; ++r)
      if (std::abs(a[r * (s + 1) + c]) > std::abs(a[p * (s + 1) + c])) p = r;
    if (std::abs(a[p * (s + 1) + c]) < 1e-10) return std::nullopt;
    if (p != c)
      for (std::size_t k = 0; k <= s; ++k) std::swap(a[c * (s + 1) + k], a[p * (s + 1) + k]);
    for (std::size_t r = c + 1; r < rows; ++r) {
      const double f = a[r * (s + 1) + c] / a[c * (s + 1) + c];
      for (std::size_t k = c; k <= s; ++k) a[r * (s + 1) + k] -= f * a[c * (s + 1) + k];
    }
  }
  for (std::size_t r = s; r < rows; ++r)
    if (std::abs(a[r * (s + 1) + s]) > 1e-9) return std::nullopt;
  std::vector<double> lambda(s);
  for (std::size_t c = s; c-- > 0;) {
    double v = a[c * (s + 1) + s];
    for (std::size_t k = c + 1; k < s; ++k) v -= a[c * (s + 1) + k] * lambda[k];
    lambda[c] = v / a[c * (s + 1) + c];
  }
  return lambda;
}

}  // namespace

double brute_force_envelope(std::span<const WeightedPoint> points, std::span<const double> target) {
  const std::size_t d = target.size();
  std::vector<WeightedPoint> finite;
  for (const auto& p : points) {
    if (p.x.size() != d) throw Error(ErrorKind::DimensionMismatch, "point dimension != target dimension");
    if (std::isfinite(p.value)) finite.push_back(p);
  }
  const std::size_t n = finite.size();

  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  std::vector<std::size_t> subset;
  for (std::size_t s = 1; s <= std::min(d + 1, n); ++s) {
    subset.resize(s);
    for (std::size_t k = 0; k < s; ++k) subset[k] = k;
    while (true) {
      if (auto lambda = barycentric(finite, subset, target)) {
        bool convex = true;
        double value = 0.0;
        for (std::size_t k = 0; k < s; ++k) {
          if ((*lambda)[k] < -1e-12) {
            convex = false;
            break;
          }
          value += (*lambda)[k] * finite[subset[k]].value;
        }
        if (convex) {
          found = true;
          best = std::min(best, value);
        }
      }
      // Next combination in lexicographic order.
      std::size_t k = s;
      while (k > 0 && subset[k - 1] == n - s + (k - 1)) --k;
      if (k == 0) break;
      ++subset[k - 1];
      for (std::size_t j = k; j < s; ++j) subset[j] = subset[j - 1] + 1;
    }
  }
  if (!found) throw Error(ErrorKind::TargetOutsideHull, "target is outside the convex hull of the finite points");
  return best;
}

}  // namespace lcmin::lp
