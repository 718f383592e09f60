/**
 * @file core.hpp
 * @brief Multi-indices, the truncation box, and the sequence container.
 *
 * A sequence {a_alpha} indexed by N_0^d is represented by its restriction to
 * the box {alpha : 0 <= alpha_j <= N_j}. Values are IEEE doubles; +inf is a
 * legal entry (finitely many, never at the origin) and NaN marks an entry
 * that is missing from the box. Storage is dense and row-major with the last
 * axis varying fastest.
 *
 * Everything computed from a box is exact for that finite point set and an
 * upper bound for the infinite sequence: dropping lattice points can only
 * raise the convex minorant. `stability_probe` (envelope.hpp) is the way to
 * certify interior values against a larger box.
 */
#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lcmin/error.hpp"

namespace lcmin {

/// Extended reals are plain doubles: +inf is the native infinity, and -inf
/// only ever appears as log(0) in associated-function outputs.
using ExtReal = double;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_pos_inf(double x) { return x == kInf; }
inline bool is_missing(double x) { return x != x; }

class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}

  static MultiIndex zero(int dim) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(dim), 0)); }
  /// e_j, the j-th canonical basis vector (0-based axis).
  static MultiIndex unit(int dim, int axis);

  int dim() const { return static_cast<int>(entries_.size()); }
  /// |alpha| = alpha_1 + ... + alpha_d
  int order() const;
  int operator[](int axis) const { return entries_[static_cast<std::size_t>(axis)]; }
  std::span<const int> entries() const { return entries_; }
  bool is_zero() const { return order() == 0; }

  MultiIndex operator+(const MultiIndex& other) const;
  /// Throws OutOfRange when some entry would become negative.
  MultiIndex operator-(const MultiIndex& other) const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

  /// "(1,0,2)"
  std::string to_string() const;

 private:
  std::vector<int> entries_;
};

/// Row-major indexing of the box {0..N_1} x ... x {0..N_d}.
class BoxLayout {
 public:
  BoxLayout() = default;
  explicit BoxLayout(std::vector<int> box);

  int dim() const { return static_cast<int>(box_.size()); }
  std::span<const int> box() const { return box_; }
  std::size_t size() const { return size_; }

  bool contains(const MultiIndex& alpha) const;
  std::size_t flat(const MultiIndex& alpha) const;
  std::size_t flat(std::span<const int> coords) const;
  MultiIndex index(std::size_t flat) const;
  std::span<const int> coords(std::size_t flat) const {
    return {coords_.data() + flat * box_.size(), box_.size()};
  }
  int order(std::size_t flat) const { return orders_[flat]; }
  /// Flat index of alpha + delta*e_axis, if it stays inside the box.
  std::optional<std::size_t> shift(std::size_t flat, int axis, int delta) const;
  /// True when alpha_j = N_j for some j: the faces where truncation cuts the
  /// sequence off (the faces alpha_j = 0 belong to the orthant itself).
  bool on_outer_face(std::size_t flat) const;
  int max_order() const;

  friend bool operator==(const BoxLayout& a, const BoxLayout& b) { return a.box_ == b.box_; }

 private:
  std::vector<int> box_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
  std::vector<int> coords_;
  std::vector<int> orders_;
};

enum class Scale { log, exp };

std::string_view to_string(Scale scale);

/// Finite truncation of {a_alpha} (Scale::log) or {M_alpha} (Scale::exp).
/// Immutable once built.
class SequenceGrid {
 public:
  SequenceGrid() = default;
  /// `values` must have exactly one entry per box point (NaN = missing).
  SequenceGrid(std::vector<int> box, Scale scale, std::vector<double> values);

  template <class Fn>
  static SequenceGrid from_function(std::vector<int> box, Scale scale, Fn&& fn) {
    BoxLayout layout(box);
    std::vector<double> values(layout.size());
    for (std::size_t i = 0; i < layout.size(); ++i) values[i] = fn(layout.index(i));
    return SequenceGrid(std::move(box), scale, std::move(values));
  }

  int dim() const { return layout_.dim(); }
  std::span<const int> box() const { return layout_.box(); }
  Scale scale() const { return scale_; }
  std::size_t size() const { return layout_.size(); }
  const BoxLayout& layout() const { return layout_; }

  double operator[](std::size_t flat) const { return values_[flat]; }
  double at(const MultiIndex& alpha) const { return values_[layout_.flat(alpha)]; }
  std::span<const double> values() const { return values_; }

  /// a_alpha, whatever the stored scale (log of M_alpha for Scale::exp).
  double log_value(std::size_t flat) const;
  /// Normalized: M_0 = 1, equivalently a_0 = 0.
  bool is_normalized(double tol = 1e-12) const;

  friend bool operator==(const SequenceGrid& a, const SequenceGrid& b);

 private:
  BoxLayout layout_;
  Scale scale_ = Scale::log;
  std::vector<double> values_;
};

struct Violation {
  MultiIndex index;
  /// "(i)": entry is -inf (LOG) or not positive (EXP); "(iv)": origin not
  /// finite; "box": entry missing.
  std::string rule;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Every violation of the rules above, in row-major order. A finite box
/// always holds finitely many +inf entries, so those need no check. Never
/// throws.
std::vector<Violation> validate_grid(const SequenceGrid& g);

/// Flat indices of +inf entries on the outer face. Allowed, but the
/// construction near them depends on the truncation; callers surface these
/// as warnings.
std::vector<std::size_t> outer_face_infinities(const SequenceGrid& g);

struct GrowthDiagnostic {
  /// (alpha, a_alpha/|alpha|) on the two outermost order shells, +inf excluded.
  std::vector<std::pair<MultiIndex, double>> ratios;
  bool passes = false;
  double min_boundary_ratio = kInf;
  double max_interior_ratio = -kInf;
};

/// Finite-data heuristic for a_alpha/|alpha| -> +inf: passes iff the smallest
/// ratio on the shells |alpha| in {S-1, S} exceeds the largest ratio on the
/// shells 1..S-2, where S is the largest order in the box. Throws EmptyShell
/// when S < 3 and ScaleMismatch on an EXP grid.
GrowthDiagnostic growth_check(const SequenceGrid& g);

/// Entrywise log; throws NonPositiveEntry on M_alpha <= 0.
SequenceGrid to_log(const SequenceGrid& g);
SequenceGrid to_exp(const SequenceGrid& g);

}  // namespace lcmin
