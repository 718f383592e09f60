#include "lcmin/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lcmin {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ScaleMismatch: return "ScaleMismatch";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::EmptyShell: return "EmptyShell";
    case ErrorKind::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorKind::NumericBreakdown: return "NumericBreakdown";
    case ErrorKind::TargetOutsideHull: return "TargetOutsideHull";
    case ErrorKind::AllInfinite: return "AllInfinite";
    case ErrorKind::EmptyKGrid: return "EmptyKGrid";
    case ErrorKind::EmptySGrid: return "EmptySGrid";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::LevelNotFound: return "LevelNotFound";
    case ErrorKind::BoxTooSmall: return "BoxTooSmall";
    case ErrorKind::Validation: return "Validation";
    case ErrorKind::Schema: return "Schema";
  }
  return "Unknown";
}

std::string_view to_string(Scale scale) { return scale == Scale::log ? "log" : "exp"; }

// ---------------------------------------------------------------- MultiIndex

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw Error(ErrorKind::InvalidArgument, "multi-index needs d >= 1");
  for (int e : entries_)
    if (e < 0) throw Error(ErrorKind::OutOfRange, "multi-index entries must be >= 0");
}

MultiIndex MultiIndex::unit(int dim, int axis) {
  if (axis < 0 || axis >= dim) throw Error(ErrorKind::OutOfRange, "axis out of range");
  std::vector<int> e(static_cast<std::size_t>(dim), 0);
  e[static_cast<std::size_t>(axis)] = 1;
  return MultiIndex(std::move(e));
}

int MultiIndex::order() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "multi-index dimensions differ");
  std::vector<int> out(entries_);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += other.entries_[j];
  return MultiIndex(std::move(out));
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (other.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "multi-index dimensions differ");
  std::vector<int> out(entries_);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] -= other.entries_[j];
  return MultiIndex(std::move(out));
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    if (j) s += ',';
    s += std::to_string(entries_[j]);
  }
  return s + ")";
}

// ----------------------------------------------------------------- BoxLayout

BoxLayout::BoxLayout(std::vector<int> box) : box_(std::move(box)) {
  if (box_.empty()) throw Error(ErrorKind::InvalidArgument, "box needs d >= 1");
  for (int n : box_)
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "box bounds must be >= 0");

  const std::size_t d = box_.size();
  strides_.assign(d, 1);
  size_ = 1;
  for (std::size_t j = d; j-- > 0;) {
    strides_[j] = size_;
    size_ *= static_cast<std::size_t>(box_[j]) + 1;
  }
  coords_.resize(size_ * d);
  orders_.resize(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    std::size_t rest = i;
    int ord = 0;
    for (std::size_t j = 0; j < d; ++j) {
      const int c = static_cast<int>(rest / strides_[j]);
      rest %= strides_[j];
      coords_[i * d + j] = c;
      ord += c;
    }
    orders_[i] = ord;
  }
}

bool BoxLayout::contains(const MultiIndex& alpha) const {
  if (alpha.dim() != dim()) return false;
  for (int j = 0; j < dim(); ++j)
    if (alpha[j] > box_[static_cast<std::size_t>(j)]) return false;
  return true;
}

std::size_t BoxLayout::flat(const MultiIndex& alpha) const {
  if (!contains(alpha)) throw Error(ErrorKind::OutOfRange, alpha.to_string() + " is outside the box");
  return flat(alpha.entries());
}

std::size_t BoxLayout::flat(std::span<const int> coords) const {
  std::size_t f = 0;
  for (std::size_t j = 0; j < coords.size(); ++j) f += static_cast<std::size_t>(coords[j]) * strides_[j];
  return f;
}

MultiIndex BoxLayout::index(std::size_t flat) const {
  auto c = coords(flat);
  return MultiIndex(std::vector<int>(c.begin(), c.end()));
}

std::optional<std::size_t> BoxLayout::shift(std::size_t flat, int axis, int delta) const {
  const int c = coords(flat)[static_cast<std::size_t>(axis)] + delta;
  if (c < 0 || c > box_[static_cast<std::size_t>(axis)]) return std::nullopt;
  const auto stride = static_cast<std::ptrdiff_t>(strides_[static_cast<std::size_t>(axis)]);
  return static_cast<std::size_t>(static_cast<std::ptrdiff_t>(flat) + delta * stride);
}

bool BoxLayout::on_outer_face(std::size_t flat) const {
  auto c = coords(flat);
  for (std::size_t j = 0; j < c.size(); ++j)
    if (c[j] == box_[j]) return true;
  return false;
}

int BoxLayout::max_order() const { return std::accumulate(box_.begin(), box_.end(), 0); }

// -------------------------------------------------------------- SequenceGrid

SequenceGrid::SequenceGrid(std::vector<int> box, Scale scale, std::vector<double> values)
    : layout_(std::move(box)), scale_(scale), values_(std::move(values)) {
  if (values_.size() != layout_.size())
    throw Error(ErrorKind::InvalidArgument, "grid has " + std::to_string(values_.size()) +
                                                " values but the box holds " + std::to_string(layout_.size()));
}

double SequenceGrid::log_value(std::size_t flat) const {
  const double v = values_[flat];
  return scale_ == Scale::log ? v : std::log(v);
}

bool SequenceGrid::is_normalized(double tol) const {
  const double a0 = log_value(0);
  return std::isfinite(a0) && std::abs(a0) <= tol;
}

bool operator==(const SequenceGrid& a, const SequenceGrid& b) {
  if (!(a.layout_ == b.layout_) || a.scale_ != b.scale_) return false;
  for (std::size_t i = 0; i < a.values_.size(); ++i) {
    const double x = a.values_[i], y = b.values_[i];
    if (!(x == y) && !(is_missing(x) && is_missing(y))) return false;
  }
  return true;
}

// ---------------------------------------------------------------- validation

std::vector<Violation> validate_grid(const SequenceGrid& g) {
  std::vector<Violation> out;
  const auto& layout = g.layout();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double v = g[i];
    const MultiIndex alpha = layout.index(i);
    if (is_missing(v)) {
      out.push_back({alpha, "box", "box incomplete at " + alpha.to_string()});
      continue;
    }
    if (i == 0) {
      const bool finite = std::isfinite(v) && (g.scale() == Scale::log || v > 0.0);
      if (!finite) {
        out.push_back({alpha, "(iv)", "value at the origin must be finite"});
        continue;
      }
    }
    if (g.scale() == Scale::log && v == -kInf)
      out.push_back({alpha, "(i)", "entry is -inf at " + alpha.to_string()});
    if (g.scale() == Scale::exp && v <= 0.0)
      out.push_back({alpha, "(i)", "entry must be positive at " + alpha.to_string()});
  }
  return out;
}

std::vector<std::size_t> outer_face_infinities(const SequenceGrid& g) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (is_pos_inf(g[i]) && g.layout().on_outer_face(i)) out.push_back(i);
  return out;
}

GrowthDiagnostic growth_check(const SequenceGrid& g) {
  if (g.scale() != Scale::log) throw Error(ErrorKind::ScaleMismatch, "growth_check expects a LOG-scale grid");
  const auto& layout = g.layout();
  const int top = layout.max_order();
  if (top < 3)
    throw Error(ErrorKind::EmptyShell, "box has " + std::to_string(top) + " non-zero shells; need at least 3");

  GrowthDiagnostic diag;
  for (std::size_t i = 1; i < g.size(); ++i) {
    const double v = g[i];
    if (!std::isfinite(v)) continue;
    const int ord = layout.order(i);
    const double ratio = v / ord;
    if (ord >= top - 1) {
      diag.ratios.emplace_back(layout.index(i), ratio);
      diag.min_boundary_ratio = std::min(diag.min_boundary_ratio, ratio);
    } else {
      diag.max_interior_ratio = std::max(diag.max_interior_ratio, ratio);
    }
  }
  diag.passes = diag.min_boundary_ratio > diag.max_interior_ratio;
  return diag;
}

SequenceGrid to_log(const SequenceGrid& g) {
  if (g.scale() == Scale::log) return g;
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double m = g[i];
    if (m <= 0.0) throw Error(ErrorKind::NonPositiveEntry, "M" + g.layout().index(i).to_string() + " <= 0");
    out[i] = std::log(m);
  }
  return SequenceGrid(std::vector<int>(g.box().begin(), g.box().end()), Scale::log, std::move(out));
}

SequenceGrid to_exp(const SequenceGrid& g) {
  if (g.scale() == Scale::exp) return g;
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = std::exp(g[i]);
  return SequenceGrid(std::vector<int>(g.box().begin(), g.box().end()), Scale::exp, std::move(out));
}

}  // namespace lcmin
