#include "lcmin/envelope1d.hpp"

#include <algorithm>
#include <cmath>

namespace lcmin {

NewtonPolygon sweep(const SequenceGrid& g) {
  if (g.dim() != 1) throw Error(ErrorKind::DimensionMismatch, "sweep needs a one-dimensional grid");
  if (g.scale() != Scale::log) throw Error(ErrorKind::ScaleMismatch, "sweep expects a LOG-scale grid");
  if (!std::isfinite(g[0])) throw Error(ErrorKind::Validation, "a_0 must be finite");

  const int n = g.box()[0];
  auto a = [&](int p) { return g[static_cast<std::size_t>(p)]; };

  NewtonPolygon poly;
  poly.contacts.push_back(0);
  int current = 0;
  while (current < n) {
    int next = -1;
    double best = 0.0;
    for (int p = current + 1; p <= n; ++p) {
      if (!std::isfinite(a(p))) continue;
      const double q = (a(p) - a(current)) / (p - current);
      if (next < 0) {
        next = p;
        best = q;
        continue;
      }
      const double tie = kSlopeTieTol * std::max(1.0, std::abs(best));
      if (q < best - tie) {
        next = p;
        best = q;
      } else if (q <= best + tie) {
        next = p;  // largest minimizer: maximal segments
      }
    }
    if (next < 0) break;  // only +inf entries remain
    const double lo = a(current), hi = a(next);
    PolygonSegment seg;
    seg.p_lo = current;
    seg.p_hi = next;
    seg.slope = (hi - lo) / (next - current);
    seg.intercept = (next * lo - current * hi) / (next - current);
    poly.segments.push_back(seg);
    poly.contacts.push_back(next);
    current = next;
  }

  poly.minorant.assign(static_cast<std::size_t>(n) + 1, kInf);
  poly.minorant[0] = a(0);
  for (const auto& seg : poly.segments) {
    const double lo = a(seg.p_lo);
    for (int p = seg.p_lo + 1; p < seg.p_hi; ++p) poly.minorant[static_cast<std::size_t>(p)] = lo + seg.slope * (p - seg.p_lo);
    poly.minorant[static_cast<std::size_t>(seg.p_hi)] = a(seg.p_hi);
  }

  if (!poly.segments.empty() && poly.segments.back().p_hi == n) {
    for (int p = poly.segments.back().p_lo + 1; p <= n; ++p) poly.boundary_affected.push_back(p);
  }
  return poly;
}

double evaluate(const NewtonPolygon& poly, double x) {
  const int last = poly.contacts.back();
  if (!(x >= 0.0 && x <= last)) throw Error(ErrorKind::OutOfRange, "x must lie in [0, last contact]");
  if (x == std::floor(x)) return poly.minorant[static_cast<std::size_t>(x)];
  for (const auto& seg : poly.segments) {
    if (x <= seg.p_hi) {
      const double lo = poly.minorant[static_cast<std::size_t>(seg.p_lo)];
      return lo + seg.slope * (x - seg.p_lo);
    }
  }
  return poly.minorant[static_cast<std::size_t>(last)];
}

}  // namespace lcmin
