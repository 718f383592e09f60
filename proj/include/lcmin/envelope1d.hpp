/**
 * @file envelope1d.hpp
 * @brief One-dimensional convex minorant by rotating supporting lines.
 *
 * Starting from (0, a_0) the supporting line is rotated upward until it hits
 * another point; that point becomes the next contact and the rotation
 * continues from there. The contacts p_0 = 0 < p_1 < ... are the vertices of
 * the lower convex hull (Newton polygon) and the minorant is the polygon
 * sampled at the integers.
 */
#pragma once

#include <cstddef>
#include <vector>

#include "lcmin/core.hpp"

namespace lcmin {

struct PolygonSegment {
  int p_lo = 0;
  int p_hi = 0;
  double slope = 0.0;
  /// Value of the supporting line at 0: (p_hi a_lo - p_lo a_hi) / (p_hi - p_lo).
  double intercept = 0.0;
};

struct NewtonPolygon {
  std::vector<int> contacts;
  std::vector<PolygonSegment> segments;
  /// Minorant at p = 0..N; +inf right of the last finite contact.
  std::vector<double> minorant;
  /// Indices right of the left end of the final segment when that segment
  /// ends at N; their values are only upper bounds for the untruncated
  /// sequence.
  std::vector<int> boundary_affected;
};

/// Relative tolerance under which two difference quotients count as tied.
inline constexpr double kSlopeTieTol = 1e-12;

/// Throws DimensionMismatch unless d = 1, ScaleMismatch on EXP grids and
/// Validation when the origin value is not finite.
NewtonPolygon sweep(const SequenceGrid& g);

/// Piecewise-linear minorant at real x in [0, last contact]; OutOfRange
/// otherwise.
double evaluate(const NewtonPolygon& poly, double x);

}  // namespace lcmin
