// Copyright 2026 The tofloc Authors
// SPDX-License-Identifier: Apache-2.0

// Planar geometry for two-sensor time-of-flight localization. All lengths
// are millimeters.

#pragma once

namespace tofloc {

// Speed of light in vacuum, m/s (exact by definition of the metre).
inline constexpr double kSpeedOfLight = 299'792'458.0;

// Relative slack on the law-of-cosines argument before a triangle is
// declared degenerate. Inside the slack the argument is clamped to +-1.
inline constexpr double kCollinearTolerance = 1e-9;

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

inline Point2D operator+(Point2D a, Point2D b) { return {a.x + b.x, a.y + b.y}; }
inline Point2D operator-(Point2D a, Point2D b) { return {a.x - b.x, a.y - b.y}; }
inline Point2D operator*(double k, Point2D p) { return {k * p.x, k * p.y}; }

double Norm(Point2D p);
double Distance(Point2D a, Point2D b);
bool IsFinite(Point2D p);

// The two sensor positions. Construction validates that they are distinct
// and finite.
class Baseline {
 public:
  Baseline(Point2D s1, Point2D s2);

  Point2D s1() const { return s1_; }
  Point2D s2() const { return s2_; }
  double length() const { return length_; }

 private:
  Point2D s1_;
  Point2D s2_;
  double length_;
};

// Ranges measured by sensor one (a) and sensor two (b).
struct TriangleRanges {
  double a = 0.0;
  double b = 0.0;
};

// Which side of the directed line s1 -> s2 the target lies on. kLeft is the
// counter-clockwise side: +y when the baseline runs along +x.
enum class Side { kLeft, kRight };

// Side of the directed baseline that `p` lies on. Points on the line count
// as kLeft.
Side SideOf(const Baseline& baseline, Point2D p);

// d = t * c / 2, returned in mm. Throws InvalidArgument for negative or
// non-finite t.
double DistanceFromTime(double seconds);

// Law-of-cosines triangulation. theta = acos((A^2 + C^2 - B^2) / (2AC)) is
// measured from the s1 -> s2 direction and the result is s1 + A(cos theta,
// sin theta) rotated into the baseline frame, mirrored for Side::kRight.
//
// Throws InvalidArgument for non-positive or non-finite ranges and
// DegenerateTriangle when |cos argument| > 1 + kCollinearTolerance.
Point2D Triangulate(TriangleRanges ranges, const Baseline& baseline, Side side);

// Euclidean distances from each sensor to `target`. Throws InvalidArgument
// if the target coincides with a sensor.
TriangleRanges ForwardDistances(Point2D target, const Baseline& baseline);

}  // namespace tofloc
