// Copyright 2026 The tofloc Authors
// SPDX-License-Identifier: Apache-2.0

#include "tofloc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tofloc/errors.hpp"

namespace tofloc {

double Norm(Point2D p) { return std::hypot(p.x, p.y); }

double Distance(Point2D a, Point2D b) { return Norm(b - a); }

bool IsFinite(Point2D p) { return std::isfinite(p.x) && std::isfinite(p.y); }

Baseline::Baseline(Point2D s1, Point2D s2) : s1_(s1), s2_(s2) {
  if (!IsFinite(s1) || !IsFinite(s2)) {
    throw InvalidArgument("baseline endpoints must be finite");
  }
  length_ = Distance(s1, s2);
  if (!(length_ > 0.0)) {
    throw InvalidArgument("baseline sensors must not coincide");
  }
}

Side SideOf(const Baseline& baseline, Point2D p) {
  const Point2D u = baseline.s2() - baseline.s1();
  const Point2D v = p - baseline.s1();
  return u.x * v.y - u.y * v.x >= 0.0 ? Side::kLeft : Side::kRight;
}

double DistanceFromTime(double seconds) {
  if (!std::isfinite(seconds) || seconds < 0.0) {
    throw InvalidArgument("time of flight must be finite and non-negative");
  }
  return seconds * kSpeedOfLight / 2.0 * 1000.0;
}

Point2D Triangulate(TriangleRanges ranges, const Baseline& baseline, Side side) {
  const double a = ranges.a;
  const double b = ranges.b;
  if (!std::isfinite(a) || !std::isfinite(b) || a <= 0.0 || b <= 0.0) {
    throw InvalidArgument("ranges must be finite and positive");
  }
  const double c = baseline.length();

  double cos_theta = (a * a + c * c - b * b) / (2.0 * a * c);
  if (std::abs(cos_theta) > 1.0 + kCollinearTolerance) {
    throw DegenerateTriangle("ranges A=" + std::to_string(a) + " B=" +
                             std::to_string(b) + " C=" + std::to_string(c) +
                             " violate the triangle inequality");
  }
  cos_theta = std::clamp(cos_theta, -1.0, 1.0);
  const double theta = std::acos(cos_theta);

  // Local frame: u along the baseline, n its normal toward `side`.
  const Point2D u = (1.0 / c) * (baseline.s2() - baseline.s1());
  const Point2D n = side == Side::kLeft ? Point2D{-u.y, u.x} : Point2D{u.y, -u.x};
  return baseline.s1() + (a * std::cos(theta)) * u + (a * std::sin(theta)) * n;
}

TriangleRanges ForwardDistances(Point2D target, const Baseline& baseline) {
  if (!IsFinite(target)) {
    throw InvalidArgument("target must be finite");
  }
  TriangleRanges r{Distance(baseline.s1(), target), Distance(baseline.s2(), target)};
  if (r.a == 0.0 || r.b == 0.0) {
    throw InvalidArgument("target coincides with a sensor");
  }
  return r;
}

}  // namespace tofloc
