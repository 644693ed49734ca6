// Copyright 2026 The tofloc Authors
// SPDX-License-Identifier: Apache-2.0

#include "tofloc/sensor_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "tofloc/errors.hpp"

namespace tofloc {
namespace {

constexpr double kAngleEps = 1e-12;     // rad
constexpr double kDistanceEps = 1e-9;   // mm; hits closer than this are the mount itself

double DegToRad(double deg) { return deg * std::numbers::pi / 180.0; }

Point2D Direction(double rad) { return {std::cos(rad), std::sin(rad)}; }

double Dot(Point2D a, Point2D b) { return a.x * b.x + a.y * b.y; }
double Cross(Point2D a, Point2D b) { return a.x * b.y - a.y * b.x; }

bool InWedge(double angle, double begin, double end) {
  const double offset = std::remainder(angle - begin, 2.0 * std::numbers::pi);
  return offset >= -kAngleEps && offset <= (end - begin) + kAngleEps;
}

bool InWedge(Point2D origin, Point2D p, double begin, double end) {
  const Point2D v = p - origin;
  return InWedge(std::atan2(v.y, v.x), begin, end);
}

void KeepMin(std::optional<double>& best, double candidate) {
  if (candidate > kDistanceEps && (!best || candidate < *best)) best = candidate;
}

// First hit of the ray origin + t*dir (t > 0, |dir| = 1) with the circle.
std::optional<double> RayCircle(Point2D origin, Point2D dir, const Circle& c) {
  const Point2D f = c.center - origin;
  const double along = Dot(f, dir);
  const double perp2 = Dot(f, f) - along * along;
  const double r2 = c.radius * c.radius;
  if (perp2 > r2) return std::nullopt;
  const double half_chord = std::sqrt(r2 - perp2);
  if (along - half_chord > kDistanceEps) return along - half_chord;
  if (along + half_chord > kDistanceEps) return along + half_chord;
  return std::nullopt;
}

std::optional<double> RaySegment(Point2D origin, Point2D dir, const Segment& s) {
  const Point2D edge = s.b - s.a;
  const double denom = Cross(dir, edge);
  if (denom == 0.0) return std::nullopt;  // parallel; endpoints cover the rest
  const Point2D w = s.a - origin;
  const double t = Cross(w, edge) / denom;
  const double u = Cross(w, dir) / denom;
  if (t <= kDistanceEps || u < 0.0 || u > 1.0) return std::nullopt;
  return t;
}

bool IsFinite(double v) { return std::isfinite(v); }

}  // namespace

void SensorConfig::Validate() const {
  if (!tofloc::IsFinite(position) || !IsFinite(yaw_deg)) {
    throw InvalidArgument("sensor position and yaw must be finite");
  }
  if (!(fov_deg > 0.0 && fov_deg < 180.0)) {
    throw InvalidArgument("fov must be in (0, 180) degrees");
  }
  if (zones_per_side < 1 || zones_per_side > kMaxZonesPerSide) {
    throw InvalidArgument("zones per side must be in [1, 8]");
  }
  if (!(max_range > 0.0) || !IsFinite(max_range)) {
    throw InvalidArgument("max range must be positive and finite");
  }
}

double SensorConfig::ZoneBeginDeg(int column) const {
  return yaw_deg - fov_deg / 2.0 + column * ZoneWidthDeg();
}

double SensorConfig::ZoneEndDeg(int column) const {
  return ZoneBeginDeg(column + 1);
}

double SensorConfig::ZoneCenterDeg(int column) const {
  return yaw_deg - fov_deg / 2.0 + (column + 0.5) * ZoneWidthDeg();
}

void NoiseModel::Validate() const {
  const bool finite = IsFinite(sigma0) && IsFinite(sigma_slope) &&
                      IsFinite(outlier_prob) && IsFinite(outlier_shortening_max) &&
                      IsFinite(ambient_multiplier);
  if (!finite || sigma0 < 0.0 || sigma_slope < 0.0 || outlier_prob < 0.0 ||
      outlier_prob > 1.0 || outlier_shortening_max < 0.0 ||
      ambient_multiplier < 1.0) {
    throw InvalidArgument(
        "noise model requires sigma0, sigma_slope, outlier_max >= 0, "
        "outlier_prob in [0, 1] and ambient_multiplier >= 1");
  }
}

std::string_view ToString(AmbientCondition condition) {
  return condition == AmbientCondition::kDark ? "dark" : "lit";
}

AmbientCondition ParseAmbientCondition(std::string_view text) {
  if (text == "dark") return AmbientCondition::kDark;
  if (text == "lit" || text == "artificial") return AmbientCondition::kArtificialLight;
  throw InvalidArgument("unknown ambient condition '" + std::string(text) +
                        "' (expected dark or lit)");
}

void Scene::Validate() const {
  for (const Segment& w : walls) {
    if (!tofloc::IsFinite(w.a) || !tofloc::IsFinite(w.b)) {
      throw InvalidArgument("wall endpoints must be finite");
    }
  }
  if (target && (!tofloc::IsFinite(target->center) || !(target->radius > 0.0) ||
                 !IsFinite(target->radius))) {
    throw InvalidArgument("target needs a finite center and positive radius");
  }
}

Scene Scene::OpenFrame(double size) {
  if (!(size > 0.0) || !IsFinite(size)) {
    throw InvalidArgument("frame size must be positive");
  }
  Scene scene;
  scene.walls = {
      {{0.0, 0.0}, {size, 0.0}},
      {{0.0, 0.0}, {0.0, size}},
      {{size, 0.0}, {size, size}},
  };
  return scene;
}

ZoneFrame::ZoneFrame(int zones_per_side, double max_range)
    : zones_per_side_(zones_per_side), max_range_(max_range) {
  if (zones_per_side < 1 || zones_per_side > kMaxZonesPerSide) {
    throw InvalidArgument("zones per side must be in [1, 8]");
  }
  readings_.resize(static_cast<std::size_t>(zones_per_side) * zones_per_side);
}

const std::optional<double>& ZoneFrame::at(int row, int column) const {
  return readings_.at(static_cast<std::size_t>(row) * zones_per_side_ + column);
}

std::optional<double>& ZoneFrame::at(int row, int column) {
  return readings_.at(static_cast<std::size_t>(row) * zones_per_side_ + column);
}

bool ZoneFrame::AllInvalid() const {
  return std::none_of(readings_.begin(), readings_.end(),
                      [](const auto& r) { return r.has_value(); });
}

std::optional<double> NearestInWedge(Point2D origin, double begin_rad,
                                     double end_rad, const Circle& circle) {
  std::optional<double> best;
  const Point2D to_center = circle.center - origin;
  const double center_dist = Norm(to_center);
  // The near arc gets closer monotonically toward the center direction, so
  // the optimum is either that direction or the wedge edge nearest to it.
  if (center_dist > circle.radius && InWedge(origin, circle.center, begin_rad, end_rad)) {
    KeepMin(best, center_dist - circle.radius);
  }
  for (double edge : {begin_rad, end_rad}) {
    if (auto t = RayCircle(origin, Direction(edge), circle)) KeepMin(best, *t);
  }
  return best;
}

std::optional<double> NearestInWedge(Point2D origin, double begin_rad,
                                     double end_rad, const Segment& segment) {
  // Distance along a line is convex, so on the part of the segment inside
  // the wedge the minimum is at the perpendicular foot or a clip endpoint.
  std::optional<double> best;
  const Point2D edge = segment.b - segment.a;
  const double len2 = Dot(edge, edge);
  if (len2 > 0.0) {
    const double u = Dot(origin - segment.a, edge) / len2;
    if (u >= 0.0 && u <= 1.0) {
      const Point2D foot = segment.a + u * edge;
      if (Distance(origin, foot) > kDistanceEps &&
          InWedge(origin, foot, begin_rad, end_rad)) {
        KeepMin(best, Distance(origin, foot));
      }
    }
  }
  for (Point2D end : {segment.a, segment.b}) {
    if (Distance(origin, end) > kDistanceEps && InWedge(origin, end, begin_rad, end_rad)) {
      KeepMin(best, Distance(origin, end));
    }
  }
  for (double angle : {begin_rad, end_rad}) {
    if (auto t = RaySegment(origin, Direction(angle), segment)) KeepMin(best, *t);
  }
  return best;
}

ZoneFrame CastZoneRays(const SensorConfig& config, const Scene& scene) {
  config.Validate();
  scene.Validate();

  ZoneFrame frame(config.zones_per_side, config.max_range);
  for (int column = 0; column < config.zones_per_side; ++column) {
    const double begin = DegToRad(config.ZoneBeginDeg(column));
    const double end = DegToRad(config.ZoneEndDeg(column));

    std::optional<double> nearest;
    if (scene.target) {
      if (auto d = NearestInWedge(config.position, begin, end, *scene.target)) {
        KeepMin(nearest, *d);
      }
    }
    for (const Segment& wall : scene.walls) {
      if (auto d = NearestInWedge(config.position, begin, end, wall)) {
        KeepMin(nearest, *d);
      }
    }
    if (nearest && *nearest > config.max_range) nearest.reset();

    for (int row = 0; row < config.zones_per_side; ++row) {
      frame.at(row, column) = nearest;
    }
  }
  return frame;
}

ZoneFrame ApplyNoise(const ZoneFrame& frame, const NoiseModel& model,
                     AmbientCondition condition, Rng& rng) {
  model.Validate();
  const double boost = condition == AmbientCondition::kArtificialLight
                           ? model.ambient_multiplier
                           : 1.0;
  const double outlier_prob = std::min(1.0, model.outlier_prob * boost);

  boost::random::uniform_real_distribution<double> unit(0.0, 1.0);
  boost::random::normal_distribution<double> standard_normal(0.0, 1.0);

  ZoneFrame out = frame;
  for (auto& reading : out.readings()) {
    if (!reading) continue;
    const double d = *reading;
    double noisy;
    // Every valid zone consumes the same draws regardless of the model so
    // that runs differing only in noise parameters share a random schedule.
    const double u = unit(rng);
    const double shortening = unit(rng) * model.outlier_shortening_max;
    const double z = standard_normal(rng);
    if (u < outlier_prob) {
      noisy = d - shortening;
    } else {
      const double sigma = (model.sigma0 + model.sigma_slope * d / 1000.0) * boost;
      noisy = d + sigma * z;
    }
    if (noisy != d) {
      noisy = std::clamp(noisy, kMinReadingMm, frame.max_range());
    }
    reading = noisy;
  }
  return out;
}

ZoneFrame Scan(const SensorConfig& config, const Scene& scene,
               const NoiseModel& model, AmbientCondition condition, Rng& rng) {
  return ApplyNoise(CastZoneRays(config, scene), model, condition, rng);
}

}  // namespace tofloc
