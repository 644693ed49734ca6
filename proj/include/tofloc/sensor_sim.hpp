// Copyright 2026 The tofloc Authors
// SPDX-License-Identifier: Apache-2.0

// Forward model of a multi-zone infrared time-of-flight sensor looking
// across a planar scene. The target is a vertical cylinder, so a horizontal
// slice is enough: every row of a zone column sees the same geometry and
// rows differ only by their noise draws.

#pragma once

#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "tofloc/geometry.hpp"

namespace tofloc {

using Rng = std::mt19937_64;

inline constexpr int kMaxZonesPerSide = 8;

// Readings are clamped to at least this value after noise is applied.
inline constexpr double kMinReadingMm = 1.0;

struct SensorConfig {
  Point2D position;
  double yaw_deg = 45.0;  // boresight azimuth, counter-clockwise from +x
  double fov_deg = 60.0;  // total horizontal field of view
  int zones_per_side = 4;
  double max_range = 3500.0;

  // Throws InvalidArgument unless 0 < fov < 180, 1 <= zones <= 8,
  // max_range > 0 and all values are finite.
  void Validate() const;

  // Azimuth interval [begin, end] in degrees covered by zone column `column`.
  double ZoneBeginDeg(int column) const;
  double ZoneEndDeg(int column) const;
  double ZoneCenterDeg(int column) const;
  double ZoneWidthDeg() const { return fov_deg / zones_per_side; }
};

struct NoiseModel {
  double sigma0 = 5.0;                    // mm
  double sigma_slope = 10.0;              // mm per metre of true range
  double outlier_prob = 0.003;            // per zone and scan
  double outlier_shortening_max = 150.0;  // mm
  double ambient_multiplier = 2.0;

  static NoiseModel Noiseless() { return {0.0, 0.0, 0.0, 0.0, 1.0}; }

  void Validate() const;
};

enum class AmbientCondition { kDark, kArtificialLight };

std::string_view ToString(AmbientCondition condition);
// Accepts "dark" and "lit" (also "artificial"). Throws InvalidArgument.
AmbientCondition ParseAmbientCondition(std::string_view text);

struct Segment {
  Point2D a;
  Point2D b;
};

struct Circle {
  Point2D center;
  double radius = 50.0;
};

struct Scene {
  std::vector<Segment> walls;
  std::optional<Circle> target;

  void Validate() const;

  // Square frame of side `size` with its corner at the origin and the side
  // y = size left open.
  static Scene OpenFrame(double size);
};

// One scan: zones_per_side x zones_per_side readings, row-major.
// std::nullopt is the INVALID sentinel.
class ZoneFrame {
 public:
  ZoneFrame(int zones_per_side, double max_range);

  int zones_per_side() const { return zones_per_side_; }
  double max_range() const { return max_range_; }

  const std::optional<double>& at(int row, int column) const;
  std::optional<double>& at(int row, int column);

  const std::vector<std::optional<double>>& readings() const { return readings_; }
  std::vector<std::optional<double>>& readings() { return readings_; }

  bool AllInvalid() const;

  friend bool operator==(const ZoneFrame&, const ZoneFrame&) = default;

 private:
  int zones_per_side_;
  double max_range_;
  std::vector<std::optional<double>> readings_;
};

// Distance from `origin` to the nearest point of `circle` whose azimuth lies
// in [begin_rad, end_rad], or nullopt. The wedge must span less than pi.
std::optional<double> NearestInWedge(Point2D origin, double begin_rad,
                                     double end_rad, const Circle& circle);
std::optional<double> NearestInWedge(Point2D origin, double begin_rad,
                                     double end_rad, const Segment& segment);

// Noiseless readings. Column i covers azimuths
//   [yaw - fov/2 + i*w, yaw - fov/2 + (i+1)*w],  w = fov / zones_per_side,
// and reads the nearest surface (target or wall) inside that sector. The
// sector's central ray is at yaw - fov/2 + (i + 0.5)*w. Nothing within
// max_range gives INVALID.
ZoneFrame CastZoneRays(const SensorConfig& config, const Scene& scene);

// Per valid zone: with probability p (times ambient_multiplier under
// artificial light, capped at 1) the reading is shortened by
// uniform(0, outlier_shortening_max); otherwise Gaussian noise with
// sigma(d) = sigma0 + sigma_slope * d / 1000 (times ambient_multiplier under
// artificial light) is added. Results are clamped to
// [kMinReadingMm, max_range].
ZoneFrame ApplyNoise(const ZoneFrame& frame, const NoiseModel& model,
                     AmbientCondition condition, Rng& rng);

ZoneFrame Scan(const SensorConfig& config, const Scene& scene,
               const NoiseModel& model, AmbientCondition condition, Rng& rng);

}  // namespace tofloc
