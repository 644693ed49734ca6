// Copyright 2026 The tofloc Authors
// SPDX-License-Identifier: Apache-2.0

#include "tofloc/rig_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "tofloc/errors.hpp"
#include "tofloc/keyvalue.hpp"
#include "tofloc/number_format.hpp"

namespace tofloc {
namespace {

std::vector<Point2D> ParsePositions(const KeyValue& kv, const std::string& source) {
  std::vector<Point2D> positions;
  std::istringstream words(kv.value);
  std::string pair;
  while (words >> pair) {
    const auto comma = pair.find(',');
    if (comma == std::string::npos) {
      throw ParseError(source, kv.line, kv.value_column,
                       "positions must be 'x,y' pairs separated by spaces");
    }
    positions.push_back(
        {ParseNumber(std::string_view(pair).substr(0, comma), source, kv.line, kv.value_column),
         ParseNumber(std::string_view(pair).substr(comma + 1), source, kv.line,
                     kv.value_column)});
  }
  if (positions.empty()) throw ParseError(source, kv.line, kv.value_column, "no positions");
  return positions;
}

}  // namespace

RigConfig ParseRigConfig(std::istream& in, const std::string& source_name) {
  RigConfig cfg;
  Rig& rig = cfg.rig;
  std::optional<double> sensor2_x;
  std::optional<double> sensor2_y;
  double fov = rig.sensor_a.fov_deg;
  double max_range = rig.sensor_a.max_range;
  double zones = rig.sensor_a.zones_per_side;
  double frame_size = rig.frame_size;

  using Setter = std::function<void(double)>;
  const std::map<std::string, Setter> numeric = {
      {"sensor1.x", [&](double v) { rig.sensor_a.position.x = v; }},
      {"sensor1.y", [&](double v) { rig.sensor_a.position.y = v; }},
      {"sensor1.yaw_deg", [&](double v) { rig.sensor_a.yaw_deg = v; }},
      {"sensor2.x", [&](double v) { sensor2_x = v; }},
      {"sensor2.y", [&](double v) { sensor2_y = v; }},
      {"sensor2.yaw_deg", [&](double v) { rig.sensor_b.yaw_deg = v; }},
      {"fov_deg", [&](double v) { fov = v; }},
      {"zones", [&](double v) { zones = v; }},
      {"max_range_mm", [&](double v) { max_range = v; }},
      {"noise.sigma0_mm", [&](double v) { cfg.noise.sigma0 = v; }},
      {"noise.sigma_slope", [&](double v) { cfg.noise.sigma_slope = v; }},
      {"noise.outlier_prob", [&](double v) { cfg.noise.outlier_prob = v; }},
      {"noise.outlier_max_mm", [&](double v) { cfg.noise.outlier_shortening_max = v; }},
      {"noise.ambient_multiplier", [&](double v) { cfg.noise.ambient_multiplier = v; }},
      {"target.radius_mm", [&](double v) { rig.target_radius = v; }},
      {"frame.size_mm", [&](double v) { frame_size = v; }},
      {"radius_compensation_mm", [&](double v) { rig.radius_compensation = v; }},
  };

  for (const KeyValue& kv : ReadKeyValues(in, source_name)) {
    if (kv.key == "positions") {
      cfg.positions = ParsePositions(kv, source_name);
    } else if (kv.key == "seed") {
      std::uint64_t seed = 0;
      auto [end, ec] = std::from_chars(kv.value.data(), kv.value.data() + kv.value.size(), seed);
      if (ec != std::errc() || end != kv.value.data() + kv.value.size()) {
        throw ParseError(source_name, kv.line, kv.value_column,
                         "seed must be a non-negative integer");
      }
      cfg.seed = seed;
    } else if (auto it = numeric.find(kv.key); it != numeric.end()) {
      it->second(ParseNumber(kv.value, source_name, kv.line, kv.value_column));
    } else {
      throw ParseError(source_name, kv.line, 1, "unknown key '" + kv.key + "'");
    }
    if (kv.key == "zones" && zones != std::floor(zones)) {
      throw ParseError(source_name, kv.line, kv.value_column, "zones must be an integer");
    }
  }

  rig.frame_size = frame_size;
  if (frame_size > 0.0 && std::isfinite(frame_size)) {
    rig.scene = Scene::OpenFrame(frame_size);
  }
  rig.sensor_b.position = {sensor2_x.value_or(frame_size), sensor2_y.value_or(0.0)};
  for (SensorConfig* s : {&rig.sensor_a, &rig.sensor_b}) {
    s->fov_deg = fov;
    s->max_range = max_range;
    s->zones_per_side = zones >= 1 && zones <= kMaxZonesPerSide ? static_cast<int>(zones) : 0;
  }

  try {
    rig.Validate();
    cfg.noise.Validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(source_name, 0, 0, e.what());
  }
  return cfg;
}

RigConfig LoadRigConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open rig config '" + path.string() + "'");
  return ParseRigConfig(in, path.string());
}

}  // namespace tofloc
