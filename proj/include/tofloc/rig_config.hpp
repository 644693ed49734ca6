// Copyright 2026 The tofloc Authors
// SPDX-License-Identifier: Apache-2.0

// Rig configuration file (key=value). Recognised keys:
//
//   sensor1.x sensor1.y sensor1.yaw_deg      sensor one pose (mm, degrees)
//   sensor2.x sensor2.y sensor2.yaw_deg      sensor two pose
//   fov_deg zones max_range_mm               shared sensor geometry
//   noise.sigma0_mm noise.sigma_slope noise.outlier_prob
//   noise.outlier_max_mm noise.ambient_multiplier
//   target.radius_mm frame.size_mm
//   radius_compensation_mm
//   positions                                "x,y x,y ..." target positions
//   seed
//
// Missing keys keep the defaults of Rig::Default and NoiseModel{}; sensor
// two defaults to (frame.size_mm, 0). Unknown keys are an error.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tofloc/experiments.hpp"

namespace tofloc {

struct RigConfig {
  Rig rig = Rig::Default();
  NoiseModel noise;
  std::vector<Point2D> positions = DefaultPositions();
  std::uint64_t seed = 0;

  // The four marked locations of the dark-room experiment.
  static std::vector<Point2D> DefaultPositions() {
    return {{330, 330}, {660, 330}, {660, 660}, {330, 660}};
  }
};

RigConfig ParseRigConfig(std::istream& in, const std::string& source_name);
RigConfig LoadRigConfig(const std::filesystem::path& path);

}  // namespace tofloc
