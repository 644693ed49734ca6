// Copyright 2026 The tofloc Authors
// SPDX-License-Identifier: Apache-2.0

#include "tofloc/rig_config.hpp"

#include <sstream>

#include <gtest/gtest.h>

#include "tofloc/errors.hpp"

namespace tofloc {
namespace {

RigConfig Parse(const std::string& text) {
  std::istringstream in(text);
  return ParseRigConfig(in, "rig.cfg");
}

TEST(RigConfig, EmptyFileGivesDefaults) {
  const RigConfig cfg = Parse("# nothing here\n\n");
  EXPECT_EQ(cfg.rig.sensor_a.position, (Point2D{0, 0}));
  EXPECT_EQ(cfg.rig.sensor_b.position, (Point2D{1000, 0}));
  EXPECT_EQ(cfg.rig.sensor_b.yaw_deg, 135.0);
  EXPECT_EQ(cfg.rig.sensor_a.zones_per_side, 4);
  EXPECT_EQ(cfg.rig.sensor_a.fov_deg, 60.0);
  EXPECT_EQ(cfg.rig.target_radius, 50.0);
  EXPECT_EQ(cfg.noise.sigma0, 5.0);
  EXPECT_EQ(cfg.positions.size(), 4u);
  EXPECT_EQ(cfg.seed, 0u);
  EXPECT_EQ(cfg.rig.interior_side(), Side::kLeft);
}

TEST(RigConfig, ShippedFileMatchesDefaults) {
  const RigConfig cfg = LoadRigConfig(std::filesystem::path(TOFLOC_DATA_DIR) / "rig.cfg");
  const RigConfig defaults = Parse("");
  EXPECT_EQ(cfg.positions, defaults.positions);
  EXPECT_EQ(cfg.noise.outlier_prob, defaults.noise.outlier_prob);
  EXPECT_EQ(cfg.noise.ambient_multiplier, defaults.noise.ambient_multiplier);
  EXPECT_EQ(cfg.rig.sensor_b.position, defaults.rig.sensor_b.position);
}

TEST(RigConfig, AllDocumentedKeys) {
  const RigConfig cfg = Parse(
      "sensor1.x = 10\nsensor1.y=5\nsensor1.yaw_deg=40\n"
      "sensor2.x=1500\nsensor2.y=5\nsensor2.yaw_deg=140\n"
      "fov_deg=45\nzones=8\nmax_range_mm=4000\n"
      "noise.sigma0_mm=1\nnoise.sigma_slope=2\nnoise.outlier_prob=0.1\n"
      "noise.outlier_max_mm=30\nnoise.ambient_multiplier=3\n"
      "target.radius_mm=40\nframe.size_mm=1500\nseed=12345678901\n"
      "radius_compensation_mm=40\npositions=100,200 300.5,400\n");
  EXPECT_EQ(cfg.rig.sensor_a.position, (Point2D{10, 5}));
  EXPECT_EQ(cfg.rig.sensor_a.yaw_deg, 40.0);
  EXPECT_EQ(cfg.rig.sensor_b.position, (Point2D{1500, 5}));
  EXPECT_EQ(cfg.rig.sensor_b.zones_per_side, 8);
  EXPECT_EQ(cfg.rig.sensor_b.fov_deg, 45.0);
  EXPECT_EQ(cfg.rig.sensor_a.max_range, 4000.0);
  EXPECT_EQ(cfg.noise.sigma_slope, 2.0);
  EXPECT_EQ(cfg.noise.outlier_shortening_max, 30.0);
  EXPECT_EQ(cfg.noise.ambient_multiplier, 3.0);
  EXPECT_EQ(cfg.rig.target_radius, 40.0);
  EXPECT_EQ(cfg.rig.frame_size, 1500.0);
  EXPECT_EQ(cfg.rig.radius_compensation, 40.0);
  EXPECT_EQ(cfg.seed, 12345678901u);
  EXPECT_EQ(cfg.positions, (std::vector<Point2D>{{100, 200}, {300.5, 400}}));
  EXPECT_EQ(cfg.rig.scene.walls.size(), 3u);
  EXPECT_EQ(cfg.rig.scene.walls[2].b, (Point2D{1500, 1500}));
}

TEST(RigConfig, SensorTwoFollowsFrameSize) {
  EXPECT_EQ(Parse("frame.size_mm=800\n").rig.sensor_b.position, (Point2D{800, 0}));
}

TEST(RigConfig, Errors) {
  EXPECT_THROW(Parse("sensor3.x=1\n"), ParseError);
  EXPECT_THROW(Parse("fov_deg\n"), ParseError);
  EXPECT_THROW(Parse("fov_deg=wide\n"), ParseError);
  EXPECT_THROW(Parse("fov_deg=200\n"), ParseError);
  EXPECT_THROW(Parse("zones=2.5\n"), ParseError);
  EXPECT_THROW(Parse("zones=9\n"), ParseError);
  EXPECT_THROW(Parse("seed=-1\n"), ParseError);
  EXPECT_THROW(Parse("noise.outlier_prob=2\n"), ParseError);
  EXPECT_THROW(Parse("positions=1;2\n"), ParseError);
  EXPECT_THROW(Parse("fov_deg=50\nfov_deg=60\n"), ParseError);
  EXPECT_THROW(Parse("sensor2.x=0\n"), ParseError);  // coincident sensors
  EXPECT_THROW(LoadRigConfig("/nonexistent/rig.cfg"), IoError);
}

TEST(RigConfig, UnknownKeyNamesLine) {
  try {
    Parse("fov_deg=60\n\nbogus=1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("bogus"), std::string::npos);
  }
}

}  // namespace
}  // namespace tofloc
