// Copyright 2026 The tofloc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "tofloc/geometry.hpp"
#include "tofloc/sensor_sim.hpp"

namespace tofloc {

struct TrackEstimate {
  Point2D position;
  double range_a = 0.0;
  double range_b = 0.0;
};

// Per-axis affine correction actual = scale * estimated + offset.
struct CalibrationModel {
  double offset_x = 0.0;
  double offset_y = 0.0;
  double scale_x = 1.0;
  double scale_y = 1.0;

  static CalibrationModel Identity() { return {}; }
  void Validate() const;

  friend bool operator==(const CalibrationModel&, const CalibrationModel&) = default;
};

enum class CalibrationMode { kOffset, kAffine };

CalibrationMode ParseCalibrationMode(const std::string& text);

struct CalibrationFit {
  CalibrationModel model;
  // Set when an affine fit could not determine a scale on some axis and
  // that axis fell back to offset-only.
  bool degenerate_scale = false;
};

struct EstimatePair {
  Point2D estimated;
  Point2D actual;
};

// Smallest non-INVALID reading. Throws NoTarget if every zone is INVALID.
double MinValidReading(const ZoneFrame& frame);

struct EstimateOptions {
  Side side = Side::kLeft;
  double radius_compensation = 0.0;
  std::optional<CalibrationModel> calibration;
};

// Nearest reading per sensor (plus the optional radius compensation)
// triangulated against the baseline, then calibrated if a model is given.
// Propagates NoTarget and DegenerateTriangle.
TrackEstimate EstimatePosition(const ZoneFrame& frame_a, const ZoneFrame& frame_b,
                               const Baseline& baseline,
                               const EstimateOptions& options = {});

Point2D ApplyCalibration(Point2D p, const CalibrationModel& model);

// Least squares per axis. In offset mode offset = mean(actual - estimated).
// Throws InvalidArgument on empty input.
CalibrationFit FitCalibration(std::span<const EstimatePair> pairs,
                              CalibrationMode mode = CalibrationMode::kOffset);

// key=value text with keys offset_x_mm, offset_y_mm, scale_x, scale_y.
void WriteCalibration(std::ostream& out, const CalibrationModel& model);
CalibrationModel ReadCalibration(std::istream& in, const std::string& source_name);

}  // namespace tofloc
