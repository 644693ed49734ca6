// Copyright 2026 The tofloc Authors
// SPDX-License-Identifier: Apache-2.0

#include "tofloc/tracker.hpp"

#include <cmath>
#include <map>
#include <ostream>

#include "tofloc/errors.hpp"
#include "tofloc/keyvalue.hpp"
#include "tofloc/number_format.hpp"

namespace tofloc {
namespace {

struct AxisFit {
  double scale = 1.0;
  double offset = 0.0;
  bool degenerate = false;
};

AxisFit FitAxis(std::span<const EstimatePair> pairs, double Point2D::*axis,
                CalibrationMode mode) {
  const double n = static_cast<double>(pairs.size());
  double mean_est = 0.0;
  double mean_act = 0.0;
  for (const auto& p : pairs) {
    mean_est += p.estimated.*axis;
    mean_act += p.actual.*axis;
  }
  mean_est /= n;
  mean_act /= n;

  AxisFit fit;
  fit.offset = mean_act - mean_est;
  if (mode == CalibrationMode::kOffset) return fit;

  double cov = 0.0;
  double var_est = 0.0;
  double var_act = 0.0;
  for (const auto& p : pairs) {
    const double de = p.estimated.*axis - mean_est;
    const double da = p.actual.*axis - mean_act;
    cov += de * da;
    var_est += de * de;
    var_act += da * da;
  }
  if (var_est == 0.0 || var_act == 0.0 || !(cov / var_est > 0.0)) {
    fit.degenerate = true;
    return fit;
  }
  fit.scale = cov / var_est;
  fit.offset = mean_act - fit.scale * mean_est;
  return fit;
}

}  // namespace

void CalibrationModel::Validate() const {
  if (!std::isfinite(offset_x) || !std::isfinite(offset_y) ||
      !std::isfinite(scale_x) || !std::isfinite(scale_y) || !(scale_x > 0.0) ||
      !(scale_y > 0.0)) {
    throw InvalidArgument("calibration needs finite offsets and positive scales");
  }
}

CalibrationMode ParseCalibrationMode(const std::string& text) {
  if (text == "offset") return CalibrationMode::kOffset;
  if (text == "affine") return CalibrationMode::kAffine;
  throw InvalidArgument("unknown calibration mode '" + text + "'");
}

double MinValidReading(const ZoneFrame& frame) {
  std::optional<double> best;
  for (const auto& r : frame.readings()) {
    if (r && (!best || *r < *best)) best = r;
  }
  if (!best) throw NoTarget("no valid zone reading; target out of view");
  return *best;
}

TrackEstimate EstimatePosition(const ZoneFrame& frame_a, const ZoneFrame& frame_b,
                               const Baseline& baseline,
                               const EstimateOptions& options) {
  TrackEstimate estimate;
  estimate.range_a = MinValidReading(frame_a) + options.radius_compensation;
  estimate.range_b = MinValidReading(frame_b) + options.radius_compensation;
  estimate.position =
      Triangulate({estimate.range_a, estimate.range_b}, baseline, options.side);
  if (options.calibration) {
    estimate.position = ApplyCalibration(estimate.position, *options.calibration);
  }
  return estimate;
}

Point2D ApplyCalibration(Point2D p, const CalibrationModel& model) {
  return {model.scale_x * p.x + model.offset_x, model.scale_y * p.y + model.offset_y};
}

CalibrationFit FitCalibration(std::span<const EstimatePair> pairs,
                              CalibrationMode mode) {
  if (pairs.empty()) {
    throw InvalidArgument("calibration needs at least one (estimate, actual) pair");
  }
  const AxisFit x = FitAxis(pairs, &Point2D::x, mode);
  const AxisFit y = FitAxis(pairs, &Point2D::y, mode);
  return {{x.offset, y.offset, x.scale, y.scale}, x.degenerate || y.degenerate};
}

void WriteCalibration(std::ostream& out, const CalibrationModel& model) {
  out << "offset_x_mm=" << FormatNumber(model.offset_x) << '\n'
      << "offset_y_mm=" << FormatNumber(model.offset_y) << '\n'
      << "scale_x=" << FormatNumber(model.scale_x) << '\n'
      << "scale_y=" << FormatNumber(model.scale_y) << '\n';
}

CalibrationModel ReadCalibration(std::istream& in, const std::string& source_name) {
  CalibrationModel model;
  const std::map<std::string, double*> fields = {
      {"offset_x_mm", &model.offset_x},
      {"offset_y_mm", &model.offset_y},
      {"scale_x", &model.scale_x},
      {"scale_y", &model.scale_y},
  };
  for (const KeyValue& kv : ReadKeyValues(in, source_name)) {
    auto it = fields.find(kv.key);
    if (it == fields.end()) {
      throw ParseError(source_name, kv.line, 1, "unknown key '" + kv.key + "'");
    }
    *it->second = ParseNumber(kv.value, source_name, kv.line, kv.value_column);
  }
  try {
    model.Validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(source_name, 0, 0, e.what());
  }
  return model;
}

}  // namespace tofloc
