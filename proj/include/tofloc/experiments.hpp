// Copyright 2026 The tofloc Authors
// SPDX-License-Identifier: Apache-2.0

// Trial datasets, precision/accuracy statistics, scatter export and
// simulated replications of the four-position tracking protocol.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tofloc/geometry.hpp"
#include "tofloc/sensor_sim.hpp"
#include "tofloc/tracker.hpp"

namespace tofloc {

// One reported position. A failed trial (target lost, inconsistent ranges)
// keeps its slot so trial numbering stays aligned across positions.
struct Trial {
  std::optional<Point2D> estimate;
  std::string failure;

  bool ok() const { return estimate.has_value(); }

  // Failure text is diagnostic only and does not take part in equality.
  friend bool operator==(const Trial& a, const Trial& b) {
    return a.estimate == b.estimate;
  }
};

struct TrialPosition {
  Point2D actual;
  std::vector<Trial> trials;

  std::vector<Point2D> Successful() const;

  friend bool operator==(const TrialPosition&, const TrialPosition&) = default;
};

struct TrialTable {
  std::string experiment_id;
  std::optional<AmbientCondition> lighting;
  std::vector<TrialPosition> positions;

  // At least one position, every position has the same number (>= 1) of
  // trial slots, all coordinates finite.
  void Validate() const;

  std::size_t trial_count() const {
    return positions.empty() ? 0 : positions.front().trials.size();
  }
};

// Trial CSV: header trial,p1_x,p1_y,...,pN_x,pN_y; numbered data rows; a
// final row whose first field is `actual`. A failed trial is written as NA
// in both of its cells.
TrialTable ParseTrials(std::istream& in, const std::string& source_name);
TrialTable LoadTrials(const std::filesystem::path& path);
void WriteTrials(std::ostream& out, const TrialTable& table);
void SaveTrials(const std::filesystem::path& path, const TrialTable& table);

// Population standard deviation (divisor n). Throws InvalidArgument on empty
// input.
double PopulationStd(std::span<const double> values);

// Mean over values of |v - actual| / |actual|, in percent. Throws
// InvalidArgument on empty input or actual == 0.
double PercentError(std::span<const double> values, double actual);

struct AxisStats {
  double std_dev = 0.0;
  double percent_error = 0.0;
};

struct PositionStats {
  AxisStats x;
  AxisStats y;
};

struct StatsReport {
  std::vector<PositionStats> positions;
  double avg_std_dev = 0.0;
  double avg_percent_error = 0.0;
};

// Statistics over successful trials. Averages are the plain mean of the
// 2 * positions per-axis entries.
StatsReport ComputeStats(const TrialTable& table);

// Human-readable notes on positions whose trials sit far from the recorded
// actual (any axis above kAnomalyPercentError).
inline constexpr double kAnomalyPercentError = 50.0;
std::vector<std::string> NoteAnomalies(const TrialTable& table);

// Maps millimetres to SVG user units; y grows upward in mm and downward in
// pixels.
struct SvgViewport {
  double size_px = 600.0;
  double margin_px = 60.0;
  double range_mm = 1000.0;

  double plot_px() const { return size_px - 2.0 * margin_px; }
  double ToPixelX(double x_mm) const { return margin_px + x_mm / range_mm * plot_px(); }
  double ToPixelY(double y_mm) const {
    return size_px - margin_px - y_mm / range_mm * plot_px();
  }
};

// Tidy CSV: position_index,trial_index,x_mm,y_mm,is_actual with 1-based
// indices; actual rows carry trial_index 0. Failed trials are omitted.
void WriteScatterCsv(std::ostream& out, const TrialTable& table);
void WriteScatterSvg(std::ostream& out, const TrialTable& table,
                     const SvgViewport& viewport = {});

struct ScatterFiles {
  std::filesystem::path csv;
  std::filesystem::path svg;
};

// Writes <prefix>.csv and <prefix>.svg. Throws IoError if either cannot be
// written.
ScatterFiles ExportScatter(const TrialTable& table, const std::filesystem::path& prefix);

// Two corner-mounted sensors looking into a square frame.
struct Rig {
  SensorConfig sensor_a;
  SensorConfig sensor_b;
  Scene scene;  // walls only; the target is placed per position
  double frame_size = 1000.0;
  double target_radius = 50.0;
  double radius_compensation = 0.0;

  // Sensors at (0,0) yaw 45 and (size,0) yaw 135 in an OpenFrame(size).
  static Rig Default(double frame_size = 1000.0);

  Baseline baseline() const { return {sensor_a.position, sensor_b.position}; }
  // The side of the baseline holding the frame centre.
  Side interior_side() const;
  void Validate() const;
};

// Independent random stream for one (position, trial) slot.
Rng TrialRng(std::uint64_t seed, std::size_t position_index, std::size_t trial_index);

// For each actual position, places the target, scans both sensors n_trials
// times and records the tracker's estimate. Per-trial NoTarget and
// DegenerateTriangle become flagged failures.
TrialTable RunSimulatedExperiment(const Rig& rig, std::span<const Point2D> actual_positions,
                                  int n_trials, AmbientCondition condition,
                                  const NoiseModel& model, std::uint64_t seed);

}  // namespace tofloc
