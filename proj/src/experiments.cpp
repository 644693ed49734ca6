// Copyright 2026 The tofloc Authors
// SPDX-License-Identifier: Apache-2.0

#include "tofloc/experiments.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "tofloc/errors.hpp"

namespace tofloc {
namespace {

std::vector<double> Axis(std::span<const Point2D> points, double Point2D::*axis) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const Point2D& p : points) out.push_back(p.*axis);
  return out;
}

constexpr std::array<std::string_view, 8> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
    "#9467bd", "#8c564b", "#e377c2", "#17becf",
};

}  // namespace

double PopulationStd(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("standard deviation of an empty list");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double sum_sq = 0.0;
  for (double v : values) sum_sq += (v - mean) * (v - mean);
  return std::sqrt(sum_sq / n);
}

double PercentError(std::span<const double> values, double actual) {
  if (values.empty()) throw InvalidArgument("percent error of an empty list");
  if (actual == 0.0) throw InvalidArgument("percent error against an actual of zero");
  double sum = 0.0;
  for (double v : values) sum += std::abs(v - actual) / std::abs(actual);
  return 100.0 * sum / static_cast<double>(values.size());
}

StatsReport ComputeStats(const TrialTable& table) {
  table.Validate();
  StatsReport report;
  double sum_std = 0.0;
  double sum_pct = 0.0;
  for (const TrialPosition& position : table.positions) {
    const std::vector<Point2D> trials = position.Successful();
    const auto xs = Axis(trials, &Point2D::x);
    const auto ys = Axis(trials, &Point2D::y);
    PositionStats s;
    s.x = {PopulationStd(xs), PercentError(xs, position.actual.x)};
    s.y = {PopulationStd(ys), PercentError(ys, position.actual.y)};
    sum_std += s.x.std_dev + s.y.std_dev;
    sum_pct += s.x.percent_error + s.y.percent_error;
    report.positions.push_back(s);
  }
  const double entries = 2.0 * static_cast<double>(table.positions.size());
  report.avg_std_dev = sum_std / entries;
  report.avg_percent_error = sum_pct / entries;
  return report;
}

std::vector<std::string> NoteAnomalies(const TrialTable& table) {
  std::vector<std::string> notes;
  const StatsReport report = ComputeStats(table);
  for (std::size_t i = 0; i < table.positions.size(); ++i) {
    const PositionStats& s = report.positions[i];
    if (s.x.percent_error <= kAnomalyPercentError &&
        s.y.percent_error <= kAnomalyPercentError) {
      continue;
    }
    const std::vector<Point2D> trials = table.positions[i].Successful();
    Point2D centroid;
    for (const Point2D& p : trials) centroid = centroid + p;
    centroid = (1.0 / static_cast<double>(trials.size())) * centroid;
    const Point2D actual = table.positions[i].actual;
    notes.push_back(fmt::format(
        "position {}: trial centroid ({:.1f}, {:.1f}) is {:.1f} mm from the "
        "recorded actual ({}, {}); percent error x {:.2f}%, y {:.2f}%",
        i + 1, centroid.x, centroid.y, Distance(centroid, actual), actual.x,
        actual.y, s.x.percent_error, s.y.percent_error));
  }
  return notes;
}

void WriteScatterCsv(std::ostream& out, const TrialTable& table) {
  table.Validate();
  out << "position_index,trial_index,x_mm,y_mm,is_actual\n";
  for (std::size_t p = 0; p < table.positions.size(); ++p) {
    const TrialPosition& position = table.positions[p];
    for (std::size_t t = 0; t < position.trials.size(); ++t) {
      const auto& e = position.trials[t].estimate;
      if (!e) continue;
      fmt::print(out, "{},{},{},{},0\n", p + 1, t + 1, e->x, e->y);
    }
    fmt::print(out, "{},0,{},{},1\n", p + 1, position.actual.x, position.actual.y);
  }
}

void WriteScatterSvg(std::ostream& out, const TrialTable& table,
                     const SvgViewport& viewport) {
  table.Validate();
  const double size = viewport.size_px;
  const double lo = viewport.ToPixelX(0.0);
  const double hi = viewport.ToPixelX(viewport.range_mm);
  const double base = viewport.ToPixelY(0.0);
  const double top = viewport.ToPixelY(viewport.range_mm);

  fmt::print(out,
             "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" "
             "viewBox=\"0 0 {0} {0}\">\n",
             size);
  fmt::print(out,
             "<!-- transform: px = {0} + x_mm * {1}; py = {2} - y_mm * {1} -->\n",
             viewport.margin_px, viewport.plot_px() / viewport.range_mm,
             size - viewport.margin_px);
  fmt::print(out, "<title>{}</title>\n",
             table.experiment_id.empty() ? "trials" : table.experiment_id);
  fmt::print(out, "<rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{0}\" fill=\"white\"/>\n",
             size);

  out << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\" font-family=\"sans-serif\" "
         "font-size=\"12\">\n";
  fmt::print(out, "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", lo, base, hi, base);
  fmt::print(out, "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", lo, base, lo, top);
  for (int tick = 0; tick <= 5; ++tick) {
    const double mm = viewport.range_mm * tick / 5.0;
    const double px = viewport.ToPixelX(mm);
    const double py = viewport.ToPixelY(mm);
    fmt::print(out, "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\"/>\n", px, base,
               base + 5);
    fmt::print(out,
               "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" stroke=\"none\">{}</text>\n",
               px, base + 20, mm);
    fmt::print(out, "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\"/>\n", lo, py, lo - 5);
    fmt::print(out,
               "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" stroke=\"none\">{}</text>\n",
               lo - 8, py + 4, mm);
  }
  fmt::print(out,
             "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" stroke=\"none\">x (mm)</text>\n",
             (lo + hi) / 2, size - 15);
  fmt::print(out,
             "<text x=\"15\" y=\"{0}\" text-anchor=\"middle\" stroke=\"none\" "
             "transform=\"rotate(-90 15 {0})\">y (mm)</text>\n",
             (base + top) / 2);
  out << "</g>\n";

  constexpr double kDotRadius = 4.0;
  constexpr double kSquareSide = 10.0;
  for (std::size_t p = 0; p < table.positions.size(); ++p) {
    const TrialPosition& position = table.positions[p];
    const std::string_view color = kPalette[p % kPalette.size()];
    fmt::print(out, "<g class=\"position\" data-position=\"{}\" fill=\"{}\">\n", p + 1, color);
    for (std::size_t t = 0; t < position.trials.size(); ++t) {
      const auto& e = position.trials[t].estimate;
      if (!e) continue;
      fmt::print(out,
                 "<circle class=\"trial\" data-trial=\"{}\" data-x-mm=\"{}\" "
                 "data-y-mm=\"{}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n",
                 t + 1, e->x, e->y, viewport.ToPixelX(e->x), viewport.ToPixelY(e->y),
                 kDotRadius);
    }
    const Point2D a = position.actual;
    fmt::print(out,
               "<rect class=\"actual\" data-x-mm=\"{}\" data-y-mm=\"{}\" x=\"{}\" "
               "y=\"{}\" width=\"{}\" height=\"{}\" stroke=\"black\"/>\n",
               a.x, a.y, viewport.ToPixelX(a.x) - kSquareSide / 2,
               viewport.ToPixelY(a.y) - kSquareSide / 2, kSquareSide, kSquareSide);
    out << "</g>\n";
  }
  out << "</svg>\n";
}

ScatterFiles ExportScatter(const TrialTable& table, const std::filesystem::path& prefix) {
  ScatterFiles files{prefix, prefix};
  files.csv += ".csv";
  files.svg += ".svg";

  std::ofstream csv(files.csv, std::ios::binary);
  if (!csv) throw IoError("cannot write '" + files.csv.string() + "'");
  WriteScatterCsv(csv, table);
  std::ofstream svg(files.svg, std::ios::binary);
  if (!svg) throw IoError("cannot write '" + files.svg.string() + "'");
  WriteScatterSvg(svg, table);
  if (!csv.flush() || !svg.flush()) throw IoError("scatter export failed");
  return files;
}

Rig Rig::Default(double frame_size) {
  Rig rig;
  rig.frame_size = frame_size;
  rig.scene = Scene::OpenFrame(frame_size);
  rig.sensor_a.position = {0.0, 0.0};
  rig.sensor_a.yaw_deg = 45.0;
  rig.sensor_b.position = {frame_size, 0.0};
  rig.sensor_b.yaw_deg = 135.0;
  return rig;
}

Side Rig::interior_side() const {
  return SideOf(baseline(), {frame_size / 2.0, frame_size / 2.0});
}

void Rig::Validate() const {
  sensor_a.Validate();
  sensor_b.Validate();
  scene.Validate();
  (void)baseline();
  if (!(frame_size > 0.0) || !(target_radius > 0.0) || !std::isfinite(frame_size) ||
      !std::isfinite(target_radius) || !std::isfinite(radius_compensation)) {
    throw InvalidArgument("rig needs positive frame size and target radius");
  }
}

Rng TrialRng(std::uint64_t seed, std::size_t position_index, std::size_t trial_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(position_index),
                    static_cast<std::uint32_t>(trial_index)};
  return Rng(seq);
}

TrialTable RunSimulatedExperiment(const Rig& rig, std::span<const Point2D> actual_positions,
                                  int n_trials, AmbientCondition condition,
                                  const NoiseModel& model, std::uint64_t seed) {
  rig.Validate();
  model.Validate();
  if (n_trials < 1) throw InvalidArgument("need at least one trial per position");
  if (actual_positions.empty()) throw InvalidArgument("need at least one position");
  for (const Point2D& p : actual_positions) {
    if (!IsFinite(p) || p.x < 0.0 || p.y < 0.0 || p.x > rig.frame_size ||
        p.y > rig.frame_size) {
      throw InvalidArgument(fmt::format("position ({}, {}) lies outside the frame", p.x, p.y));
    }
  }

  const Baseline baseline = rig.baseline();
  EstimateOptions options;
  options.side = rig.interior_side();
  options.radius_compensation = rig.radius_compensation;

  TrialTable table;
  table.experiment_id = fmt::format("sim-{}-seed{}", ToString(condition), seed);
  table.lighting = condition;
  for (std::size_t p = 0; p < actual_positions.size(); ++p) {
    TrialPosition position;
    position.actual = actual_positions[p];
    Scene scene = rig.scene;
    scene.target = Circle{position.actual, rig.target_radius};
    for (int t = 0; t < n_trials; ++t) {
      Rng rng = TrialRng(seed, p, static_cast<std::size_t>(t));
      const ZoneFrame frame_a = Scan(rig.sensor_a, scene, model, condition, rng);
      const ZoneFrame frame_b = Scan(rig.sensor_b, scene, model, condition, rng);
      Trial trial;
      try {
        trial.estimate = EstimatePosition(frame_a, frame_b, baseline, options).position;
      } catch (const NoTarget& e) {
        trial.failure = e.what();
      } catch (const DegenerateTriangle& e) {
        trial.failure = e.what();
      }
      position.trials.push_back(std::move(trial));
    }
    table.positions.push_back(std::move(position));
  }
  return table;
}

}  // namespace tofloc
