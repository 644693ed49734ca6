// Copyright 2026 The tofloc Authors
// SPDX-License-Identifier: Apache-2.0

#include "tofloc/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "tofloc/errors.hpp"
#include "tofloc/rig_config.hpp"
#include "tofloc/tracker.hpp"

namespace tofloc::cli {
namespace {

// Input that could not be read at all; reported like a parse error.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

TrialTable LoadData(const std::string& path) {
  try {
    return LoadTrials(path);
  } catch (const IoError& e) {
    throw DataError(e.what());
  }
}

RigConfig LoadConfig(const std::string& path) {
  try {
    return LoadRigConfig(path);
  } catch (const IoError& e) {
    throw DataError(e.what());
  }
}

std::string Header(std::string_view metric, std::size_t positions) {
  std::string line = fmt::format("{:<20}", metric);
  for (std::size_t p = 1; p <= positions; ++p) {
    line += fmt::format("{:>14}{:>14}", fmt::format("Position {} x", p),
                        fmt::format("Position {} y", p));
  }
  return line + fmt::format("{:>10}\n", "Average");
}

struct ReplayOptions {
  std::string data;
  std::string report = "stats";
  std::string format = "text";
  std::string out_prefix;
  bool note_anomalies = false;
};

struct SimulateOptions {
  std::string config;
  int trials = 10;
  std::string ambient = "dark";
  std::string out;
  std::optional<std::uint64_t> seed;
};

struct CalibrateOptions {
  std::string data;
  std::string mode = "offset";
  std::string out;
};

struct PlotOptions {
  std::string data;
  std::string out;
};

void WriteScatterText(std::ostream& out, const TrialTable& table) {
  fmt::print(out, "{:>8} {:>6} {:>10} {:>10} {:>7}\n", "position", "trial", "x_mm", "y_mm",
             "actual");
  for (std::size_t p = 0; p < table.positions.size(); ++p) {
    const TrialPosition& position = table.positions[p];
    for (std::size_t t = 0; t < position.trials.size(); ++t) {
      if (const auto& e = position.trials[t].estimate) {
        fmt::print(out, "{:>8} {:>6} {:>10} {:>10} {:>7}\n", p + 1, t + 1, e->x, e->y, "");
      }
    }
    fmt::print(out, "{:>8} {:>6} {:>10} {:>10} {:>7}\n", p + 1, "-", position.actual.x,
               position.actual.y, "yes");
  }
}

int Replay(const ReplayOptions& opt, std::ostream& out, std::ostream& err) {
  const TrialTable table = LoadData(opt.data);
  const bool stats = opt.report != "scatter";
  const bool scatter = opt.report != "stats";

  if (stats) {
    const StatsReport report = ComputeStats(table);
    if (opt.format == "csv") {
      out << FormatStatsCsv(report);
    } else {
      fmt::print(out, "# {} ({}): {} positions x {} trials\n", table.experiment_id, opt.data,
                 table.positions.size(), table.trial_count());
      out << FormatStatsText(table.experiment_id, report);
    }
  }
  if (opt.note_anomalies) {
    for (const std::string& note : NoteAnomalies(table)) err << "anomaly: " << note << '\n';
  }
  if (scatter) {
    if (!opt.out_prefix.empty()) {
      const ScatterFiles files = ExportScatter(table, opt.out_prefix);
      fmt::print(out, "wrote {}\nwrote {}\n", files.csv.string(), files.svg.string());
    } else if (opt.format == "csv") {
      WriteScatterCsv(out, table);
    } else {
      if (stats) out << '\n';
      WriteScatterText(out, table);
    }
  }
  return kOk;
}

int Simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  const RigConfig cfg = LoadConfig(opt.config);
  const AmbientCondition condition = ParseAmbientCondition(opt.ambient);
  const std::uint64_t seed = opt.seed.value_or(cfg.seed);

  TrialTable table =
      RunSimulatedExperiment(cfg.rig, cfg.positions, opt.trials, condition, cfg.noise, seed);
  SaveTrials(opt.out, table);

  fmt::print(out, "# simulate config={} ambient={} trials={} seed={}\n", opt.config,
             ToString(condition), opt.trials, seed);
  fmt::print(out, "wrote {}\n", opt.out);

  bool position_lost = false;
  for (std::size_t p = 0; p < table.positions.size(); ++p) {
    const auto& trials = table.positions[p].trials;
    std::size_t failed = 0;
    for (std::size_t t = 0; t < trials.size(); ++t) {
      if (trials[t].ok()) continue;
      ++failed;
      fmt::print(err, "position {} trial {} failed: {}\n", p + 1, t + 1, trials[t].failure);
    }
    if (failed == trials.size()) {
      fmt::print(err, "position {}: every trial failed\n", p + 1);
      position_lost = true;
    }
  }
  if (position_lost) return kRuntimeError;

  out << FormatStatsText(table.experiment_id, ComputeStats(table));
  return kOk;
}

int Calibrate(const CalibrateOptions& opt, std::ostream& out, std::ostream& err) {
  const TrialTable table = LoadData(opt.data);
  const CalibrationMode mode = ParseCalibrationMode(opt.mode);

  std::vector<EstimatePair> pairs;
  for (const TrialPosition& position : table.positions) {
    for (const Point2D& estimate : position.Successful()) {
      pairs.push_back({estimate, position.actual});
    }
  }
  const CalibrationFit fit = FitCalibration(pairs, mode);
  if (fit.degenerate_scale) {
    err << "warning: scale not identifiable on at least one axis; fell back to offset-only\n";
  }

  TrialTable calibrated = table;
  double residual_x = 0.0;
  double residual_y = 0.0;
  for (TrialPosition& position : calibrated.positions) {
    for (Trial& trial : position.trials) {
      if (!trial.estimate) continue;
      trial.estimate = ApplyCalibration(*trial.estimate, fit.model);
      residual_x += position.actual.x - trial.estimate->x;
      residual_y += position.actual.y - trial.estimate->y;
    }
  }
  const double n = static_cast<double>(pairs.size());

  if (!opt.out.empty()) {
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) throw IoError("cannot write '" + opt.out + "'");
    WriteCalibration(file, fit.model);
    if (!file.flush()) throw IoError("write to '" + opt.out + "' failed");
  }

  fmt::print(out, "# calibrate {} mode={} pairs={}\n", opt.data, opt.mode, pairs.size());
  WriteCalibration(out, fit.model);
  fmt::print(out, "before avg_percent_error {:.2f}%\n", ComputeStats(table).avg_percent_error);
  fmt::print(out, "after avg_percent_error {:.2f}%\n",
             ComputeStats(calibrated).avg_percent_error);
  fmt::print(out, "mean residual x {:.3g} mm, y {:.3g} mm\n", residual_x / n, residual_y / n);
  if (!opt.out.empty()) fmt::print(out, "wrote {}\n", opt.out);
  return kOk;
}

int Plot(const PlotOptions& opt, std::ostream& out) {
  const TrialTable table = LoadData(opt.data);
  std::ofstream file(opt.out, std::ios::binary);
  if (!file) throw IoError("cannot write '" + opt.out + "'");
  WriteScatterSvg(file, table);
  if (!file.flush()) throw IoError("write to '" + opt.out + "' failed");
  fmt::print(out, "wrote {}\n", opt.out);
  return kOk;
}

}  // namespace

std::string FormatStatsText(const std::string& label, const StatsReport& report) {
  std::string text = Header("Standard Deviation", report.positions.size());
  text += fmt::format("{:<20}", label);
  for (const PositionStats& s : report.positions) {
    text += fmt::format("{:>14.2f}{:>14.2f}", s.x.std_dev, s.y.std_dev);
  }
  text += fmt::format("{:>10.2f}\n", report.avg_std_dev);
  text += fmt::format("Average {:.2f}\n\n", report.avg_std_dev);

  text += Header("Percent Error", report.positions.size());
  text += fmt::format("{:<20}", label);
  for (const PositionStats& s : report.positions) {
    text += fmt::format("{:>14}{:>14}", fmt::format("{:.2f}%", s.x.percent_error),
                        fmt::format("{:.2f}%", s.y.percent_error));
  }
  text += fmt::format("{:>10}\n", fmt::format("{:.2f}%", report.avg_percent_error));
  text += fmt::format("Average {:.2f}%\n", report.avg_percent_error);
  return text;
}

std::string FormatStatsCsv(const StatsReport& report) {
  std::string header = "metric";
  std::string std_row = "std_dev_mm";
  std::string pct_row = "percent_error";
  for (std::size_t p = 0; p < report.positions.size(); ++p) {
    const PositionStats& s = report.positions[p];
    header += fmt::format(",p{0}_x,p{0}_y", p + 1);
    std_row += fmt::format(",{:.2f},{:.2f}", s.x.std_dev, s.y.std_dev);
    pct_row += fmt::format(",{:.2f},{:.2f}", s.x.percent_error, s.y.percent_error);
  }
  return fmt::format("{},average\n{},{:.2f}\n{},{:.2f}\n", header, std_row,
                     report.avg_std_dev, pct_row, report.avg_percent_error);
}

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-sensor infrared time-of-flight tracking: replay, simulate, calibrate, plot"};
  app.require_subcommand(1);

  ReplayOptions replay;
  auto* replay_cmd = app.add_subcommand("replay", "Statistics and scatter data for a trial CSV");
  replay_cmd->add_option("data", replay.data, "Trial data CSV")->required();
  replay_cmd->add_option("--report", replay.report, "stats, scatter or both")
      ->check(CLI::IsMember({"stats", "scatter", "both"}));
  replay_cmd->add_option("--format", replay.format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}));
  replay_cmd->add_option("--out-prefix", replay.out_prefix,
                         "Write scatter files <prefix>.csv and <prefix>.svg");
  replay_cmd->add_flag("--note-anomalies", replay.note_anomalies,
                       "Report positions whose trials sit far from the recorded actual");

  SimulateOptions simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Simulate the four-position protocol");
  simulate_cmd->add_option("config", simulate.config, "Rig configuration file")->required();
  simulate_cmd->add_option("--trials", simulate.trials, "Trials per position")
      ->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--ambient", simulate.ambient, "dark or lit")
      ->check(CLI::IsMember({"dark", "lit"}));
  simulate_cmd->add_option("--out", simulate.out, "Output trial CSV")->required();
  simulate_cmd->add_option("--seed", simulate.seed, "Random seed (default: config seed, 0)");

  CalibrateOptions calibrate;
  auto* calibrate_cmd = app.add_subcommand("calibrate", "Fit a per-axis calibration model");
  calibrate_cmd->add_option("data", calibrate.data, "Trial data CSV")->required();
  calibrate_cmd->add_option("--mode", calibrate.mode, "offset or affine")
      ->check(CLI::IsMember({"offset", "affine"}));
  calibrate_cmd->add_option("--out", calibrate.out, "Write the model (key=value)");

  PlotOptions plot;
  auto* plot_cmd = app.add_subcommand("plot", "Write an SVG scatter plot");
  plot_cmd->add_option("data", plot.data, "Trial data CSV")->required();
  plot_cmd->add_option("--out", plot.out, "Output SVG")->required();

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*replay_cmd) return Replay(replay, out, err);
    if (*simulate_cmd) return Simulate(simulate, out, err);
    if (*calibrate_cmd) return Calibrate(calibrate, out, err);
    if (*plot_cmd) return Plot(plot, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsage;
}

}  // namespace tofloc::cli
