// Copyright 2026 The tofloc Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "tofloc/cli.hpp"
#include "tofloc/errors.hpp"
#include "tofloc/experiments.hpp"
#include "tofloc/geometry.hpp"
#include "tofloc/rig_config.hpp"
#include "tofloc/tracker.hpp"

namespace tofloc {
namespace {

const std::filesystem::path kData = TOFLOC_DATA_DIR;

struct Published {
  std::string file;
  double std_dev[8];
  double avg_std_dev;
  double percent[8];
  double avg_percent;
};

const Published kLit = {"exp1.csv",
                        {10.85, 13.87, 6.14, 11.48, 63.27, 37.40, 36.74, 9.83},
                        23.70,
                        {6.52, 14.52, 3.58, 21.79, 97.18, 8.73, 65.77, 17.05},
                        29.39};
const Published kDark = {"exp2.csv",
                         {8.89, 14.77, 5.82, 4.15, 12.29, 6.86, 18.66, 13.28},
                         10.59,
                         {4.30, 7.03, 2.97, 9.91, 1.58, 2.95, 5.27, 2.27},
                         4.54};

struct Check {
  bool ok = true;
  std::string detail;

  void Expect(bool condition, const std::string& what) {
    if (!condition && ok) detail = what;
    ok = ok && condition;
  }
};

// Runs the CLI in-process and returns its CSV stats rows as numbers:
// row 0 std dev (8 + average), row 1 percent error (8 + average).
std::vector<std::vector<double>> ReplayStatsCsv(const std::string& file, Check& check) {
  std::ostringstream out, err;
  const int code =
      cli::Run({"tofloc", "replay", (kData / file).string(), "--format", "csv"}, out, err);
  check.Expect(code == cli::kOk, "replay " + file + " exit " + std::to_string(code));
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(lines, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    std::getline(cells, cell, ',');  // metric label
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

Check TableReproduction(bool percent) {
  Check check;
  for (const Published* p : {&kLit, &kDark}) {
    // Full-precision values from the library...
    const StatsReport r = ComputeStats(LoadTrials(kData / p->file));
    const double* want = percent ? p->percent : p->std_dev;
    const double want_avg = percent ? p->avg_percent : p->avg_std_dev;
    for (int i = 0; i < 8; ++i) {
      const PositionStats& s = r.positions[i / 2];
      const AxisStats& a = i % 2 == 0 ? s.x : s.y;
      const double got = percent ? a.percent_error : a.std_dev;
      check.Expect(std::abs(got - want[i]) <= 0.01,
                   fmt::format("{} entry {}: {:.4f} vs {}", p->file, i + 1, got, want[i]));
    }
    const double avg = percent ? r.avg_percent_error : r.avg_std_dev;
    check.Expect(std::abs(avg - want_avg) <= 0.01,
                 fmt::format("{} average {:.4f} vs {}", p->file, avg, want_avg));
    // ...and the CLI replay output.
    const auto rows = ReplayStatsCsv(p->file, check);
    check.Expect(rows.size() == 2 && rows[percent ? 1 : 0].size() == 9, "replay csv shape");
    if (rows.size() == 2) {
      const auto& row = rows[percent ? 1 : 0];
      for (std::size_t i = 0; i < 9 && i < row.size(); ++i) {
        const double expected = i < 8 ? want[i] : want_avg;
        check.Expect(std::abs(row[i] - expected) <= 0.01,
                     fmt::format("replay {} column {}: {} vs {}", p->file, i + 1, row[i], expected));
      }
    }
  }
  return check;
}

Check RoundTrip() {
  Check check;
  const Baseline baseline{{0, 0}, {1000, 0}};
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ux(0.0, 1000.0);
  std::uniform_real_distribution<double> uy(1.0, 1000.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Point2D target{ux(rng), uy(rng)};
    const Point2D got = Triangulate(ForwardDistances(target, baseline), baseline, Side::kLeft);
    worst = std::max(worst, Distance(got, target) / Norm(target));
  }
  check.Expect(worst <= 1e-6, "");
  check.detail = fmt::format("worst relative error {:.3g}", worst);
  return check;
}

Check DegenerateHandling() {
  Check check;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> len(50.0, 2000.0);
  std::uniform_real_distribution<double> log_excess(std::log(1.2e-9), std::log(10.0));
  std::uniform_real_distribution<double> inside(0.0, 0.8e-9);
  std::bernoulli_distribution flip(0.5);
  int rejected = 0, accepted = 0;
  for (int i = 0; i < 5000; ++i) {
    const Baseline baseline{{0, 0}, {len(rng), 0}};
    const double a = len(rng);
    const double c = baseline.length();
    const bool violate = i % 2 == 0;
    const double excess = violate ? std::exp(log_excess(rng)) : inside(rng);
    const double sign = flip(rng) ? 1.0 : -1.0;
    const double target_cos = sign * (1.0 + excess);
    const double b2 = a * a + c * c - 2.0 * a * c * target_cos;
    if (b2 <= 0.0) continue;
    const double b = std::sqrt(b2);
    // Classify on the argument the library will actually see.
    const double arg = (a * a + c * c - b * b) / (2.0 * a * c);
    const double actual_excess = std::abs(arg) - 1.0;
    if (std::abs(actual_excess - kCollinearTolerance) < 1e-11) continue;
    if (actual_excess > kCollinearTolerance) {
      try {
        Triangulate({a, b}, baseline, Side::kLeft);
        check.Expect(false, fmt::format("accepted A={} B={} C={} excess {:.3g}", a, b, c,
                                        actual_excess));
      } catch (const DegenerateTriangle&) {
        ++rejected;
      }
    } else {
      try {
        const Point2D p = Triangulate({a, b}, baseline, Side::kLeft);
        check.Expect(std::abs(p.y) <= 1e-3 * a,
                     fmt::format("near-collinear result off the baseline: y={}", p.y));
        ++accepted;
      } catch (const DegenerateTriangle&) {
        check.Expect(false, fmt::format("rejected A={} B={} C={} excess {:.3g}", a, b, c,
                                        actual_excess));
      }
    }
  }
  check.Expect(rejected > 1000 && accepted > 1000, "too few samples on one side");
  if (check.ok) check.detail = fmt::format("{} rejected, {} accepted", rejected, accepted);
  return check;
}

Check NoiselessPipeline() {
  Check check;
  const auto positions = RigConfig::DefaultPositions();
  const Rig base = Rig::Default();
  const double spacing_rad = base.sensor_a.ZoneWidthDeg() * std::numbers::pi / 180.0;

  Rig compensated = base;
  compensated.radius_compensation = 50.0;
  const TrialTable on = RunSimulatedExperiment(compensated, positions, 1,
                                               AmbientCondition::kDark, NoiseModel::Noiseless(), 0);
  double worst_on = 0.0;
  for (const TrialPosition& p : on.positions) {
    check.Expect(p.trials[0].ok(), "compensated trial failed");
    if (p.trials[0].ok()) worst_on = std::max(worst_on, Distance(*p.trials[0].estimate, p.actual));
  }
  check.Expect(worst_on <= 5.0, fmt::format("compensated error {:.3f} mm > 5", worst_on));

  // Without compensation every range is the surface range: short of the
  // center range by the radius, up to the discretization error.
  Scene scene = base.scene;
  double worst_short = 0.0;
  for (const Point2D& actual : positions) {
    scene.target = Circle{actual, base.target_radius};
    const ZoneFrame fa = CastZoneRays(base.sensor_a, scene);
    const ZoneFrame fb = CastZoneRays(base.sensor_b, scene);
    EstimateOptions options;
    options.side = base.interior_side();
    const TrackEstimate e = EstimatePosition(fa, fb, base.baseline(), options);
    const TriangleRanges truth = ForwardDistances(actual, base.baseline());
    for (auto [measured, center] : {std::pair{e.range_a, truth.a}, std::pair{e.range_b, truth.b}}) {
      const double shortfall = center - measured;
      worst_short = std::max(worst_short, shortfall);
      check.Expect(shortfall >= 0.0 && shortfall <= 50.0 + spacing_rad * center,
                   fmt::format("range shortfall {:.3f} mm at ({}, {})", shortfall, actual.x,
                               actual.y));
    }
    const double bound = 50.0 + spacing_rad * std::max(truth.a, truth.b);
    check.Expect(Distance(e.position, actual) <= bound,
                 fmt::format("uncompensated miss {:.1f} mm > {:.1f}", Distance(e.position, actual),
                             bound));
    check.Expect(e.position.y < actual.y, "uncompensated estimate not biased toward sensors");
  }
  if (check.ok) {
    check.detail = fmt::format("compensated worst {:.2g} mm; uncompensated range shortfall {:.2f} mm",
                               worst_on, worst_short);
  }
  return check;
}

Check AmbientContrast() {
  Check check;
  const RigConfig cfg;
  int lit_worse = 0;
  double dark_lo = 1e9, dark_hi = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const double dark = ComputeStats(RunSimulatedExperiment(cfg.rig, cfg.positions, 10,
                                                            AmbientCondition::kDark, cfg.noise,
                                                            seed))
                            .avg_std_dev;
    const double lit = ComputeStats(RunSimulatedExperiment(cfg.rig, cfg.positions, 10,
                                                           AmbientCondition::kArtificialLight,
                                                           cfg.noise, seed))
                           .avg_std_dev;
    if (lit > dark) ++lit_worse;
    dark_lo = std::min(dark_lo, dark);
    dark_hi = std::max(dark_hi, dark);
  }
  check.Expect(lit_worse >= 16, fmt::format("lit > dark in only {}/20 seeds", lit_worse));
  check.Expect(dark_lo >= 5.0 && dark_hi <= 20.0,
               fmt::format("dark avg_std_dev range [{:.2f}, {:.2f}] outside [5, 20]", dark_lo,
                           dark_hi));
  if (check.ok) {
    check.detail = fmt::format("lit > dark in {}/20; dark avg_std_dev in [{:.2f}, {:.2f}] mm",
                               lit_worse, dark_lo, dark_hi);
  }
  return check;
}

Check CalibrationImprovement() {
  Check check;
  const TrialTable table = LoadTrials(kData / "exp2.csv");
  std::vector<EstimatePair> pairs;
  for (const TrialPosition& p : table.positions) {
    for (const Point2D& e : p.Successful()) pairs.push_back({e, p.actual});
  }
  const CalibrationModel model = FitCalibration(pairs, CalibrationMode::kOffset).model;
  TrialTable calibrated = table;
  double residual_y = 0.0;
  for (TrialPosition& p : calibrated.positions) {
    for (Trial& t : p.trials) {
      t.estimate = ApplyCalibration(*t.estimate, model);
      residual_y += p.actual.y - t.estimate->y;
    }
  }
  residual_y /= static_cast<double>(pairs.size());
  const double before = ComputeStats(table).avg_percent_error;
  const double after = ComputeStats(calibrated).avg_percent_error;
  check.Expect(after < before, fmt::format("after {:.4f}% not below before {:.4f}%", after, before));
  check.Expect(std::abs(before - 4.54) <= 0.01, fmt::format("uncalibrated {:.4f}%", before));
  check.Expect(std::abs(residual_y) <= 1e-9, fmt::format("mean y residual {:.3g}", residual_y));
  if (check.ok) {
    check.detail = fmt::format("{:.2f}% -> {:.2f}%, mean y residual {:.1e} mm", before, after,
                               residual_y);
  }
  return check;
}

Check Determinism() {
  Check check;
  const auto dir = std::filesystem::temp_directory_path() / "tofloc_acceptance";
  std::filesystem::create_directories(dir);
  for (const char* ambient : {"dark", "lit"}) {
    std::string contents[2];
    for (int run = 0; run < 2; ++run) {
      const auto out_path = dir / fmt::format("{}_{}.csv", ambient, run);
      std::ostringstream out, err;
      const int code = cli::Run({"tofloc", "simulate", (kData / "rig.cfg").string(), "--trials",
                                 "10", "--ambient", ambient, "--seed", "7", "--out",
                                 out_path.string()},
                                out, err);
      check.Expect(code == cli::kOk, fmt::format("simulate exit {}: {}", code, err.str()));
      std::ifstream in(out_path, std::ios::binary);
      contents[run].assign(std::istreambuf_iterator<char>(in), {});
    }
    check.Expect(!contents[0].empty() && contents[0] == contents[1],
                 fmt::format("{} outputs differ", ambient));
  }
  std::filesystem::remove_all(dir);
  if (check.ok) check.detail = "dark and lit, seed 7: byte-identical";
  return check;
}

struct Criterion {
  const char* name;
  double budget_s;  // 0 = no runtime bound
  std::function<Check()> run;
};

}  // namespace
}  // namespace tofloc

int main() {
  using namespace tofloc;
  const std::vector<Criterion> criteria = {
      {"AC1 std-dev table reproduction (+-0.01 mm)", 1.0, [] { return TableReproduction(false); }},
      {"AC2 percent-error table reproduction (+-0.01 pp)", 1.0,
       [] { return TableReproduction(true); }},
      {"AC3 triangulation round trip, 1000 targets (1e-6 rel)", 1.0, RoundTrip},
      {"AC4 degenerate vs near-collinear handling", 0.0, DegenerateHandling},
      {"AC5 noiseless pipeline and radius bias", 0.0, NoiselessPipeline},
      {"AC6 ambient-light contrast over 20 seeds", 30.0, AmbientContrast},
      {"AC7 offset calibration on dark run", 0.0, CalibrationImprovement},
      {"AC8 simulate determinism", 0.0, Determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    try {
      check = c.run();
    } catch (const std::exception& e) {
      check.ok = false;
      check.detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0.0 && elapsed >= c.budget_s) {
      check.ok = false;
      check.detail = fmt::format("took {:.2f} s, budget {:.0f} s", elapsed, c.budget_s);
    }
    fmt::print("[{}] {} ({:.3f} s){}{}\n", check.ok ? "PASS" : "FAIL", c.name, elapsed,
               check.detail.empty() ? "" : ": ", check.detail);
    if (!check.ok) ++failures;
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
