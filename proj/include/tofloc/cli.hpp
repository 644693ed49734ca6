// Copyright 2026 The tofloc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tofloc/experiments.hpp"

namespace tofloc::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDataError = 2,
  kRuntimeError = 3,
};

// Runs the command line `args` (args[0] is the program name) and returns
// the process exit code. Reports go to `out`, diagnostics to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Paper-style tables: one row per metric with eight per-axis columns and
// the average, each followed by an "Average <value>" summary line.
std::string FormatStatsText(const std::string& label, const StatsReport& report);
std::string FormatStatsCsv(const StatsReport& report);

}  // namespace tofloc::cli
