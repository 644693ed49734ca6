// Copyright 2026 The tofloc Authors
// SPDX-License-Identifier: Apache-2.0

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "tofloc/errors.hpp"
#include "tofloc/experiments.hpp"
#include "tofloc/number_format.hpp"

namespace tofloc {
namespace {

constexpr std::string_view kMissing = "NA";

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::string ExpectedHeader(std::size_t positions) {
  std::string header = "trial";
  for (std::size_t p = 1; p <= positions; ++p) {
    const std::string n = std::to_string(p);
    header += ",p" + n + "_x,p" + n + "_y";
  }
  return header;
}

// Number of positions announced by the header, or 0 if malformed.
std::size_t PositionsInHeader(const std::vector<std::string_view>& fields) {
  if (fields.size() < 3 || fields.size() % 2 == 0 || fields[0] != "trial") return 0;
  const std::size_t n = (fields.size() - 1) / 2;
  for (std::size_t p = 0; p < n; ++p) {
    const std::string idx = std::to_string(p + 1);
    if (fields[1 + 2 * p] != "p" + idx + "_x" || fields[2 + 2 * p] != "p" + idx + "_y") {
      return 0;
    }
  }
  return n;
}

}  // namespace

std::vector<Point2D> TrialPosition::Successful() const {
  std::vector<Point2D> out;
  for (const Trial& t : trials) {
    if (t.estimate) out.push_back(*t.estimate);
  }
  return out;
}

void TrialTable::Validate() const {
  if (positions.empty()) throw InvalidArgument("trial table has no positions");
  const std::size_t n = positions.front().trials.size();
  for (const TrialPosition& p : positions) {
    if (p.trials.empty()) throw InvalidArgument("every position needs at least one trial");
    if (p.trials.size() != n) {
      throw InvalidArgument("every position needs the same number of trials");
    }
    if (!IsFinite(p.actual)) throw InvalidArgument("actual position must be finite");
    for (const Trial& t : p.trials) {
      if (t.estimate && !IsFinite(*t.estimate)) {
        throw InvalidArgument("trial estimate must be finite");
      }
    }
  }
}

TrialTable ParseTrials(std::istream& in, const std::string& source_name) {
  TrialTable table;
  table.experiment_id = std::filesystem::path(source_name).stem().string();

  std::string raw;
  int line = 0;
  std::size_t n_positions = 0;
  bool saw_actual = false;

  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = Trim(raw);
    if (text.empty()) continue;
    const auto fields = SplitFields(text);

    if (n_positions == 0) {
      n_positions = PositionsInHeader(fields);
      if (n_positions == 0) {
        throw ParseError(source_name, line, 0,
                         "bad header; expected " + ExpectedHeader(4) +
                             " (or the same pattern for N positions)");
      }
      table.positions.resize(n_positions);
      continue;
    }
    if (saw_actual) {
      throw ParseError(source_name, line, 1, "data after the 'actual' row");
    }
    if (fields.size() != 1 + 2 * n_positions) {
      const int column = static_cast<int>(std::min(fields.size(), 1 + 2 * n_positions)) + 1;
      throw ParseError(source_name, line, column,
                       "expected " + std::to_string(1 + 2 * n_positions) +
                           " fields, found " + std::to_string(fields.size()));
    }

    const bool is_actual = fields[0] == "actual";
    if (!is_actual) {
      long trial_number = 0;
      auto [end, ec] = std::from_chars(fields[0].data(),
                                       fields[0].data() + fields[0].size(), trial_number);
      if (ec != std::errc() || end != fields[0].data() + fields[0].size() ||
          trial_number < 1) {
        throw ParseError(source_name, line, 1,
                         "expected a trial number or 'actual', found '" +
                             std::string(fields[0]) + "'");
      }
    }

    for (std::size_t p = 0; p < n_positions; ++p) {
      const int col_x = static_cast<int>(2 + 2 * p);
      const int col_y = col_x + 1;
      const std::string_view fx = fields[1 + 2 * p];
      const std::string_view fy = fields[2 + 2 * p];
      if (!is_actual && (fx == kMissing || fy == kMissing)) {
        if (fx != fy) {
          throw ParseError(source_name, line, fx == kMissing ? col_y : col_x,
                           "a failed trial needs NA in both x and y");
        }
        table.positions[p].trials.push_back({std::nullopt, "recorded as NA"});
        continue;
      }
      const Point2D value{ParseNumber(fx, source_name, line, col_x),
                          ParseNumber(fy, source_name, line, col_y)};
      if (is_actual) {
        table.positions[p].actual = value;
      } else {
        table.positions[p].trials.push_back({value, {}});
      }
    }
    saw_actual = is_actual;
    if (is_actual && table.positions.front().trials.empty()) {
      throw ParseError(source_name, line, 1, "no trial rows before 'actual'");
    }
  }

  if (n_positions == 0) throw ParseError(source_name, line, 0, "empty file; no header");
  if (table.positions.front().trials.empty()) {
    throw ParseError(source_name, line, 0, "no data rows");
  }
  if (!saw_actual) throw ParseError(source_name, line, 0, "missing 'actual' row");
  return table;
}

TrialTable LoadTrials(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trial data '" + path.string() + "'");
  return ParseTrials(in, path.string());
}

void WriteTrials(std::ostream& out, const TrialTable& table) {
  table.Validate();
  out << ExpectedHeader(table.positions.size()) << '\n';
  for (std::size_t t = 0; t < table.trial_count(); ++t) {
    out << t + 1;
    for (const TrialPosition& p : table.positions) {
      const Trial& trial = p.trials[t];
      if (trial.estimate) {
        out << ',' << FormatNumber(trial.estimate->x) << ','
            << FormatNumber(trial.estimate->y);
      } else {
        out << ',' << kMissing << ',' << kMissing;
      }
    }
    out << '\n';
  }
  out << "actual";
  for (const TrialPosition& p : table.positions) {
    out << ',' << FormatNumber(p.actual.x) << ',' << FormatNumber(p.actual.y);
  }
  out << '\n';
}

void SaveTrials(const std::filesystem::path& path, const TrialTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  WriteTrials(out, table);
  if (!out.flush()) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace tofloc
