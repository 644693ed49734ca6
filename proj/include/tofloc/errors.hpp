// Copyright 2026 The tofloc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace tofloc {

// Argument outside an operation's domain (negative time, coincident points,
// empty input, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Ranges and baseline do not form a triangle.
class DegenerateTriangle : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every zone of a frame is INVALID; the target left the field of view.
class NoTarget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed data or configuration file. Line and column are 1-based; 0
// means the whole line (column) or the whole file (line).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, int column,
             const std::string& message)
      : std::runtime_error(source +
                           (line > 0 ? ":" + std::to_string(line) : "") +
                           (line > 0 && column > 0 ? ":" + std::to_string(column) : "") +
                           ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tofloc
