// Copyright 2026 The tofloc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

namespace tofloc {

// Shortest decimal text that parses back to exactly `value`.
std::string FormatNumber(double value);

// Strict finite decimal parse of the whole (trimmed) field. Throws
// ParseError pointing at `line`/`column` of `source`.
double ParseNumber(std::string_view text, const std::string& source, int line,
                   int column);

std::string_view Trim(std::string_view text);

}  // namespace tofloc
