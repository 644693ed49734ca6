// Copyright 2026 The tofloc Authors
// SPDX-License-Identifier: Apache-2.0

#include "tofloc/number_format.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "tofloc/errors.hpp"

namespace tofloc {

std::string FormatNumber(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw InvalidArgument("cannot format number");
  return std::string(buf.data(), end);
}

std::string_view Trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

double ParseNumber(std::string_view text, const std::string& source, int line,
                   int column) {
  const std::string_view field = Trim(text);
  std::string_view digits = field;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  double value = 0.0;
  auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(),
                                   value, std::chars_format::general);
  if (field.empty() || ec != std::errc() || end != digits.data() + digits.size() ||
      !std::isfinite(value)) {
    throw ParseError(source, line, column,
                     "expected a number, found '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace tofloc
