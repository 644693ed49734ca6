// Copyright 2026 The tofloc Authors
// SPDX-License-Identifier: Apache-2.0

// Line-oriented key=value files. Blank lines and lines starting with '#'
// are ignored; keys may appear only once.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tofloc {

struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
  int value_column = 0;
};

std::vector<KeyValue> ReadKeyValues(std::istream& in, const std::string& source_name);

}  // namespace tofloc
