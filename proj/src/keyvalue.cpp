// Copyright 2026 The tofloc Authors
// SPDX-License-Identifier: Apache-2.0

#include "tofloc/keyvalue.hpp"

#include <istream>
#include <set>

#include "tofloc/errors.hpp"
#include "tofloc/number_format.hpp"

namespace tofloc {

std::vector<KeyValue> ReadKeyValues(std::istream& in, const std::string& source_name) {
  std::vector<KeyValue> entries;
  std::set<std::string> seen;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = Trim(raw);
    if (text.empty() || text.front() == '#') continue;

    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(source_name, line, 0, "expected key=value");
    }
    KeyValue kv;
    kv.key = std::string(Trim(text.substr(0, eq)));
    kv.value = std::string(Trim(text.substr(eq + 1)));
    kv.line = line;
    kv.value_column = static_cast<int>(raw.find('=')) + 2;
    if (kv.key.empty()) throw ParseError(source_name, line, 1, "empty key");
    if (!seen.insert(kv.key).second) {
      throw ParseError(source_name, line, 1, "duplicate key '" + kv.key + "'");
    }
    entries.push_back(std::move(kv));
  }
  return entries;
}

}  // namespace tofloc
