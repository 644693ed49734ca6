// Copyright 2026 The tofloc Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>
#include <vector>

#include "tofloc/cli.hpp"

int main(int argc, char** argv) {
  return tofloc::cli::Run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
