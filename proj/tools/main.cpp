// Copyright 2026 The kdegen Authors
// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kdegen::cli::parse_and_dispatch(args, std::cout, std::cerr);
}
