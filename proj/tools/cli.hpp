// Copyright 2026 The kdegen Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kdegen::cli {

/// Exit codes: 0 success, 1 usage or input error, 2 a verified identity or
/// bound failed (IdentityViolation, InvariantViolation, FitError).
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCheckFailed = 2;

/// Parses `args` (without the program name), runs the subcommand and
/// writes records to `out` (or to --out) and diagnostics to `err`.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err);

}  // namespace kdegen::cli
