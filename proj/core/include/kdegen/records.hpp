// Copyright 2026 The kdegen Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace kdegen {

inline constexpr int kRecordSchema = 1;

/// One experiment run as emitted by the command-line tool.
///
/// Every key in `outputs` has a matching key in `std_errors` (zero for
/// exact quantities). `metadata` carries units and conventions so the
/// record is self-describing.
struct RunRecord {
  std::string command;
  int n = 0;
  double log_t2 = 0.0;
  double c_log2 = 0.0;
  std::uint64_t seed = 0;
  std::int64_t samples = 0;
  std::map<std::string, double> outputs;
  std::map<std::string, double> std_errors;
  std::map<std::string, std::string> metadata;
  /// Present only when timing was requested; excluded otherwise so that
  /// identical runs serialize identically.
  std::optional<std::int64_t> wall_time_ms;

  void set(const std::string& key, double value, double std_error = 0.0) {
    outputs[key] = value;
    std_errors[key] = std_error;
  }
};

std::string to_json(const RunRecord& r);
RunRecord record_from_json(const std::string& text);

/// Long format, one row per output key, with the header
/// command,n,log_t2,c_log2,key,value,std_error,seed,samples
std::string to_csv(const RunRecord& r);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

}  // namespace kdegen
