// Copyright 2026 The kdegen Authors
// SPDX-License-Identifier: Apache-2.0
#include "kdegen/records.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kdegen/errors.hpp"

namespace kdegen {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

std::string to_json(const RunRecord& r) {
  json j;
  j["schema"] = kRecordSchema;
  j["command"] = r.command;
  j["config"] = {{"n", r.n}, {"log_t2", r.log_t2}, {"c_log2", r.c_log2}};
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  j["outputs"] = r.outputs;
  j["std_errors"] = r.std_errors;
  j["metadata"] = r.metadata;
  if (r.wall_time_ms) j["wall_time_ms"] = *r.wall_time_ms;
  return j.dump(2) + "\n";
}

RunRecord record_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (j.at("schema").get<int>() != kRecordSchema) {
    throw Error("unsupported record schema " + j.at("schema").dump());
  }
  RunRecord r;
  r.command = j.at("command").get<std::string>();
  r.n = j.at("config").at("n").get<int>();
  r.log_t2 = j.at("config").at("log_t2").get<double>();
  r.c_log2 = j.at("config").at("c_log2").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.samples = j.at("samples").get<std::int64_t>();
  r.outputs = j.at("outputs").get<std::map<std::string, double>>();
  r.std_errors = j.at("std_errors").get<std::map<std::string, double>>();
  r.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
  if (j.contains("wall_time_ms")) r.wall_time_ms = j["wall_time_ms"].get<std::int64_t>();
  return r;
}

std::string to_csv(const RunRecord& r) {
  std::ostringstream os;
  os << "command,n,log_t2,c_log2,key,value,std_error,seed,samples\n";
  for (const auto& [key, value] : r.outputs) {
    const auto it = r.std_errors.find(key);
    const double se = it == r.std_errors.end() ? 0.0 : it->second;
    os << r.command << ',' << r.n << ',' << format_double(r.log_t2) << ','
       << format_double(r.c_log2) << ',' << key << ',' << format_double(value)
       << ',' << format_double(se) << ',' << r.seed << ',' << r.samples << '\n';
  }
  return os.str();
}

}  // namespace kdegen
