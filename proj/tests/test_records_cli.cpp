// Copyright 2026 The kdegen Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "kdegen/records.hpp"

using namespace kdegen;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::parse_and_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::map<std::string, double> csv_values(const std::string& csv) {
  std::map<std::string, double> values;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(cell);
    REQUIRE(cols.size() == 9);
    values[cols[4]] = std::stod(cols[5]);
  }
  return values;
}

}  // namespace

TEST_CASE("RunRecord JSON round trip") {
  std::mt19937_64 engine(5);
  std::uniform_real_distribution<double> exponent(-300, 300);
  std::uniform_real_distribution<double> mant(-1, 1);
  for (int trial = 0; trial < 200; ++trial) {
    RunRecord r;
    r.command = "wp-ratio";
    r.n = 1 + trial % 3;
    r.log_t2 = mant(engine) * 1e3;
    r.c_log2 = -std::abs(mant(engine));
    r.seed = engine();
    r.samples = static_cast<std::int64_t>(engine() >> 20);
    for (int k = 0; k < 5; ++k) {
      r.set("key" + std::to_string(k), mant(engine) * std::pow(10.0, exponent(engine)),
            std::abs(mant(engine)));
    }
    r.metadata["note"] = "units \"quoted\", commas";
    if (trial % 2) r.wall_time_ms = trial;
    const RunRecord back = record_from_json(to_json(r));
    CHECK(back.command == r.command);
    CHECK(back.n == r.n);
    CHECK(back.log_t2 == r.log_t2);
    CHECK(back.c_log2 == r.c_log2);
    CHECK(back.seed == r.seed);
    CHECK(back.samples == r.samples);
    CHECK(back.outputs == r.outputs);
    CHECK(back.std_errors == r.std_errors);
    CHECK(back.metadata == r.metadata);
    CHECK(back.wall_time_ms == r.wall_time_ms);
    CHECK(to_json(back) == to_json(r));

    const auto csv = csv_values(to_csv(r));
    CHECK(csv == r.outputs);
  }
}

TEST_CASE("record schema") {
  RunRecord r;
  r.command = "volume";
  r.set("volume", 1.5, 0.1);
  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["schema"] == 1);
  CHECK_FALSE(j.contains("wall_time_ms"));
  CHECK(to_csv(r).rfind("command,n,log_t2,c_log2,key,value,std_error,seed,samples\n", 0) == 0);
  auto bad = j;
  bad["schema"] = 2;
  CHECK_THROWS(record_from_json(bad.dump()));
}

TEST_CASE("cli volume") {
  const Run r = run({"volume", "--n", "1", "--log-t2", "-20", "--c-log2", "-2", "--samples",
                     "100000", "--seed", "7", "--format", "json"});
  REQUIRE(r.code == cli::kExitOk);
  const RunRecord rec = record_from_json(r.out);
  CHECK(rec.command == "volume");
  CHECK(rec.outputs.at("volume") == doctest::Approx(1.77778).epsilon(1e-5).scale(0));
  CHECK(rec.outputs.at("exact_volume") == doctest::Approx(1.77778).epsilon(1e-5).scale(0));
  for (const auto& [key, value] : rec.outputs) CHECK(rec.std_errors.count(key) == 1);
}

TEST_CASE("cli commands are byte-identical on re-run, json and csv agree") {
  const std::vector<std::vector<std::string>> commands{
      {"volume", "--n", "2", "--log-t2", "-200", "--samples", "20000", "--seed", "3"},
      {"wp-ratio", "--n", "1", "--log-t2", "-921.034", "--samples", "20000", "--seed", "7"},
      {"sweep", "--n", "1", "--log-t2-list", "-100,-300,-1000,-10000", "--samples", "20000"},
      {"sweep", "--n", "1", "--log-t2-list=-100,-300,-1000,-10000", "--quantity", "volume",
       "--samples", "2000"},
      {"bounds-scan", "--n", "2", "--log-t2", "-200", "--samples", "1000"},
      {"flow-check", "--n", "2", "--log-t2", "-300", "--sigma", "2", "--samples", "50"},
      {"point-eval", "--n", "2", "--log-t2", "-30", "--b", "0.2,0.5", "--theta", "1,2"},
  };
  for (const auto& args : commands) {
    CAPTURE(args[0]);
    const Run a = run(args);
    const Run b = run(args);
    REQUIRE(a.code == cli::kExitOk);
    CHECK(a.out == b.out);
    auto csv_args = args;
    csv_args.insert(csv_args.end(), {"--format", "csv"});
    const Run c = run(csv_args);
    REQUIRE(c.code == cli::kExitOk);
    CHECK(csv_values(c.out) == record_from_json(a.out).outputs);
  }
}

TEST_CASE("cli threads do not change results") {
  const Run a = run({"wp-ratio", "--n", "2", "--log-t2", "-300", "--samples", "20000"});
  const Run b = run({"wp-ratio", "--n", "2", "--log-t2", "-300", "--samples", "20000",
                     "--threads", "3"});
  CHECK(a.out == b.out);
}

TEST_CASE("cli point-eval") {
  const Run r = run({"point-eval", "--n", "1", "--log-t2", "-20", "--b", "0.25"});
  REQUIRE(r.code == cli::kExitOk);
  const RunRecord rec = record_from_json(r.out);
  CHECK(rec.outputs.at("a_0") == -15.0);
  CHECK(rec.outputs.at("a_1") == -5.0);
  CHECK(rec.outputs.at("a_squared") == 250.0);
  CHECK(rec.outputs.at("dbar_w_norm_sq") == doctest::Approx(0.00288).epsilon(1e-12).scale(0));
  CHECK(rec.outputs.at("grad_phi_frame_1") == doctest::Approx(0.4).epsilon(1e-12).scale(0));
  CHECK(rec.outputs.at("w_coefficient_0") == doctest::Approx(0.9).epsilon(1e-12).scale(0));
}

TEST_CASE("cli --out and --timing") {
  const std::string path = "kdegen_cli_out_test.json";
  const Run r = run({"volume", "--log-t2", "-20", "--samples", "5000", "--out", path,
                     "--timing"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  const RunRecord rec = record_from_json(ss.str());
  CHECK(rec.wall_time_ms.has_value());
  std::remove(path.c_str());
}

TEST_CASE("cli exit codes") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"nonsense"}).code == cli::kExitUsage);
  CHECK(run({"volume"}).code == cli::kExitUsage);  // --log-t2 missing
  CHECK(run({"volume", "--log-t2", "-20", "--format", "xml"}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitOk);

  const Run empty = run({"volume", "--n", "2", "--log-t2", "-5", "--c-log2", "-2"});
  CHECK(empty.code == cli::kExitUsage);
  CHECK(empty.err.find("eps") != std::string::npos);

  const Run outside = run({"point-eval", "--n", "2", "--log-t2", "-30", "--b", "0.6,0.5"});
  CHECK(outside.code == cli::kExitUsage);
  CHECK(outside.err.find("sum of b_k") != std::string::npos);

  // 100 RK4 steps per unit sigma are too coarse for |a| ~ 0.1, so the
  // composition law misses 1e-9 |lt|.
  const Run flow = run({"flow-check", "--n", "1", "--log-t2", "-0.3", "--c-log2", "-0.1",
                        "--sigma", "0.1", "--samples", "50"});
  CHECK(flow.code == cli::kExitCheckFailed);
}
