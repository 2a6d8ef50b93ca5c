// Copyright 2026 The kdegen Authors
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "kdegen/experiments.hpp"

namespace {

void BM_Volume(benchmark::State& state) {
  const auto cfg = kdegen::ModelConfig::make(static_cast<int>(state.range(0)), -200.0, -2.0);
  kdegen::McOptions o;
  o.samples = 100000;
  for (auto _ : state) benchmark::DoNotOptimize(kdegen::run_volume(cfg, o).value);
  state.SetItemsProcessed(state.iterations() * o.samples);
}
BENCHMARK(BM_Volume)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_WpRatio(benchmark::State& state) {
  const auto cfg = kdegen::ModelConfig::make(static_cast<int>(state.range(0)), -2000.0, -2.0);
  kdegen::McOptions o;
  o.samples = 100000;
  for (auto _ : state) benchmark::DoNotOptimize(kdegen::run_wp_ratio(cfg, o).ratio);
  state.SetItemsProcessed(state.iterations() * o.samples);
}
BENCHMARK(BM_WpRatio)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace
