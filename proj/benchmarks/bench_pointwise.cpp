// Copyright 2026 The kdegen Authors
// SPDX-License-Identifier: Apache-2.0
#include <vector>

#include <benchmark/benchmark.h>

#include "kdegen/curvature.hpp"
#include "kdegen/deformation.hpp"
#include "kdegen/geometry.hpp"

namespace {

kdegen::LogPoint point(int n) {
  std::vector<double> a(n + 1);
  for (int k = 0; k <= n; ++k) a[k] = -10.0 - 3.0 * k;
  std::vector<double> theta(n, 0.25);
  return kdegen::LogPoint::from_all(a, theta);
}

void BM_MetricDeterminant(benchmark::State& state) {
  const auto p = point(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kdegen::metric_determinant(p));
}
BENCHMARK(BM_MetricDeterminant)->Arg(1)->Arg(2)->Arg(3);

void BM_FrameMetric(benchmark::State& state) {
  const auto p = kdegen::dominant_chart(point(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(kdegen::frame_metric(p).eigenvalues());
}
BENCHMARK(BM_FrameMetric)->Arg(1)->Arg(2)->Arg(3);

void BM_DbarNorm(benchmark::State& state) {
  const auto p = point(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kdegen::dbar_w_norm_sq(p));
}
BENCHMARK(BM_DbarNorm)->Arg(1)->Arg(2)->Arg(3);

void BM_CurvatureSup(benchmark::State& state) {
  const auto p = kdegen::dominant_chart(point(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(kdegen::curvature_sup(p, false));
}
BENCHMARK(BM_CurvatureSup)->Arg(1)->Arg(2)->Arg(3);

void BM_FlowMap(benchmark::State& state) {
  const auto p = point(2);
  for (auto _ : state) benchmark::DoNotOptimize(kdegen::flow_map(p, 1.0, 100));
}
BENCHMARK(BM_FlowMap);

}  // namespace
