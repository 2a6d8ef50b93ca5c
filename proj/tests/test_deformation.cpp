// Copyright 2026 The kdegen Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "generators.hpp"
#include "kdegen/deformation.hpp"
#include "kdegen/errors.hpp"
#include "kdegen/geometry.hpp"
#include "oracles.hpp"

using namespace kdegen;
using kdegen::testing::PointGen;
using kdegen::testing::to_vector;

namespace {
constexpr double kPi = std::numbers::pi;

LogPoint point(std::vector<double> a_all) {
  std::vector<double> theta(a_all.size() - 1, 0.0);
  return LogPoint::from_all(a_all, theta);
}

double coefficient(std::vector<double> a, int k) {
  double asq = 0.0;
  for (double v : a) asq += v * v;
  return a[k] * a[k] / asq;
}

// 4 (a^4 - sum a^4) / a^6
double norm_by_quartics(const LogPoint& p) {
  const double asq = p.a().squaredNorm();
  return 4.0 * (asq * asq - p.a().array().pow(4).sum()) / (asq * asq * asq);
}
}  // namespace

TEST_CASE("w_coefficients") {
  for (int n : {1, 2, 4}) {
    std::vector<double> a(n + 1, -7.0);
    const Eigen::VectorXd c = w_coefficients(point(a));
    for (int k = 0; k <= n; ++k) CHECK(c[k] == doctest::Approx(1.0 / (n + 1)).epsilon(1e-15).scale(0));
  }
  const Eigen::VectorXd c = w_coefficients(point({-15, -5}));
  CHECK(c[0] == doctest::Approx(0.9).epsilon(1e-15).scale(0));
  CHECK(c[1] == doctest::Approx(0.1).epsilon(1e-15).scale(0));

  PointGen gen(61);
  for (int n : {1, 2, 3}) {
    const auto cfg = ModelConfig::make(n, -500, -2);
    for (int i = 0; i < 2000; ++i) {
      REQUIRE(std::abs(w_coefficients(gen(cfg)).sum() - 1.0) <= 1e-14);
    }
  }
}

TEST_CASE("dbar_w_components against finite differences") {
  PointGen gen(67);
  for (int n : {1, 2, 3}) {
    const auto cfg = ModelConfig::make(n, -40, -2);
    for (int trial = 0; trial < 100; ++trial) {
      const LogPoint p = gen(cfg);
      const VectorValuedForm amb = dbar_w_components(p);
      const VectorValuedForm fib = restrict_to_fiber(amb);
      REQUIRE(amb.dim() == n + 1);
      REQUIRE(fib.dim() == n);
      CHECK(amb.components.imag().cwiseAbs().maxCoeff() == 0.0);
      const std::vector<double> a = to_vector(p.a());
      for (int k = 0; k <= n; ++k) {
        for (int l = 0; l <= n; ++l) {
          const double h = 1e-6 * std::abs(a[l]);
          auto up = a, dn = a;
          up[l] += h;
          dn[l] -= h;
          const double fd = (coefficient(up, k) - coefficient(dn, k)) / (2 * h);
          const double scale = amb.components.cwiseAbs().maxCoeff();
          CHECK(std::abs(amb.components(k, l).real() - fd) <= 1e-6 * scale + 1e-14 / h);
        }
      }
      // On the fiber, d/dw_k-bar moves a_k by +s and a_0 by -s.
      for (int i = 1; i <= n; ++i) {
        for (int k = 1; k <= n; ++k) {
          const double h = 1e-6 * std::min(std::abs(a[k]), std::abs(a[0]));
          auto up = a, dn = a;
          up[k] += h;
          up[0] -= h;
          dn[k] -= h;
          dn[0] += h;
          const double fd = (coefficient(up, i) - coefficient(dn, i)) / (2 * h);
          const double scale = fib.components.cwiseAbs().maxCoeff();
          CHECK(std::abs(fib.components(i - 1, k - 1).real() - fd) <= 1e-6 * scale + 1e-14 / h);
        }
      }
      // the vector part is tangent to the fiber
      for (int l = 0; l <= n; ++l) {
        CHECK(std::abs(amb.components.col(l).sum()) <= 1e-12 * amb.components.cwiseAbs().maxCoeff());
      }
    }
  }
  // symmetric n=1 fiber component is 1/a_0
  const VectorValuedForm sym = restrict_to_fiber(dbar_w_components(point({-8, -8})));
  CHECK(sym.components(0, 0).real() == doctest::Approx(-1.0 / 8.0).epsilon(1e-14).scale(0));
}

TEST_CASE("dbar_w_norm_sq") {
  const double a = -4.60517;
  CHECK(dbar_w_norm_sq(point({a, a})) == doctest::Approx(1.0 / (a * a)).epsilon(1e-14).scale(0));
  CHECK(dbar_w_norm_sq(point({a, a})) == doctest::Approx(0.047153).epsilon(1e-5).scale(0));
  CHECK(dbar_w_norm_sq(point({-15, -5})) == doctest::Approx(0.00288).epsilon(1e-14).scale(0));
  CHECK(dbar_w_norm_sq(point({-10, -1e-9})) < 1e-19);

  SUBCASE("closed form, quartic route and contraction agree") {
    PointGen gen(71);
    for (int n : {1, 2, 3}) {
      const auto cfg = ModelConfig::make(n, -300, -2);
      for (int i = 0; i < 3000; ++i) {
        const LogPoint p = gen(cfg);
        const double v = dbar_w_norm_sq(p);  // throws on contraction mismatch
        REQUIRE(v == doctest::Approx(norm_by_quartics(p)).epsilon(1e-10).scale(0));
        const double contracted = contract_norm_sq(dbar_w_components(p), ambient_metric(p));
        REQUIRE(std::abs(v - contracted) <= 1e-8 * v);
      }
    }
  }
  SUBCASE("pointwise bound 4n(n+1)/a^2 <= 4n(n+1)^2/lt^2") {
    PointGen gen(73);
    for (int n : {1, 2, 3}) {
      const auto cfg = ModelConfig::make(n, -1000, -2);
      for (int i = 0; i < 3000; ++i) {
        const LogPoint p = gen(cfg);
        const double v = dbar_w_norm_sq(p);
        REQUIRE(v <= 4.0 * n * (n + 1) / a_squared(p));
        REQUIRE(v <= 4.0 * n * (n + 1) * (n + 1) / (cfg.lt * cfg.lt));
      }
    }
  }
  SUBCASE("fiber-intrinsic norm never exceeds the ambient one") {
    CHECK(fiber_norm_sq(point({-6, -6})) == doctest::Approx(1.0 / 36).epsilon(1e-12).scale(0));
    CHECK(fiber_norm_sq(point({-15, -5})) == doctest::Approx(0.002304).epsilon(1e-12).scale(0));
    PointGen gen(79);
    for (int n : {1, 2, 3}) {
      const auto cfg = ModelConfig::make(n, -90, -2);
      for (int i = 0; i < 1000; ++i) {
        const LogPoint p = gen(cfg);
        REQUIRE(fiber_norm_sq(p) <= dbar_w_norm_sq(p) * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("wp_integrand") {
  const double a0 = -6.0;
  CHECK(wp_integrand(point({a0, a0})) ==
        doctest::Approx(2.0 / (kPi * a0 * a0 * a0 * a0)).epsilon(1e-14).scale(0));

  SUBCASE("b-space pullback") {
    // (2 pi)^n |lt|^n wp_integrand equals
    // n! 2^n |lt|^-(n+2) 4 sum_{i!=j} b_i^2 b_j^2 / (b^4 prod_{k=0}^n b_k^2)
    PointGen gen(83);
    for (int n : {1, 2, 3}) {
      const auto cfg = ModelConfig::make(n, -700, -2);
      for (int i = 0; i < 500; ++i) {
        const LogPoint p = gen(cfg);
        const Eigen::VectorXd b = -p.a() / cfg.abs_lt();
        const Eigen::VectorXd sq = b.cwiseAbs2();
        double pairs = 0.0;
        for (int x = 0; x <= n; ++x)
          for (int y = 0; y <= n; ++y)
            if (x != y) pairs += sq[x] * sq[y];
        const double bsq = sq.sum();
        const double display = oracle::factorial(n) * std::pow(2.0, n) *
                               std::pow(cfg.abs_lt(), -(n + 2)) * 4.0 * pairs /
                               (bsq * bsq * sq.prod());
        const double lhs = std::pow(2 * kPi * cfg.abs_lt(), n) * wp_integrand(p);
        REQUIRE(lhs > 0.0);
        REQUIRE(lhs == doctest::Approx(display).epsilon(1e-12).scale(0));
      }
    }
  }
}

TEST_CASE("flow_map") {
  SUBCASE("symmetric points stay symmetric") {
    for (int n : {1, 2, 3}) {
      std::vector<double> a(n + 1, -30.0);
      const LogPoint p = point(a);
      const double sigma = 2.5;
      const LogPoint q = flow_map(p, sigma, default_flow_steps(sigma));
      for (int k = 0; k <= n; ++k) {
        CHECK(q.a(k) == doctest::Approx(-30.0 + 2 * sigma / (n + 1)).epsilon(1e-13).scale(0));
      }
    }
  }
  SUBCASE("sigma = 0 is the identity") {
    const LogPoint p = point({-12, -3, -5});
    const LogPoint q = flow_map(p, 0.0, 10);
    CHECK(q.a() == p.a());
  }
  SUBCASE("conservation and composition") {
    PointGen gen(89);
    for (int n : {1, 2, 3}) {
      const auto cfg = ModelConfig::make(n, -200, -2);
      for (int i = 0; i < 200; ++i) {
        const LogPoint p = gen(cfg);
        if (p.a().maxCoeff() > -12.0) continue;
        const double sigma = 5.0;
        const LogPoint q = flow_map(p, sigma, default_flow_steps(sigma));
        REQUIRE(std::abs(q.a().sum() - (cfg.lt + 2 * sigma)) <= 1e-9 * cfg.abs_lt());
        CHECK(q.theta() == p.theta());
        const LogPoint half = flow_map(flow_map(p, 2.0, 200), 3.0, 300);
        REQUIRE((half.a() - q.a()).cwiseAbs().maxCoeff() <= 1e-9 * cfg.abs_lt());
        // backwards flow returns to the start
        const LogPoint back = flow_map(q, -sigma, default_flow_steps(sigma));
        REQUIRE((back.a() - p.a()).cwiseAbs().maxCoeff() <= 1e-9 * cfg.abs_lt());
      }
    }
  }
  SUBCASE("leaving the polydisk") {
    CHECK_THROWS_AS(flow_map(point({-1, -1}), 2.0, 200), DomainError);
    CHECK_THROWS_AS(flow_map(point({-1, -1}), 1.0, 0), DomainError);
  }
}
