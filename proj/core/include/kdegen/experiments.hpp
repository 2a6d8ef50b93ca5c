// Copyright 2026 The kdegen Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kdegen/model.hpp"
#include "kdegen/quadrature.hpp"

namespace kdegen {

/// Truncated-fiber volume, (n+1)! 2^n / |lt|^n times the integral of
/// prod b_k^-2 over the region. The theta integration contributes the
/// (2 pi)^n and the b rescaling the |lt|^-n.
IntegralEstimate run_volume(const ModelConfig& config, const McOptions& options);

struct WpRatio {
  /// Integral of |dbar W|^2 omega_t^n over integral of omega_t^n.
  double ratio = 0.0;
  double std_error = 0.0;
  /// 2 n |log c^2| (1 + pi/2) / |lt|^3.
  double predicted = 0.0;
  /// (ratio - predicted) / predicted.
  double rel_dev = 0.0;
  IntegralEstimate volume;
  IntegralEstimate wp_integral;
};

/// Both integrals are estimated from the same samples of the defensive
/// proposal; the ratio error is the delta-method error.
WpRatio run_wp_ratio(const ModelConfig& config, McOptions options);

double predicted_wp_ratio(const ModelConfig& config);

enum class SweepQuantity { WpRatio, Volume };

struct SweepRow {
  double lt = 0.0;
  double quantity = 0.0;
  double std_error = 0.0;
  /// log(ratio * Vol * |lt/2|^3): the log of the constant C in
  /// int |dbar W / t|^2 omega^n <= C / (|log|t||^3 |t|^2). Only for WpRatio.
  double log_implied_constant = 0.0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  double fitted_exponent = 0.0;
  double exponent_std_error = 0.0;
  /// Largest |log quantity - fitted line| over the rows.
  double fit_residual = 0.0;
  /// max - min of log_implied_constant over the rows.
  double log_constant_spread = 0.0;
};

/// Threshold on fit_residual beyond which run_sweep throws FitError.
inline constexpr double kMaxFitResidual = 0.1;

/// Runs the quantity at every lt (n and c from base) and fits the slope of
/// log quantity against log |lt| by weighted least squares. Needs at least
/// four lt values spanning two decades of |lt| (DomainError otherwise).
SweepReport run_sweep(const ModelConfig& base, const std::vector<double>& lt_list,
                      const McOptions& options,
                      SweepQuantity quantity = SweepQuantity::WpRatio);

struct BoundsReport {
  std::pair<double, double> phi_range{0.0, 0.0};
  double grad_phi_max = 0.0;
  std::pair<double, double> frame_eigen_range{0.0, 0.0};
  double curvature_sup = 0.0;
  std::int64_t samples = 0;
};

/// M points uniform on the open b-simplex (b_0..b_n), with uniform theta.
/// The b values depend only on (n, M, seed), never on lt.
struct SimplexSample {
  std::vector<double> b;  // b_1..b_n
  std::vector<double> theta;
};
std::vector<SimplexSample> sample_simplex(int n, std::int64_t count,
                                          std::uint64_t seed);

/// Evaluates phi, grad_phi_frame, frame eigenvalues and curvature_sup in
/// the dominant chart at every sample and checks each against its analytic
/// bound. Throws InvariantViolation naming the offending point.
BoundsReport run_bounds_scan(const ModelConfig& config, std::int64_t samples,
                             std::uint64_t seed, bool check_curvature = true);

struct FlowCheck {
  double max_conservation_error = 0.0;  // |sum a - (lt + 2 sigma)|
  double max_composition_error = 0.0;   // sup-norm in a
  std::int64_t points = 0;
};

/// Flows random points by sigma (and by sigma/2 twice) and reports the
/// worst deviation from the conservation and composition laws.
FlowCheck run_flow_check(const ModelConfig& config, double sigma,
                         std::int64_t points, std::uint64_t seed);

}  // namespace kdegen
