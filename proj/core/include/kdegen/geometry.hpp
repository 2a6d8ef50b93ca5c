// Copyright 2026 The kdegen Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <utility>

#include <Eigen/Dense>

#include "kdegen/model.hpp"

/// Pointwise geometry of the model fiber metric
///
///   omega_t = sum_k (i/pi) dw_k ^ dw_k-bar / a_k^2
///             + (i/pi) (1/a_0^2) (sum_k dw_k) ^ (sum_k dw_k-bar),
///
/// in the log coordinates w_j = log z_j (j = 1..n) of X_t, with
/// a_k = log|z_k|^2 and a_0 = lt - (a_1 + ... + a_n).
namespace kdegen {

/// Point with a_k = -b_k |lt| for k = 1..n. Throws DomainError unless every
/// b_k > 0 and sum b_k < 1.
LogPoint make_point(std::span<const double> b, std::span<const double> theta,
                    const ModelConfig& config);

/// a^2 = sum_{k=0}^n a_k^2. Lies in [lt^2/(n+1), lt^2].
double a_squared(const LogPoint& p);

/// G_jk = (1/pi)(delta_jk / a_j^2 + 1/a_0^2). Real and theta-independent.
HermitianForm coordinate_metric(const LogPoint& p);

/// True when a_0^2 is the largest a_k^2 (ties count as dominant).
bool is_chart_valid(const LogPoint& p);

/// Relabels the coordinates so the largest a_k^2 (lowest index on ties)
/// becomes a_0. The model is symmetric in z_0..z_n, so every pointwise
/// scalar is unchanged.
LogPoint dominant_chart(const LogPoint& p);

/// Metric in the frame W_i = a_i z_i d/dz_i: (1/pi)(I + v v^T) with
/// v_j = a_j / a_0. Its spectrum lies in [1/pi, (n+1)/pi]. Throws ChartError
/// unless is_chart_valid(p).
HermitianForm frame_metric(const LogPoint& p);

/// (1/pi^n) a^2 / prod_{k=0}^n a_k^2, checked against
/// metric_determinant_dense. Throws IdentityViolation past 1e-10 relative.
double metric_determinant(const LogPoint& p);

/// LU determinant of coordinate_metric, evaluated in the dominant chart.
/// Chart changes are unimodular, so the value is the same in every chart,
/// but elsewhere the matrix is nearly rank one and its stored entries
/// already lose the digits the determinant depends on.
double metric_determinant_dense(const LogPoint& p);

/// The closed form alone.
double metric_determinant_closed(const LogPoint& p);

/// Density of omega_t^n against prod_k da_k dtheta_k:
/// n! pi^-n a^2 / prod_{k=0}^n a_k^2.
double volume_density(const LogPoint& p);

/// phi_t = -log(omega_t^n / V_t) = -log(n! pi^-n a^2 / lt^2).
double phi(const LogPoint& p);

/// [log(pi^n/n!), log(pi^n (n+1)/n!)], the t-independent range of phi_t.
std::pair<double, double> phi_bounds(int n);

/// (W_i phi_t)_{i=1..n} = -a_i (2 a_i - 2 a_0) / a^2. Each component is
/// bounded by 4(n+1). Throws ChartError unless is_chart_valid(p).
Eigen::VectorXd grad_phi_frame(const LogPoint& p);

}  // namespace kdegen
