// Copyright 2026 The kdegen Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "kdegen/model.hpp"

/// The lift W = grad log t / |grad log t|^2 of t d/dt and its dbar, which
/// represents the Kodaira-Spencer class of the family.
namespace kdegen {

/// Components of a (0,1)-form with values in (1,0)-vectors:
/// components(i, k) is the coefficient of d/dw_i (x) dw_k-bar.
struct VectorValuedForm {
  Eigen::MatrixXcd components;
  Basis basis = Basis::AmbientW;

  [[nodiscard]] int dim() const { return static_cast<int>(components.rows()); }
};

/// c_k = a_k^2 / a^2 for k = 0..n, so that W = sum_k c_k z_k d/dz_k.
/// The c_k sum to one, which is W(log t) = 1.
Eigen::VectorXd w_coefficients(const LogPoint& p);

/// Ambient (n+1) x (n+1) components of dbar W in w_0..w_n:
/// B(k, l) = d c_k / d a_l (d a_l / d w_l-bar = 1). Real.
VectorValuedForm dbar_w_components(const LogPoint& p);

/// Restriction to the fiber in w_1..w_n. The vector part of dbar W is
/// tangent (its components sum to zero) and dw_0-bar = -sum dw_k-bar on
/// X_t, so B_fiber(i, k) = B(i, k) - B(i, 0).
VectorValuedForm restrict_to_fiber(const VectorValuedForm& ambient);

/// The model Kahler metric on the ambient polydisk, diag(1/(pi a_k^2)).
HermitianForm ambient_metric(const LogPoint& p);

/// |B|^2 = g^{k lbar} g_{i jbar} B^i_k conj(B^j_l) for a real symmetric
/// metric of matching dimension.
double contract_norm_sq(const VectorValuedForm& b, const HermitianForm& g);

/// |dbar W|^2 = (4/a^6) sum_{i != j} a_i^2 a_j^2 over ordered pairs in
/// 0..n, checked against the ambient metric contraction of
/// dbar_w_components. Throws IdentityViolation past 1e-8 relative.
double dbar_w_norm_sq(const LogPoint& p);

/// The closed form alone; used inside integration loops.
double dbar_w_norm_sq_closed(const LogPoint& p);

/// Norm of the fiber-restricted tensor measured by omega_t itself. Never
/// exceeds the ambient value.
double fiber_norm_sq(const LogPoint& p);

/// |dbar W|^2 times the omega_t^n density against prod da_k dtheta_k.
double wp_integrand(const LogPoint& p);

/// Real flow of W in log coordinates, da_k/dsigma = 2 a_k^2 / a^2, by RK4
/// with `steps` steps. Moves to the fiber lt + 2 sigma; theta is fixed.
/// Throws DomainError if any a_k reaches 0.
LogPoint flow_map(const LogPoint& p, double sigma, int steps);

/// 100 steps per unit |sigma|, at least one.
int default_flow_steps(double sigma);

}  // namespace kdegen
