// Copyright 2026 The kdegen Authors
// SPDX-License-Identifier: Apache-2.0
#include "kdegen/deformation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "kdegen/errors.hpp"
#include "kdegen/geometry.hpp"

namespace kdegen {

namespace {
constexpr double kPi = std::numbers::pi;
}

Eigen::VectorXd w_coefficients(const LogPoint& p) {
  return p.a().cwiseAbs2() / a_squared(p);
}

VectorValuedForm dbar_w_components(const LogPoint& p) {
  const Eigen::VectorXd& a = p.a();
  const double asq = a_squared(p);
  const auto m = a.size();
  // d(a_k^2/a^2)/da_l = 2 a_k delta_kl / a^2 - 2 a_k^2 a_l / a^4
  Eigen::MatrixXd b = -2.0 * a.cwiseAbs2() * a.transpose() / (asq * asq);
  for (Eigen::Index k = 0; k < m; ++k) b(k, k) += 2.0 * a[k] / asq;
  return {b.cast<std::complex<double>>(), Basis::AmbientW};
}

VectorValuedForm restrict_to_fiber(const VectorValuedForm& ambient) {
  const int n = ambient.dim() - 1;
  const Eigen::MatrixXcd& b = ambient.components;
  Eigen::MatrixXcd f = b.bottomRightCorner(n, n);
  f.colwise() -= b.col(0).tail(n);
  return {std::move(f), Basis::CoordinateW};
}

HermitianForm ambient_metric(const LogPoint& p) {
  const Eigen::VectorXd d = (kPi * p.a().cwiseAbs2()).cwiseInverse();
  return {d.cast<std::complex<double>>().asDiagonal(), Basis::AmbientW};
}

double contract_norm_sq(const VectorValuedForm& b, const HermitianForm& g) {
  const Eigen::MatrixXcd& m = b.components;
  const Eigen::MatrixXcd& gm = g.entries();
  const Eigen::MatrixXcd ginv = g.inverse();
  // g_{i jbar} B^i_k conj(B^j_l) g^{k lbar} = tr(B^T G conj(B) G^-1) for
  // real symmetric G.
  return (m.transpose() * gm * m.conjugate() * ginv).trace().real();
}

double dbar_w_norm_sq_closed(const LogPoint& p) {
  const Eigen::VectorXd sq = p.a().cwiseAbs2();
  const double asq = sq.sum();
  // Sum over ordered pairs i != j of a_i^2 a_j^2, summed term by term to
  // avoid the cancellation in a^4 - sum a^4.
  double pairs = 0.0;
  for (Eigen::Index i = 0; i < sq.size(); ++i) {
    for (Eigen::Index j = 0; j < sq.size(); ++j) {
      if (i != j) pairs += sq[i] * sq[j];
    }
  }
  return 4.0 * pairs / (asq * asq * asq);
}

double dbar_w_norm_sq(const LogPoint& p) {
  const double closed = dbar_w_norm_sq_closed(p);
  const double contracted =
      contract_norm_sq(dbar_w_components(p), ambient_metric(p));
  if (!(std::abs(closed - contracted) <= 1e-8 * std::abs(closed))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "|dbar W|^2 identity violated: closed form " << closed
        << " vs contraction " << contracted;
    throw IdentityViolation(msg.str());
  }
  return closed;
}

double fiber_norm_sq(const LogPoint& p) {
  return contract_norm_sq(restrict_to_fiber(dbar_w_components(p)),
                          coordinate_metric(p));
}

double wp_integrand(const LogPoint& p) {
  return dbar_w_norm_sq_closed(p) * volume_density(p);
}

int default_flow_steps(double sigma) {
  return std::max(1, static_cast<int>(std::ceil(100.0 * std::abs(sigma))));
}

LogPoint flow_map(const LogPoint& p, double sigma, int steps) {
  if (steps < 1) throw DomainError("flow_map needs at least one step");
  if (sigma == 0.0) return p;
  const auto rhs = [](const Eigen::VectorXd& a) -> Eigen::VectorXd {
    return 2.0 * a.cwiseAbs2() / a.squaredNorm();
  };
  const double h = sigma / steps;
  Eigen::VectorXd a = p.a();
  for (int s = 0; s < steps; ++s) {
    const Eigen::VectorXd k1 = rhs(a);
    const Eigen::VectorXd k2 = rhs(a + 0.5 * h * k1);
    const Eigen::VectorXd k3 = rhs(a + 0.5 * h * k2);
    const Eigen::VectorXd k4 = rhs(a + h * k3);
    a += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!(a.maxCoeff() < 0.0)) {
      std::ostringstream msg;
      msg << "flow left the punctured polydisk at sigma = " << (s + 1) * h;
      throw DomainError(msg.str());
    }
  }
  std::vector<double> all(a.data(), a.data() + a.size());
  std::vector<double> theta(p.theta().data(),
                            p.theta().data() + p.theta().size());
  return LogPoint::from_all(all, theta);
}

}  // namespace kdegen
