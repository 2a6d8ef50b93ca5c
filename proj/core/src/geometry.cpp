// Copyright 2026 The kdegen Authors
// SPDX-License-Identifier: Apache-2.0
#include "kdegen/geometry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "kdegen/errors.hpp"

namespace kdegen {

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void require_chart(const LogPoint& p, const char* what) {
  if (!is_chart_valid(p)) {
    std::ostringstream msg;
    msg << what << ": a_0^2 = " << p.a(0) * p.a(0)
        << " is not the largest a_k^2; reindex with dominant_chart()";
    throw ChartError(msg.str());
  }
}

}  // namespace

LogPoint make_point(std::span<const double> b, std::span<const double> theta,
                    const ModelConfig& config) {
  if (static_cast<int>(b.size()) != config.n ||
      static_cast<int>(theta.size()) != config.n) {
    throw DomainError("b and theta must have length n");
  }
  double sum = 0.0;
  std::vector<double> a_fiber(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (!(b[k] > 0.0)) {
      std::ostringstream msg;
      msg << "b_" << k + 1 << " = " << b[k] << " must be positive";
      throw DomainError(msg.str());
    }
    sum += b[k];
    a_fiber[k] = -b[k] * config.abs_lt();
  }
  if (!(sum < 1.0)) {
    std::ostringstream msg;
    msg << "sum of b_k = " << sum << " must be below 1";
    throw DomainError(msg.str());
  }
  return LogPoint::from_fiber(config.lt, a_fiber, theta);
}

double a_squared(const LogPoint& p) { return p.a().squaredNorm(); }

HermitianForm coordinate_metric(const LogPoint& p) {
  const int n = p.n();
  const Eigen::VectorXd& a = p.a();
  const double cross = 1.0 / (a[0] * a[0]);
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Constant(n, n, cross);
  for (int j = 0; j < n; ++j) g(j, j) += 1.0 / (a[j + 1] * a[j + 1]);
  g /= kPi;
  return {std::move(g), Basis::CoordinateW};
}

bool is_chart_valid(const LogPoint& p) {
  const double a0sq = p.a(0) * p.a(0);
  for (int k = 1; k <= p.n(); ++k) {
    if (p.a(k) * p.a(k) > a0sq) return false;
  }
  return true;
}

LogPoint dominant_chart(const LogPoint& p) {
  Eigen::Index dom = 0;
  p.a().cwiseAbs2().maxCoeff(&dom);  // first maximal index
  if (dom == 0) return p;
  std::vector<double> a(p.a().data(), p.a().data() + p.a().size());
  std::vector<double> theta(p.theta().data(),
                            p.theta().data() + p.theta().size());
  std::swap(a[0], a[dom]);
  // Slot dom now holds z_0, whose argument is fixed by arg t = 0.
  double others = 0.0;
  for (std::size_t k = 0; k < theta.size(); ++k) {
    if (static_cast<Eigen::Index>(k + 1) != dom) others += theta[k];
  }
  theta[dom - 1] = -others;
  return LogPoint::from_all(a, theta);
}

HermitianForm frame_metric(const LogPoint& p) {
  require_chart(p, "frame_metric");
  const int n = p.n();
  const Eigen::VectorXd v = p.a().tail(n) / p.a(0);
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n) + v * v.transpose();
  g /= kPi;
  return {g.cast<std::complex<double>>(), Basis::ProperFrame};
}

double metric_determinant_closed(const LogPoint& p) {
  const Eigen::VectorXd& a = p.a();
  // Accumulate a^2 / prod a_k^2 as a product of ratios to stay in range
  // when |lt| is large.
  double value = a_squared(p) / (a[0] * a[0]);
  for (int k = 1; k <= p.n(); ++k) value /= kPi * a[k] * a[k];
  return value;
}

double metric_determinant_dense(const LogPoint& p) {
  return coordinate_metric(dominant_chart(p)).determinant();
}

double metric_determinant(const LogPoint& p) {
  const double closed = metric_determinant_closed(p);
  const double dense = metric_determinant_dense(p);
  if (!(std::abs(closed - dense) <= 1e-10 * std::abs(closed))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "metric determinant identity violated: closed form " << closed
        << " vs dense " << dense;
    throw IdentityViolation(msg.str());
  }
  return closed;
}

double volume_density(const LogPoint& p) {
  return factorial(p.n()) * metric_determinant_closed(p);
}

double phi(const LogPoint& p) {
  const int n = p.n();
  const double ratio = factorial(n) * std::pow(kPi, -n) * a_squared(p) /
                       (p.lt() * p.lt());
  return -std::log(ratio);
}

std::pair<double, double> phi_bounds(int n) {
  const double base = n * std::log(kPi) - std::log(factorial(n));
  return {base, base + std::log(static_cast<double>(n + 1))};
}

Eigen::VectorXd grad_phi_frame(const LogPoint& p) {
  require_chart(p, "grad_phi_frame");
  const int n = p.n();
  const double asq = a_squared(p);
  const double a0 = p.a(0);
  Eigen::VectorXd g(n);
  for (int i = 0; i < n; ++i) {
    const double ai = p.a(i + 1);
    g[i] = -ai * (2.0 * ai - 2.0 * a0) / asq;
  }
  return g;
}

}  // namespace kdegen
