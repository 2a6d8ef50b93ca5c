// Copyright 2026 The kdegen Authors
// SPDX-License-Identifier: Apache-2.0
#include "kdegen/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "kdegen/errors.hpp"

namespace kdegen {

ModelConfig ModelConfig::make(int n, double lt, double c_log2) {
  std::ostringstream msg;
  if (n < 1) {
    msg << "n must be >= 1 (got " << n << ")";
    throw DomainError(msg.str());
  }
  if (!std::isfinite(lt) || !std::isfinite(c_log2) || !(c_log2 < 0.0)) {
    msg << "log c^2 must be finite and negative (got " << c_log2 << ")";
    throw DomainError(msg.str());
  }
  if (!(lt < c_log2)) {
    msg << "log|t|^2 must be below log c^2 (got log|t|^2=" << lt
        << ", log c^2=" << c_log2 << ")";
    throw DomainError(msg.str());
  }
  ModelConfig cfg{n, lt, c_log2};
  if (!(cfg.eps() < 1.0 / (n + 1))) {
    msg << "truncated fiber is empty: eps=" << cfg.eps()
        << " >= 1/(n+1)=" << 1.0 / (n + 1) << " (log|t|^2=" << lt
        << ", log c^2=" << c_log2 << ", n=" << n << ")";
    throw DomainError(msg.str());
  }
  return cfg;
}

double ModelConfig::c() const { return std::exp(0.5 * c_log2); }

LogPoint::LogPoint(Eigen::VectorXd a, Eigen::VectorXd theta, double lt)
    : a_(std::move(a)), theta_(std::move(theta)), lt_(lt) {
  for (Eigen::Index k = 0; k < a_.size(); ++k) {
    if (!(a_[k] < 0.0) || !std::isfinite(a_[k])) {
      std::ostringstream msg;
      msg << "a_" << k << " = " << a_[k]
          << " leaves the punctured polydisk (need a_k < 0)";
      throw DomainError(msg.str());
    }
  }
}

LogPoint LogPoint::from_fiber(double lt, std::span<const double> a_fiber,
                              std::span<const double> theta) {
  if (a_fiber.empty() || a_fiber.size() != theta.size()) {
    throw DomainError("fiber coordinates and theta must both have length n >= 1");
  }
  const auto n = static_cast<Eigen::Index>(a_fiber.size());
  Eigen::VectorXd a(n + 1);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    a[k + 1] = a_fiber[k];
    sum += a_fiber[k];
  }
  a[0] = lt - sum;
  return LogPoint(std::move(a),
                  Eigen::Map<const Eigen::VectorXd>(theta.data(), n), lt);
}

LogPoint LogPoint::from_all(std::span<const double> a_all,
                            std::span<const double> theta) {
  if (a_all.size() < 2 || a_all.size() != theta.size() + 1) {
    throw DomainError("need n+1 log moduli and n arguments with n >= 1");
  }
  const auto n = static_cast<Eigen::Index>(theta.size());
  Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(a_all.data(), n + 1);
  return LogPoint(a, Eigen::Map<const Eigen::VectorXd>(theta.data(), n),
                  a.sum());
}

LogPoint LogPoint::with_theta(std::span<const double> theta) const {
  if (static_cast<Eigen::Index>(theta.size()) != theta_.size()) {
    throw DomainError("theta must have length n");
  }
  return LogPoint(a_,
                  Eigen::Map<const Eigen::VectorXd>(theta.data(), theta_.size()),
                  lt_);
}

namespace {
constexpr double kHermitianTol = 1e-12;
}

HermitianForm::HermitianForm(Eigen::MatrixXcd entries, Basis basis)
    : entries_(std::move(entries)), basis_(basis) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw IdentityViolation("Hermitian form must be a non-empty square matrix");
  }
  const double scale = entries_.cwiseAbs().maxCoeff();
  const double skew = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (!(skew <= kHermitianTol * scale)) {
    throw IdentityViolation("matrix is not Hermitian to 1e-12 relative");
  }
  Eigen::LLT<Eigen::MatrixXcd> llt(entries_);
  if (llt.info() != Eigen::Success) {
    throw IdentityViolation("matrix is not positive definite");
  }
}

Eigen::VectorXd HermitianForm::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries_,
                                                      Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double HermitianForm::determinant() const {
  return entries_.partialPivLu().determinant().real();
}

Eigen::MatrixXcd HermitianForm::inverse() const {
  return entries_.llt().solve(
      Eigen::MatrixXcd::Identity(entries_.rows(), entries_.cols()));
}

}  // namespace kdegen
