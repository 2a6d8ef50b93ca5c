// Copyright 2026 The kdegen Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <span>

#include <Eigen/Dense>

namespace kdegen {

/// Parameters of the degenerating family X_t = {z_0 z_1 ... z_n = t}
/// truncated to the polydisk of radius c.
///
/// Both t and c are carried in log space: `lt` is log|t|^2 and `c_log2` is
/// log c^2. The fiber point coordinates are never exponentiated, so |t| may
/// be far below the double-precision range (lt = -1e4 means |t| = e^-5000).
struct ModelConfig {
  int n = 1;
  double lt = -20.0;
  double c_log2 = -2.0;

  /// Validated construction. Throws DomainError unless n >= 1,
  /// lt < c_log2 < 0 and eps < 1/(n+1).
  static ModelConfig make(int n, double lt, double c_log2);

  /// eps = log c^2 / log |t|^2, the lower bound of every b_k on the
  /// truncated fiber.
  [[nodiscard]] double eps() const { return c_log2 / lt; }
  [[nodiscard]] double c() const;
  [[nodiscard]] double abs_lt() const { return -lt; }
};

/// A point of the fiber X_t in log coordinates.
///
/// a_k = log|z_k|^2 for k = 0..n, theta_k = arg z_k for k = 1..n. The sum of
/// the a_k always equals lt; a_0 is stored but is determined by the others.
class LogPoint {
 public:
  /// Builds a point from the fiber coordinates a_1..a_n; a_0 = lt - sum.
  static LogPoint from_fiber(double lt, std::span<const double> a_fiber,
                             std::span<const double> theta);
  /// Builds a point from all n+1 log moduli; lt is their sum.
  static LogPoint from_all(std::span<const double> a_all,
                           std::span<const double> theta);

  [[nodiscard]] int n() const { return static_cast<int>(theta_.size()); }
  [[nodiscard]] double lt() const { return lt_; }
  [[nodiscard]] const Eigen::VectorXd& a() const { return a_; }
  [[nodiscard]] double a(int k) const { return a_[k]; }
  [[nodiscard]] const Eigen::VectorXd& theta() const { return theta_; }

  /// The same point with a new set of arguments (theta_1..theta_n).
  [[nodiscard]] LogPoint with_theta(std::span<const double> theta) const;

 private:
  LogPoint(Eigen::VectorXd a, Eigen::VectorXd theta, double lt);

  Eigen::VectorXd a_;
  Eigen::VectorXd theta_;
  double lt_;
};

enum class Basis {
  CoordinateW,  ///< holomorphic log coordinates w_j = log z_j on the fiber
  ProperFrame,  ///< W_i = a_i z_i d/dz_i
  AmbientW,     ///< w_0..w_n on the ambient polydisk
};

/// Small dense Hermitian positive definite matrix tagged with its basis.
class HermitianForm {
 public:
  /// Throws IdentityViolation when `entries` is not Hermitian to 1e-12
  /// (relative) or not positive definite.
  HermitianForm(Eigen::MatrixXcd entries, Basis basis);

  [[nodiscard]] int dim() const { return static_cast<int>(entries_.rows()); }
  [[nodiscard]] const Eigen::MatrixXcd& entries() const { return entries_; }
  [[nodiscard]] Basis basis() const { return basis_; }

  /// Ascending eigenvalues.
  [[nodiscard]] Eigen::VectorXd eigenvalues() const;
  /// Dense LU determinant (real since the matrix is Hermitian).
  [[nodiscard]] double determinant() const;
  [[nodiscard]] Eigen::MatrixXcd inverse() const;

 private:
  Eigen::MatrixXcd entries_;
  Basis basis_;
};

}  // namespace kdegen
