// Copyright 2026 The kdegen Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kdegen/model.hpp"

namespace kdegen {

/// Rank-four tensor R(i, j, k, l) ~ R_{i jbar k lbar} over n fiber indices.
/// All entries are real for the model metric.
class CurvatureTensor {
 public:
  explicit CurvatureTensor(int n)
      : n_(n), data_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}

  [[nodiscard]] int n() const { return n_; }
  double& operator()(int i, int j, int k, int l) { return data_[index(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const {
    return data_[index(i, j, k, l)];
  }
  [[nodiscard]] double max_abs() const;
  [[nodiscard]] double max_abs_difference(const CurvatureTensor& other) const;

 private:
  [[nodiscard]] std::size_t index(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l;
  }
  int n_;
  std::vector<double> data_;
};

/// R_{i jbar k lbar} = -d_k d_lbar G_{i jbar} + G^{p qbar} (d_k G_{i qbar})
/// (d_lbar G_{p jbar}) for the coordinate metric G, evaluated from the
/// closed-form derivatives of G in a (d a_j / d w_i = delta_ij,
/// d a_0 / d w_i = -1).
CurvatureTensor kahler_curvature(const LogPoint& p);

/// The same tensor with the metric derivatives replaced by central finite
/// differences along w. Step for direction k is h * min(|a_k|, |a_0|).
CurvatureTensor kahler_curvature_fd(const LogPoint& p, double h);

/// Components in a frame orthonormal for the Riemannian metric
/// ds^2 = sum G_jk dw_j dw_k-bar. On a single cusp factor this gives the
/// Gaussian curvature -4 pi.
CurvatureTensor orthonormal_curvature(const CurvatureTensor& r,
                                      const HermitianForm& g);

/// Default finite-difference step and the agreement tolerance
/// max(1e-6, 10 h^2 scale) between the two curvature paths.
inline constexpr double kCurvatureFdStep = 1e-3;
double curvature_fd_tolerance(double h, double scale);

/// Scale for curvature_fd_tolerance: the orthonormal sup norm times the
/// condition number of g, since orthonormalization amplifies the
/// finite-difference error of the coordinate tensor by at most that factor.
double curvature_fd_scale(double sup, const HermitianForm& g);

/// Largest absolute orthonormal curvature component at p. When
/// `check` is set, both paths are also evaluated in the dominant chart of p
/// and an IdentityViolation is thrown if they disagree past tolerance.
double curvature_sup(const LogPoint& p, bool check = true);

struct CurvatureReport {
  double sup_norm = 0.0;
  std::vector<std::pair<LogPoint, double>> per_point;
};

CurvatureReport curvature_report(std::span<const LogPoint> points,
                                 bool check = true);

}  // namespace kdegen
