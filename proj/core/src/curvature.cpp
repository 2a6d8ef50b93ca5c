// Copyright 2026 The kdegen Authors
// SPDX-License-Identifier: Apache-2.0
#include "kdegen/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kdegen/errors.hpp"
#include "kdegen/geometry.hpp"

namespace kdegen {

namespace {

constexpr double kPi = std::numbers::pi;

using Matrices = std::vector<Eigen::MatrixXd>;

// G_ij as a function of the full vector (a_0, ..., a_n).
Eigen::MatrixXd metric_at(const Eigen::VectorXd& a) {
  const auto n = a.size() - 1;
  Eigen::MatrixXd g = Eigen::MatrixXd::Constant(n, n, 1.0 / (a[0] * a[0]));
  for (Eigen::Index j = 0; j < n; ++j) g(j, j) += 1.0 / (a[j + 1] * a[j + 1]);
  return g / kPi;
}

// Moving w_k by s (real direction) shifts a_k by s and a_0 by -s.
Eigen::VectorXd shifted(Eigen::VectorXd a, int k, double s) {
  a[k + 1] += s;
  a[0] -= s;
  return a;
}

CurvatureTensor assemble(const Eigen::MatrixXd& g, const Matrices& dg,
                         const std::vector<Matrices>& ddg) {
  const auto n = static_cast<int>(g.rows());
  const Eigen::MatrixXd ginv = g.inverse();
  CurvatureTensor r(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          double quad = 0.0;
          for (int pp = 0; pp < n; ++pp) {
            for (int q = 0; q < n; ++q) {
              quad += ginv(q, pp) * dg[k](i, q) * dg[l](pp, j);
            }
          }
          r(i, j, k, l) = -ddg[k][l](i, j) + quad;
        }
      }
    }
  }
  return r;
}

}  // namespace

double CurvatureTensor::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double CurvatureTensor::max_abs_difference(const CurvatureTensor& other) const {
  double m = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    m = std::max(m, std::abs(data_[i] - other.data_[i]));
  }
  return m;
}

CurvatureTensor kahler_curvature(const LogPoint& p) {
  const int n = p.n();
  const Eigen::VectorXd& a = p.a();
  const double a0 = a[0];
  // D_k (a_0^-2) = 2 a_0^-3, D_k D_l (a_0^-2) = 6 a_0^-4.
  Matrices dg(n, Eigen::MatrixXd::Constant(n, n, 2.0 / (kPi * a0 * a0 * a0)));
  for (int k = 0; k < n; ++k) {
    const double ak = a[k + 1];
    dg[k](k, k) += -2.0 / (kPi * ak * ak * ak);
  }
  std::vector<Matrices> ddg(
      n, Matrices(n, Eigen::MatrixXd::Constant(
                         n, n, 6.0 / (kPi * a0 * a0 * a0 * a0))));
  for (int k = 0; k < n; ++k) {
    const double ak = a[k + 1];
    ddg[k][k](k, k) += 6.0 / (kPi * ak * ak * ak * ak);
  }
  return assemble(metric_at(a), dg, ddg);
}

CurvatureTensor kahler_curvature_fd(const LogPoint& p, double h) {
  const int n = p.n();
  const Eigen::VectorXd& a = p.a();
  std::vector<double> step(n);
  for (int k = 0; k < n; ++k) {
    step[k] = h * std::min(std::abs(a[k + 1]), std::abs(a[0]));
  }
  Matrices dg(n);
  for (int k = 0; k < n; ++k) {
    dg[k] = (metric_at(shifted(a, k, step[k])) -
             metric_at(shifted(a, k, -step[k]))) /
            (2.0 * step[k]);
  }
  std::vector<Matrices> ddg(n, Matrices(n));
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      if (k == l) {
        ddg[k][l] = (metric_at(shifted(a, k, step[k])) - 2.0 * metric_at(a) +
                     metric_at(shifted(a, k, -step[k]))) /
                    (step[k] * step[k]);
        continue;
      }
      const auto at = [&](double sk, double sl) {
        return metric_at(shifted(shifted(a, k, sk * step[k]), l, sl * step[l]));
      };
      ddg[k][l] = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) /
                  (4.0 * step[k] * step[l]);
    }
  }
  return assemble(metric_at(a), dg, ddg);
}

CurvatureTensor orthonormal_curvature(const CurvatureTensor& r,
                                      const HermitianForm& g) {
  const int n = r.n();
  // The Riemannian metric sum G dw dw-bar has complex Hermitian part G/2,
  // whose orthonormal frame is sqrt(2) G^{-1/2}.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.entries().real());
  const Eigen::MatrixXd s = std::sqrt(2.0) * es.operatorInverseSqrt();
  const double half = 0.5;
  CurvatureTensor out(n);
  // Contract one index at a time: O(n^5).
  CurvatureTensor tmp = r;
  for (int slot = 0; slot < 4; ++slot) {
    CurvatureTensor next(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            double acc = 0.0;
            for (int m = 0; m < n; ++m) {
              switch (slot) {
                case 0: acc += tmp(m, j, k, l) * s(m, i); break;
                case 1: acc += tmp(i, m, k, l) * s(m, j); break;
                case 2: acc += tmp(i, j, m, l) * s(m, k); break;
                default: acc += tmp(i, j, k, m) * s(m, l); break;
              }
            }
            next(i, j, k, l) = acc;
          }
    tmp = std::move(next);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out(i, j, k, l) = half * tmp(i, j, k, l);
  return out;
}

double curvature_fd_tolerance(double h, double scale) {
  return std::max(1e-6, 10.0 * h * h * scale);
}

double curvature_fd_scale(double sup, const HermitianForm& g) {
  const Eigen::VectorXd ev = g.eigenvalues();
  return sup * ev[ev.size() - 1] / ev[0];
}

double curvature_sup(const LogPoint& p, bool check) {
  const HermitianForm g = coordinate_metric(p);
  const double sup = orthonormal_curvature(kahler_curvature(p), g).max_abs();
  if (check) {
    // Cross-check in the dominant chart: away from it the coordinate metric
    // is nearly rank one and second differences lose every digit.
    const LogPoint q = dominant_chart(p);
    const HermitianForm gq = coordinate_metric(q);
    const CurvatureTensor r = orthonormal_curvature(kahler_curvature(q), gq);
    const CurvatureTensor fd = orthonormal_curvature(
        kahler_curvature_fd(q, kCurvatureFdStep), gq);
    const double diff = r.max_abs_difference(fd);
    const double tol = curvature_fd_tolerance(
        kCurvatureFdStep, curvature_fd_scale(r.max_abs(), gq));
    if (!(diff <= tol)) {
      std::ostringstream msg;
      msg << "analytic and finite-difference curvature disagree by " << diff
          << " (tolerance " << tol << ")";
      throw IdentityViolation(msg.str());
    }
  }
  return sup;
}

CurvatureReport curvature_report(std::span<const LogPoint> points, bool check) {
  CurvatureReport report;
  report.per_point.reserve(points.size());
  for (const LogPoint& p : points) {
    const double s = curvature_sup(p, check);
    report.sup_norm = std::max(report.sup_norm, s);
    report.per_point.emplace_back(p, s);
  }
  return report;
}

}  // namespace kdegen
