// Copyright 2026 The kdegen Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kdegen/model.hpp"

/// Integration over the truncated fiber in rescaled coordinates
/// b_k = a_k / |lt|. The region is
///   { b in R^n : b_k >= eps for all k, sum b_k <= 1 - eps },
/// so that the implied b_0 = 1 - sum b_k is also >= eps.
namespace kdegen {

struct TruncatedDomain {
  int n = 1;
  double eps = 0.1;

  [[nodiscard]] bool contains(std::span<const double> b) const;
  /// Length of the side of the shifted simplex, 1 - (n+1) eps.
  [[nodiscard]] double simplex_side() const { return 1.0 - (n + 1) * eps; }
};

/// Throws DomainError if eps >= 1/(n+1).
TruncatedDomain domain(const ModelConfig& config);

enum class Method { MonteCarlo, Exact1D };

struct IntegralEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  Method method = Method::MonteCarlo;
};

enum class Proposal {
  /// Density proportional to prod_{k=1}^n b_k^-2 on the box
  /// [eps, 1-eps]^n, restricted to the region by rejection.
  Product,
  /// Equal mixture over m = 0..n of the product density on the n simplex
  /// coordinates other than b_m. Matches a b_k^-2 singularity at every
  /// face of the region, including the implied coordinate b_0.
  SymmetricMixture,
  /// Half SymmetricMixture, half uniform on the region. The uniform part
  /// keeps integrands that live in the bulk at bounded weight.
  Defensive,
};

struct McOptions {
  std::int64_t samples = 100000;
  std::uint64_t seed = 1;
  /// Independent RNG streams. Results depend on (seed, shards) only.
  int shards = 16;
  /// Worker threads; does not affect results.
  int threads = 1;
  Proposal proposal = Proposal::Product;
};

/// Integrand over b_1..b_n.
using Integrand = std::function<double(std::span<const double>)>;
/// Vector integrand writing one value per output slot.
using MultiIntegrand =
    std::function<void(std::span<const double>, std::span<double>)>;

/// Joint estimate of several integrals from one set of samples.
struct MultiEstimate {
  Eigen::VectorXd value;
  /// Covariance of the estimates (not of the weights).
  Eigen::MatrixXd covariance;
  std::int64_t samples = 0;
  std::int64_t accepted = 0;
};

/// Importance-sampled estimate of the integral of f over dom.
/// Throws SamplerError if samples < 1000 or fewer than 1e-4 of the draws
/// land in the region.
IntegralEstimate mc_integrate(const Integrand& f, const TruncatedDomain& dom,
                              const McOptions& options);

MultiEstimate mc_integrate_many(const MultiIntegrand& f, int outputs,
                                const TruncatedDomain& dom,
                                const McOptions& options);

/// Ratio of two jointly estimated integrals with a delta-method error.
struct RatioEstimate {
  double value = 0.0;
  double std_error = 0.0;
};
RatioEstimate ratio_of(const MultiEstimate& m, int numerator, int denominator);

/// Probability density of the proposal at b (zero outside the region).
double proposal_density(std::span<const double> b, const TruncatedDomain& dom,
                        Proposal proposal);

/// Exact n = 1 truncated-fiber volume (4/|lt|)(1/eps - 1/(1-eps)).
double exact_volume_n1(const ModelConfig& config);

}  // namespace kdegen
