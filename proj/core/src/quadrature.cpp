// Copyright 2026 The kdegen Authors
// SPDX-License-Identifier: Apache-2.0
#include "kdegen/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "kdegen/errors.hpp"

namespace kdegen {

namespace {

// Running mean and co-moment matrix; merged with Chan's update so shard
// results combine in a fixed order.
struct Accumulator {
  std::int64_t count = 0;
  std::int64_t accepted = 0;
  Eigen::VectorXd mean;
  Eigen::MatrixXd comoment;

  explicit Accumulator(int m)
      : mean(Eigen::VectorXd::Zero(m)), comoment(Eigen::MatrixXd::Zero(m, m)) {}

  void add(const Eigen::VectorXd& x) {
    ++count;
    const Eigen::VectorXd delta = x - mean;
    mean += delta / static_cast<double>(count);
    comoment += delta * (x - mean).transpose();
  }

  void merge(const Accumulator& o) {
    if (o.count == 0) return;
    const auto na = static_cast<double>(count);
    const auto nb = static_cast<double>(o.count);
    const double nt = na + nb;
    const Eigen::VectorXd delta = o.mean - mean;
    mean += delta * (nb / nt);
    comoment += o.comoment + delta * delta.transpose() * (na * nb / nt);
    count += o.count;
    accepted += o.accepted;
  }
};

// Inverse CDF of the density b^-2 / z on [eps, 1 - eps].
struct InverseSquareSampler {
  double eps;
  double z;  // 1/eps - 1/(1-eps)

  explicit InverseSquareSampler(double e)
      : eps(e), z(1.0 / e - 1.0 / (1.0 - e)) {}
  [[nodiscard]] double operator()(double u) const {
    return 1.0 / (1.0 / eps - u * z);
  }
};

std::mt19937_64 shard_engine(std::uint64_t seed, int shard) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shard)};
  return std::mt19937_64(seq);
}

void run_shard(const MultiIntegrand& f, int outputs, const TruncatedDomain& dom,
               Proposal proposal, std::uint64_t seed, int shard,
               std::int64_t samples, Accumulator& acc) {
  const int n = dom.n;
  const InverseSquareSampler inv(dom.eps);
  const double z_pow = std::pow(inv.z, n);
  auto engine = shard_engine(seed, shard);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, n);

  std::vector<double> all(n + 1);  // b_0 .. b_n
  Eigen::VectorXd values(outputs);
  Eigen::VectorXd weighted(outputs);
  // The region is the simplex scaled by `side` and shifted by eps.
  const double side = 1.0 - (n + 1) * dom.eps;
  const double uniform_density = std::tgamma(n + 1.0) / std::pow(side, n);
  std::exponential_distribution<double> spacing(1.0);
  for (std::int64_t s = 0; s < samples; ++s) {
    const bool bulk = proposal == Proposal::Defensive && unit(engine) < 0.5;
    if (bulk) {
      double total = 0.0;
      for (double& c : all) {
        c = spacing(engine);
        total += c;
      }
      for (double& c : all) c = dom.eps + side * c / total;
    } else {
      int implied = 0;
      if (proposal != Proposal::Product) implied = pick(engine);
      double sum = 0.0;
      for (int k = 0; k <= n; ++k) {
        if (k == implied) continue;
        all[k] = inv(unit(engine));
        sum += all[k];
      }
      all[implied] = 1.0 - sum;
    }
    const std::span<const double> b(all.data() + 1, n);
    if (!bulk && (!(all[0] >= dom.eps) || !dom.contains(b))) {
      acc.add(Eigen::VectorXd::Zero(outputs));
      continue;
    }
    double weight = 0.0;
    if (proposal == Proposal::Product) {
      weight = z_pow;
      for (int k = 1; k <= n; ++k) weight *= all[k] * all[k];
    } else {
      double prod = 1.0;
      double sq = 0.0;
      for (double c : all) {
        prod *= c * c;
        sq += c * c;
      }
      const double mixture = sq / ((n + 1) * z_pow * prod);
      weight = proposal == Proposal::Defensive
                   ? 1.0 / (0.5 * mixture + 0.5 * uniform_density)
                   : 1.0 / mixture;
    }
    f(b, std::span<double>(values.data(), outputs));
    weighted = values * weight;
    acc.add(weighted);
    ++acc.accepted;
  }
}

}  // namespace

bool TruncatedDomain::contains(std::span<const double> b) const {
  if (static_cast<int>(b.size()) != n) return false;
  double sum = 0.0;
  for (double v : b) {
    if (!(v >= eps)) return false;
    sum += v;
  }
  return sum <= 1.0 - eps;
}

TruncatedDomain domain(const ModelConfig& config) {
  const double eps = config.eps();
  if (config.n < 1 || !(eps > 0.0) || !(eps < 1.0 / (config.n + 1))) {
    std::ostringstream msg;
    msg << "truncated fiber is empty: eps=" << eps
        << " must lie in (0, 1/(n+1)) with n=" << config.n;
    throw DomainError(msg.str());
  }
  return {config.n, eps};
}

MultiEstimate mc_integrate_many(const MultiIntegrand& f, int outputs,
                                const TruncatedDomain& dom,
                                const McOptions& options) {
  if (options.samples < 1000) {
    throw SamplerError("Monte Carlo integration needs at least 1000 samples");
  }
  if (options.shards < 1 || options.threads < 1) {
    throw SamplerError("shards and threads must be positive");
  }
  const int shards = options.shards;
  std::vector<Accumulator> parts(shards, Accumulator(outputs));
  const auto per_shard = [&](int s) {
    return options.samples / shards + (s < options.samples % shards ? 1 : 0);
  };
  std::atomic<int> next{0};
  const auto worker = [&] {
    for (int s = next++; s < shards; s = next++) {
      run_shard(f, outputs, dom, options.proposal, options.seed, s,
                per_shard(s), parts[s]);
    }
  };
  const int nthreads = std::min(options.threads, shards);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  }

  Accumulator total(outputs);
  for (const Accumulator& part : parts) total.merge(part);

  const double acceptance =
      static_cast<double>(total.accepted) / static_cast<double>(total.count);
  if (acceptance < 1e-4) {
    std::ostringstream msg;
    msg << "rejection acceptance rate " << acceptance
        << " below 1e-4 (eps=" << dom.eps << ", n=" << dom.n << ")";
    throw SamplerError(msg.str());
  }
  const auto nsamp = static_cast<double>(total.count);
  MultiEstimate out;
  out.value = total.mean;
  out.covariance = total.comoment / (nsamp * (nsamp - 1.0));
  out.samples = total.count;
  out.accepted = total.accepted;
  return out;
}

IntegralEstimate mc_integrate(const Integrand& f, const TruncatedDomain& dom,
                              const McOptions& options) {
  const MultiEstimate m = mc_integrate_many(
      [&f](std::span<const double> b, std::span<double> out) { out[0] = f(b); },
      1, dom, options);
  return {m.value[0], std::sqrt(std::max(0.0, m.covariance(0, 0))), m.samples,
          Method::MonteCarlo};
}

RatioEstimate ratio_of(const MultiEstimate& m, int numerator, int denominator) {
  const double x = m.value[numerator];
  const double y = m.value[denominator];
  const double r = x / y;
  const double var = (m.covariance(numerator, numerator) -
                      2.0 * r * m.covariance(numerator, denominator) +
                      r * r * m.covariance(denominator, denominator)) /
                     (y * y);
  return {r, std::sqrt(std::max(0.0, var))};
}

double proposal_density(std::span<const double> b, const TruncatedDomain& dom,
                        Proposal proposal) {
  if (!dom.contains(b)) return 0.0;
  const int n = dom.n;
  const double z_pow = std::pow(1.0 / dom.eps - 1.0 / (1.0 - dom.eps), n);
  double b0 = 1.0;
  double prod = 1.0;
  double sq = 0.0;
  for (double v : b) {
    b0 -= v;
    prod *= v * v;
    sq += v * v;
  }
  if (proposal == Proposal::Product) return 1.0 / (prod * z_pow);
  prod *= b0 * b0;
  sq += b0 * b0;
  const double mixture = sq / (prod * z_pow * (n + 1));
  if (proposal == Proposal::SymmetricMixture) return mixture;
  const double side = 1.0 - (n + 1) * dom.eps;
  return 0.5 * mixture + 0.5 * std::tgamma(n + 1.0) / std::pow(side, n);
}

double exact_volume_n1(const ModelConfig& config) {
  if (config.n != 1) throw DomainError("exact_volume_n1 requires n = 1");
  const TruncatedDomain dom = domain(config);
  return 4.0 / config.abs_lt() * (1.0 / dom.eps - 1.0 / (1.0 - dom.eps));
}

}  // namespace kdegen
