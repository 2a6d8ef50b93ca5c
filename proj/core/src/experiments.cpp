// Copyright 2026 The kdegen Authors
// SPDX-License-Identifier: Apache-2.0
#include "kdegen/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "kdegen/curvature.hpp"
#include "kdegen/deformation.hpp"
#include "kdegen/errors.hpp"
#include "kdegen/geometry.hpp"

namespace kdegen {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoundSlack = 1e-12;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

std::string describe(const LogPoint& p) {
  std::ostringstream os;
  os.precision(17);
  os << "a=(";
  for (int k = 0; k <= p.n(); ++k) os << (k ? "," : "") << p.a(k);
  os << ") theta=(";
  for (int k = 0; k < p.n(); ++k) os << (k ? "," : "") << p.theta()[k];
  os << ")";
  return os.str();
}

[[noreturn]] void violation(const char* what, double value, const LogPoint& p) {
  std::ostringstream os;
  os.precision(17);
  os << what << " violated: value " << value << " at " << describe(p);
  throw InvariantViolation(os.str());
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double max_residual = 0.0;
};

LineFit weighted_line_fit(const std::vector<double>& x,
                          const std::vector<double>& y,
                          std::vector<double> w) {
  if (std::any_of(w.begin(), w.end(),
                  [](double v) { return !std::isfinite(v) || v <= 0.0; })) {
    std::fill(w.begin(), w.end(), 1.0);
  }
  double sw = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
  }
  const double xm = sx / sw;
  const double ym = sy / sw;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += w[i] * (x[i] - xm) * (x[i] - xm);
    sxy += w[i] * (x[i] - xm) * (y[i] - ym);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ym - fit.slope * xm;
  fit.slope_se = std::sqrt(1.0 / sxx);
  for (std::size_t i = 0; i < x.size(); ++i) {
    fit.max_residual = std::max(
        fit.max_residual, std::abs(y[i] - fit.intercept - fit.slope * x[i]));
  }
  return fit;
}

}  // namespace

IntegralEstimate run_volume(const ModelConfig& config, const McOptions& options) {
  const TruncatedDomain dom = domain(config);
  McOptions opts = options;
  opts.proposal = Proposal::Product;
  IntegralEstimate e = mc_integrate(
      [](std::span<const double> b) {
        double prod = 1.0;
        for (double v : b) prod *= v * v;
        return 1.0 / prod;
      },
      dom, opts);
  const int n = config.n;
  const double prefactor =
      factorial(n + 1) * std::pow(2.0, n) / std::pow(config.abs_lt(), n);
  e.value *= prefactor;
  e.std_error *= prefactor;
  return e;
}

double predicted_wp_ratio(const ModelConfig& config) {
  const double l = config.abs_lt();
  return 2.0 * config.n * std::abs(config.c_log2) * (1.0 + kPi / 2.0) /
         (l * l * l);
}

WpRatio run_wp_ratio(const ModelConfig& config, McOptions options) {
  const TruncatedDomain dom = domain(config);
  options.proposal = Proposal::Defensive;
  const int n = config.n;
  // theta integrates to (2 pi)^n and da = |lt| db.
  const double jacobian = std::pow(2.0 * kPi * config.abs_lt(), n);
  const std::vector<double> theta(n, 0.0);
  const MultiEstimate m = mc_integrate_many(
      [&](std::span<const double> b, std::span<double> out) {
        const LogPoint p = make_point(b, theta, config);
        const double vol = volume_density(p);
        out[0] = jacobian * dbar_w_norm_sq_closed(p) * vol;
        out[1] = jacobian * vol;
      },
      2, dom, options);
  const RatioEstimate r = ratio_of(m, 0, 1);
  WpRatio out;
  out.ratio = r.value;
  out.std_error = r.std_error;
  out.predicted = predicted_wp_ratio(config);
  out.rel_dev = (out.ratio - out.predicted) / out.predicted;
  out.wp_integral = {m.value[0], std::sqrt(m.covariance(0, 0)), m.samples,
                     Method::MonteCarlo};
  out.volume = {m.value[1], std::sqrt(m.covariance(1, 1)), m.samples,
                Method::MonteCarlo};
  return out;
}

SweepReport run_sweep(const ModelConfig& base, const std::vector<double>& lt_list,
                      const McOptions& options, SweepQuantity quantity) {
  if (lt_list.size() < 4) {
    throw DomainError("a sweep needs at least four values of log|t|^2");
  }
  const auto [lo, hi] = std::minmax_element(
      lt_list.begin(), lt_list.end(),
      [](double x, double y) { return std::abs(x) < std::abs(y); });
  if (!(std::abs(*hi) >= 100.0 * std::abs(*lo))) {
    std::ostringstream msg;
    msg << "log|t|^2 values must span at least two decades of |log|t|^2|, got "
        << std::log10(std::abs(*hi) / std::abs(*lo)) << " (from " << *lo << " to " << *hi
        << "); extend the list, e.g. up to " << 100.0 * *lo;
    throw DomainError(msg.str());
  }

  SweepReport report;
  std::vector<double> x, y, w;
  for (double lt : lt_list) {
    const ModelConfig cfg = ModelConfig::make(base.n, lt, base.c_log2);
    SweepRow row;
    row.lt = lt;
    if (quantity == SweepQuantity::WpRatio) {
      const WpRatio r = run_wp_ratio(cfg, options);
      row.quantity = r.ratio;
      row.std_error = r.std_error;
      const double half = std::abs(lt) / 2.0;
      row.log_implied_constant =
          std::log(r.ratio * r.volume.value) + 3.0 * std::log(half);
    } else {
      const IntegralEstimate v = run_volume(cfg, options);
      row.quantity = v.value;
      row.std_error = v.std_error;
    }
    x.push_back(std::log(std::abs(lt)));
    y.push_back(std::log(row.quantity));
    const double rel = row.std_error / row.quantity;
    w.push_back(rel > 0.0 ? 1.0 / (rel * rel) : 0.0);
    report.rows.push_back(row);
  }
  const LineFit fit = weighted_line_fit(x, y, w);
  report.fitted_exponent = fit.slope;
  report.exponent_std_error = fit.slope_se;
  report.fit_residual = fit.max_residual;
  if (quantity == SweepQuantity::WpRatio) {
    double cmin = std::numeric_limits<double>::infinity();
    double cmax = -cmin;
    for (const SweepRow& r : report.rows) {
      cmin = std::min(cmin, r.log_implied_constant);
      cmax = std::max(cmax, r.log_implied_constant);
    }
    report.log_constant_spread = cmax - cmin;
  }
  if (!std::isfinite(fit.slope) || fit.max_residual > kMaxFitResidual) {
    std::ostringstream msg;
    msg << "power-law fit residual " << fit.max_residual << " exceeds "
        << kMaxFitResidual << " (slope " << fit.slope << ")";
    throw FitError(msg.str());
  }
  return report;
}

std::vector<SimplexSample> sample_simplex(int n, std::int64_t count,
                                          std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n)};
  std::mt19937_64 engine(seq);
  std::exponential_distribution<double> spacing(1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::vector<SimplexSample> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<double> e(n + 1);
  while (static_cast<std::int64_t>(out.size()) < count) {
    double total = 0.0;
    for (double& v : e) {
      v = spacing(engine);
      total += v;
    }
    SimplexSample s;
    s.b.resize(n);
    s.theta.resize(n);
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
      s.b[k] = e[k + 1] / total;
      sum += s.b[k];
    }
    for (double& t : s.theta) t = angle(engine);
    // Keep the point strictly inside the open simplex.
    if (sum < 1.0 && std::all_of(s.b.begin(), s.b.end(),
                                 [](double v) { return v > 0.0; })) {
      out.push_back(std::move(s));
    }
  }
  return out;
}

BoundsReport run_bounds_scan(const ModelConfig& config, std::int64_t samples,
                             std::uint64_t seed, bool check_curvature) {
  if (samples < 1000) throw DomainError("bounds scan needs at least 1000 samples");
  const int n = config.n;
  const auto [phi_lo, phi_hi] = phi_bounds(n);
  const double eig_lo = 1.0 / kPi;
  const double eig_hi = (n + 1) / kPi;
  const double grad_hi = 4.0 * (n + 1);

  BoundsReport rep;
  rep.phi_range = {std::numeric_limits<double>::infinity(),
                   -std::numeric_limits<double>::infinity()};
  rep.frame_eigen_range = rep.phi_range;
  for (const SimplexSample& s : sample_simplex(n, samples, seed)) {
    const LogPoint p = dominant_chart(make_point(s.b, s.theta, config));
    const double f = phi(p);
    if (f < phi_lo - kBoundSlack || f > phi_hi + kBoundSlack) {
      violation("phi_t range", f, p);
    }
    rep.phi_range.first = std::min(rep.phi_range.first, f);
    rep.phi_range.second = std::max(rep.phi_range.second, f);

    const double g = grad_phi_frame(p).cwiseAbs().maxCoeff();
    if (g > grad_hi) violation("|W_i phi_t| <= 4(n+1)", g, p);
    rep.grad_phi_max = std::max(rep.grad_phi_max, g);

    const Eigen::VectorXd ev = frame_metric(p).eigenvalues();
    if (ev[0] < eig_lo - kBoundSlack) violation("frame eigenvalue >= 1/pi", ev[0], p);
    if (ev[n - 1] > eig_hi + kBoundSlack) {
      violation("frame eigenvalue <= (n+1)/pi", ev[n - 1], p);
    }
    rep.frame_eigen_range.first = std::min(rep.frame_eigen_range.first, ev[0]);
    rep.frame_eigen_range.second =
        std::max(rep.frame_eigen_range.second, ev[n - 1]);

    rep.curvature_sup =
        std::max(rep.curvature_sup, curvature_sup(p, check_curvature));
    ++rep.samples;
  }
  return rep;
}

FlowCheck run_flow_check(const ModelConfig& config, double sigma,
                         std::int64_t points, std::uint64_t seed) {
  const TruncatedDomain dom = domain(config);
  FlowCheck out;
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const SimplexSample& s : sample_simplex(config.n, points, seed)) {
    // Map the uniform simplex sample into the truncated region.
    std::vector<double> b(s.b.size());
    for (std::size_t k = 0; k < b.size(); ++k) {
      b[k] = dom.eps + dom.simplex_side() * s.b[k];
    }
    const LogPoint p = make_point(b, s.theta, config);
    const LogPoint whole = flow_map(p, sigma, default_flow_steps(sigma));
    const double target = config.lt + 2.0 * sigma;
    out.max_conservation_error =
        std::max(out.max_conservation_error, std::abs(whole.a().sum() - target));

    const double first = sigma * unit(engine);
    const LogPoint mid = flow_map(p, first, default_flow_steps(first));
    const LogPoint composed =
        flow_map(mid, sigma - first, default_flow_steps(sigma - first));
    out.max_composition_error =
        std::max(out.max_composition_error,
                 (composed.a() - whole.a()).cwiseAbs().maxCoeff());
    ++out.points;
  }
  return out;
}

}  // namespace kdegen
