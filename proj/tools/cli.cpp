// Copyright 2026 The kdegen Authors
// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "kdegen/curvature.hpp"
#include "kdegen/deformation.hpp"
#include "kdegen/errors.hpp"
#include "kdegen/experiments.hpp"
#include "kdegen/geometry.hpp"
#include "kdegen/records.hpp"

namespace kdegen::cli {

namespace {

struct Common {
  int n = 1;
  double log_t2 = -20.0;
  double c_log2 = -2.0;
  std::int64_t samples = 100000;
  std::uint64_t seed = 1;
  int threads = 1;
  int shards = 16;
  std::string format = "json";
  std::string out_path;
  bool timing = false;
};

struct Extra {
  std::vector<double> lt_list;
  std::string quantity = "wp-ratio";
  double sigma = 1.0;
  std::vector<double> b;
  std::vector<double> theta;
};

McOptions mc_options(const Common& c) {
  McOptions o;
  o.samples = c.samples;
  o.seed = c.seed;
  o.threads = c.threads;
  o.shards = c.shards;
  return o;
}

RunRecord base_record(const std::string& command, const Common& c) {
  RunRecord r;
  r.command = command;
  r.n = c.n;
  r.log_t2 = c.log_t2;
  r.c_log2 = c.c_log2;
  r.seed = c.seed;
  r.samples = c.samples;
  r.metadata["log_t2"] = "log|t|^2 (natural log)";
  r.metadata["c_log2"] = "log c^2 (natural log), truncation radius c";
  return r;
}

std::string lt_key(const std::string& prefix, double lt) {
  return prefix + "@" + format_double(lt);
}

RunRecord cmd_volume(const Common& c, const Extra&) {
  const ModelConfig cfg = ModelConfig::make(c.n, c.log_t2, c.c_log2);
  const IntegralEstimate v = run_volume(cfg, mc_options(c));
  RunRecord r = base_record("volume", c);
  r.set("volume", v.value, v.std_error);
  r.set("eps", cfg.eps());
  if (cfg.n == 1) r.set("exact_volume", exact_volume_n1(cfg));
  r.metadata["volume"] =
      "integral of omega_t^n over X_t in (D*_c)^(n+1); theta integrated "
      "analytically ((2 pi)^n), omega_t^n = n! pi^-n a^2/prod a_k^2 da dtheta";
  return r;
}

RunRecord cmd_wp_ratio(const Common& c, const Extra&) {
  const ModelConfig cfg = ModelConfig::make(c.n, c.log_t2, c.c_log2);
  const WpRatio w = run_wp_ratio(cfg, mc_options(c));
  RunRecord r = base_record("wp-ratio", c);
  r.set("ratio", w.ratio, w.std_error);
  r.set("predicted", w.predicted);
  r.set("rel_dev", w.rel_dev, w.std_error / w.predicted);
  r.set("ratio_over_predicted", w.ratio / w.predicted, w.std_error / w.predicted);
  r.set("volume", w.volume.value, w.volume.std_error);
  r.set("wp_integral", w.wp_integral.value, w.wp_integral.std_error);
  r.set("eps", cfg.eps());
  r.metadata["ratio"] =
      "int |dbar W|^2 omega_t^n / int omega_t^n over the truncated fiber";
  r.metadata["predicted"] = "2 n |log c^2| (1 + pi/2) / |log|t|^2|^3";
  return r;
}

RunRecord cmd_sweep(Common c, const Extra& e) {
  if (e.lt_list.empty()) throw DomainError("--log-t2-list is required");
  c.log_t2 = e.lt_list.front();
  const ModelConfig base = ModelConfig::make(c.n, c.log_t2, c.c_log2);
  const SweepQuantity q =
      e.quantity == "volume" ? SweepQuantity::Volume : SweepQuantity::WpRatio;
  const SweepReport s = run_sweep(base, e.lt_list, mc_options(c), q);
  RunRecord r = base_record("sweep", c);
  const std::string name = e.quantity == "volume" ? "volume" : "ratio";
  std::ostringstream list;
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    const SweepRow& row = s.rows[i];
    list << (i ? "," : "") << format_double(row.lt);
    r.set(lt_key(name, row.lt), row.quantity, row.std_error);
    if (q == SweepQuantity::WpRatio) {
      r.set(lt_key("log_implied_constant", row.lt), row.log_implied_constant);
    }
  }
  r.set("fitted_exponent", s.fitted_exponent, s.exponent_std_error);
  r.set("fit_residual", s.fit_residual);
  if (q == SweepQuantity::WpRatio) r.set("log_constant_spread", s.log_constant_spread);
  r.metadata["log_t2_list"] = list.str();
  r.metadata["quantity"] = name;
  r.metadata["fitted_exponent"] = "weighted least-squares slope of log " + name +
                                  " against log |log|t|^2|";
  return r;
}

RunRecord cmd_bounds_scan(const Common& c, const Extra&) {
  const ModelConfig cfg = ModelConfig::make(c.n, c.log_t2, c.c_log2);
  const BoundsReport b = run_bounds_scan(cfg, c.samples, c.seed);
  RunRecord r = base_record("bounds-scan", c);
  const auto [lo, hi] = phi_bounds(c.n);
  r.set("phi_min", b.phi_range.first);
  r.set("phi_max", b.phi_range.second);
  r.set("phi_bound_lo", lo);
  r.set("phi_bound_hi", hi);
  r.set("grad_phi_max", b.grad_phi_max);
  r.set("grad_phi_bound", 4.0 * (c.n + 1));
  r.set("frame_eig_min", b.frame_eigen_range.first);
  r.set("frame_eig_max", b.frame_eigen_range.second);
  r.set("curvature_sup", b.curvature_sup);
  r.metadata["sampling"] = "uniform on the open b-simplex, dominant chart";
  return r;
}

RunRecord cmd_flow_check(const Common& c, const Extra& e) {
  const ModelConfig cfg = ModelConfig::make(c.n, c.log_t2, c.c_log2);
  const FlowCheck f = run_flow_check(cfg, e.sigma, c.samples, c.seed);
  RunRecord r = base_record("flow-check", c);
  const double tol = 1e-9 * cfg.abs_lt();
  r.set("sigma", e.sigma);
  r.set("max_conservation_error", f.max_conservation_error);
  r.set("max_composition_error", f.max_composition_error);
  r.set("tolerance", tol);
  r.metadata["flow"] = "RK4, 100 steps per unit sigma, da_k/dsigma = 2 a_k^2/a^2";
  if (f.max_conservation_error > tol || f.max_composition_error > tol) {
    std::ostringstream msg;
    msg << "flow check exceeded tolerance " << tol << ": conservation "
        << f.max_conservation_error << ", composition " << f.max_composition_error;
    throw InvariantViolation(msg.str());
  }
  return r;
}

RunRecord cmd_point_eval(Common c, const Extra& e) {
  c.samples = 1;
  const ModelConfig cfg = ModelConfig::make(c.n, c.log_t2, c.c_log2);
  std::vector<double> theta = e.theta;
  if (theta.empty()) theta.assign(e.b.size(), 0.0);
  const LogPoint p = make_point(e.b, theta, cfg);
  const LogPoint chart = dominant_chart(p);
  RunRecord r = base_record("point-eval", c);
  for (int k = 0; k <= p.n(); ++k) r.set("a_" + std::to_string(k), p.a(k));
  r.set("a_squared", a_squared(p));
  r.set("metric_determinant", metric_determinant(p));
  r.set("volume_density", volume_density(p));
  r.set("phi", phi(p));
  const Eigen::VectorXd grad = grad_phi_frame(chart);
  for (int i = 0; i < grad.size(); ++i) {
    r.set("grad_phi_frame_" + std::to_string(i + 1), grad[i]);
  }
  const Eigen::VectorXd ev = frame_metric(chart).eigenvalues();
  r.set("frame_eig_min", ev[0]);
  r.set("frame_eig_max", ev[ev.size() - 1]);
  r.set("curvature_sup", curvature_sup(p));
  const Eigen::VectorXd w = w_coefficients(p);
  for (int k = 0; k < w.size(); ++k) r.set("w_coefficient_" + std::to_string(k), w[k]);
  r.set("dbar_w_norm_sq", dbar_w_norm_sq(p));
  r.set("fiber_norm_sq", fiber_norm_sq(p));
  r.set("wp_integrand", wp_integrand(p));
  r.metadata["frame"] = "frame quantities in the chart where a_0^2 is largest";
  return r;
}

}  // namespace

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"Numerical checks for the model degeneration prod z_k = t", "kdegen"};
  app.require_subcommand(1);
  Common common;
  Extra extra;

  const auto add_common = [&](CLI::App* sub, bool needs_lt) {
    sub->add_option("--n", common.n, "fiber complex dimension")->capture_default_str();
    auto* lt = sub->add_option("--log-t2", common.log_t2, "log|t|^2");
    if (needs_lt) lt->required();
    sub->add_option("--c-log2", common.c_log2, "log c^2 of the truncation radius")
        ->capture_default_str();
    sub->add_option("--samples", common.samples, "sample count")->capture_default_str();
    sub->add_option("--seed", common.seed, "RNG seed")->capture_default_str();
    sub->add_option("--threads", common.threads, "worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--shards", common.shards, "independent RNG streams")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--format", common.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_option("--out", common.out_path, "write the record to FILE");
    sub->add_flag("--timing", common.timing, "include wall_time_ms in the record");
  };

  using Handler = std::function<RunRecord(const Common&, const Extra&)>;
  std::vector<std::pair<CLI::App*, Handler>> commands;

  auto* volume = app.add_subcommand("volume", "truncated-fiber volume");
  add_common(volume, true);
  commands.emplace_back(volume, cmd_volume);

  auto* wp = app.add_subcommand("wp-ratio", "Weil-Petersson ratio against its prediction");
  add_common(wp, true);
  commands.emplace_back(wp, cmd_wp_ratio);

  auto* sweep = app.add_subcommand("sweep", "power-law fit over a list of log|t|^2");
  add_common(sweep, false);
  sweep->add_option("--log-t2-list", extra.lt_list, "comma-separated log|t|^2 values")
      ->delimiter(',')
      ->required();
  sweep->add_option("--quantity", extra.quantity, "quantity to sweep")
      ->check(CLI::IsMember({"wp-ratio", "volume"}))
      ->capture_default_str();
  commands.emplace_back(sweep, cmd_sweep);

  auto* bounds = app.add_subcommand("bounds-scan", "uniform-boundedness scan");
  add_common(bounds, true);
  commands.emplace_back(bounds, cmd_bounds_scan);

  auto* flow = app.add_subcommand("flow-check", "conservation and composition of the W flow");
  add_common(flow, true);
  flow->add_option("--sigma", extra.sigma, "flow time")->capture_default_str();
  commands.emplace_back(flow, cmd_flow_check);

  auto* point = app.add_subcommand("point-eval", "pointwise quantities at one point");
  add_common(point, true);
  point->add_option("--b", extra.b, "b_1..b_n (comma-separated)")->delimiter(',')->required();
  point->add_option("--theta", extra.theta, "theta_1..theta_n (comma-separated)")
      ->delimiter(',');
  commands.emplace_back(point, cmd_point_eval);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  for (const auto& [sub, handler] : commands) {
    if (!sub->parsed()) continue;
    try {
      const auto start = std::chrono::steady_clock::now();
      RunRecord record = handler(common, extra);
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
      err << sub->get_name() << ": done in " << ms << " ms\n";
      if (common.timing) record.wall_time_ms = ms;
      const std::string text =
          common.format == "csv" ? to_csv(record) : to_json(record);
      if (common.out_path.empty()) {
        out << text;
      } else {
        std::ofstream file(common.out_path, std::ios::binary);
        if (!file) {
          err << "error: cannot open " << common.out_path << " for writing\n";
          return kExitUsage;
        }
        file << text;
      }
      return kExitOk;
    } catch (const IdentityViolation& e) {
      err << "identity check failed: " << e.what() << "\n";
      return kExitCheckFailed;
    } catch (const InvariantViolation& e) {
      err << "bound check failed: " << e.what() << "\n";
      return kExitCheckFailed;
    } catch (const FitError& e) {
      err << "fit check failed: " << e.what() << "\n";
      return kExitCheckFailed;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  return kExitUsage;
}

}  // namespace kdegen::cli
