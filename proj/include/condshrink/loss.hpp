#pragma once

#include <span>
#include <vector>

#include "condshrink/pivot.hpp"
#include "condshrink/shrinkers.hpp"
#include "condshrink/spiked.hpp"

namespace condshrink {

// Asymptotic losses, the Sharpe-ratio isometry, relative regrets and the
// grid-based worst-case sweeps.

// Optimal kappa-loss for a single emerged spike ell1:
//   (1 + sqrt(d)) / (1 - sqrt(d)),
//   d = gamma ((ell-1)^2 - gamma) / ((ell-1)((1+gamma)(ell-1) + 2 gamma))
// above the single-spike dead zone and ((1 - 1/ell)/(1 + 1/ell))^2 below it
// (where the identity estimate is optimal and the loss is just ell).
double kappa_star(double ell1, double gamma);

// ell1 -> infinity limit (1 + sqrt(g/(g+1))) / (1 - sqrt(g/(g+1))).
double kappa_star_limit(double gamma);

// Relative Sharpe ratio guarantee as a function of the pivot condition
// number: 0.5 * sqrt(kappa + 1/kappa + 2).  Monotone, equals 1 at kappa = 1.
double rsrg_from_kappa(double kappa);

struct LossReport {
  double kappa;             // achieved asymptotic loss
  double rsrg;              // its Sharpe-ratio guarantee
  double kappa_star;        // optimum for the configuration
  double regret_kappa_pct;  // 100 (1 - kappa_star / kappa), clamped at 0
  double regret_rsrg_pct;
};

// Asymptotic loss and regrets of a shrinker at a configuration.  The
// shrinker is evaluated at the limiting empirical eigenvalues; the
// multi-spike rule auto-tunes with the top one unless the spec pins lambda1.
LossReport loss_report(const SpikeConfig& config, const ShrinkerSpec& spec);

// Grid controls for the worst-case sweeps.  The default reproduces the
// reference grid {1, 1.01, ..., 100} plus a far point standing in for
// ell = infinity, refined with the shrinker thresholds.
struct SweepGrid {
  double lin_max = 100.0;
  double lin_step = 0.01;
  double far_point = 1e5;
  int log_points = 160;  // geometric fill between lin_max and far_point
};

std::vector<double> spike_grid(const SweepGrid& grid = {});

// Default gamma grid {0.01, 0.03, ..., 1.99} with 2.0 appended.
std::vector<double> default_gamma_grid();

struct WorstConfig {
  double kappa;         // sup over configurations with top spike ell_top
  double nu_plus_max;   // extreme block eigenvalues over the inner grid
  double argmax_ell;
  double nu_minus_min;
  double argmin_ell;
};

// Worst kappa-loss of a shrinker over all spike configurations whose top
// spike is ell_top: the inner max/min of the block eigenvalues runs over a
// dense grid on [1, ell_top] including both endpoints and the shrinker
// thresholds, combined with the bulk block per the condition number formula.
WorstConfig worst_config_kappa(const ShrinkerSpec& spec, double ell_top,
                               double gamma, const SweepGrid& grid = {});

struct RegretSweepRow {
  double gamma;
  ShrinkerSpec shrinker;
  double max_regret_kappa_pct;
  double max_regret_rsrg_pct;
  double argmax_ell;  // top spike of the worst configuration found
};

// Maximum relative regret of a shrinker over all spike configurations,
// computed over the reference grid of top-spike values.
RegretSweepRow max_regret(const ShrinkerSpec& spec, double gamma,
                          const SweepGrid& grid = {});

// Cross product of shrinkers and gammas, rows ordered by (spec, gamma).
// threads = 0 means hardware concurrency.
std::vector<RegretSweepRow> regret_sweep(std::span<const ShrinkerSpec> specs,
                                         std::span<const double> gammas,
                                         int threads = 0,
                                         const SweepGrid& grid = {});

}  // namespace condshrink
