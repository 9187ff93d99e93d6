#include "condshrink/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace condshrink {

namespace {

// Scalar shrinker value at an observed eigenvalue; the multi-spike rule must
// carry its tuning by the time it gets here.
double shrink_at(const ShrinkerSpec& spec, double lambda, double gamma) {
  switch (spec.kind) {
    case ShrinkerKind::single_spike_optimal:
      return eta_single(lambda, gamma);
    case ShrinkerKind::multi_spike_optimal:
      if (!spec.lambda1) {
        throw std::logic_error("multi-spike shrinker used without tuning");
      }
      return eta_multi(lambda, *spec.lambda1, gamma);
    case ShrinkerKind::minimax:
      return eta_minimax(lambda, gamma);
    case ShrinkerKind::mmst:
      return eta_mmst(lambda, gamma);
    case ShrinkerKind::precision:
      return eta_pnl(lambda, gamma);
    case ShrinkerKind::identity:
      return 1.0;
    case ShrinkerKind::raw:
      return lambda;
  }
  throw std::logic_error("unreachable");
}

// Spike-scale points where a shrinker's behavior switches branch; the block
// eigenvalue extremes can sit at these corners, so the sweep grids carry
// them explicitly.
void append_thresholds(const ShrinkerSpec& spec, double gamma,
                       std::vector<double>* pts) {
  const double detect = spike_detection_threshold(gamma);
  pts->push_back(detect);
  pts->push_back(detect - 1e-6);
  pts->push_back(detect + 1e-6);
  switch (spec.kind) {
    case ShrinkerKind::single_spike_optimal:
      pts->push_back(dead_zone_single(gamma).ell_threshold);
      break;
    case ShrinkerKind::multi_spike_optimal:
      if (spec.lambda1 && *spec.lambda1 > bulk_edge_upper(gamma)) {
        const double ell1 = eigen_inverse(*spec.lambda1, gamma);
        pts->push_back(1.0 / nu_minus_star(ell1, gamma));
      }
      break;
    case ShrinkerKind::minimax:
      pts->push_back(1.0 / nu_minus_minimax(gamma));
      break;
    default:
      break;
  }
}

double clamp_regret(double pct) { return pct < 0.0 ? 0.0 : pct; }

struct Extremes {
  double hi = 1.0;
  double lo = 1.0;
  double arg_hi = 1.0;
  double arg_lo = 1.0;

  void absorb(const PivotBlock& b, double ell) {
    if (b.nu_plus > hi) {
      hi = b.nu_plus;
      arg_hi = ell;
    }
    if (b.nu_minus < lo) {
      lo = b.nu_minus;
      arg_lo = ell;
    }
  }
  double kappa() const { return hi / lo; }
};

}  // namespace

double kappa_star(double ell1, double gamma) {
  detail::require_gamma(gamma);
  detail::require_ell(ell1);
  const double d = ell1 - 1.0;
  double delta;
  if (ell1 > dead_zone_single(gamma).ell_threshold) {
    delta = gamma * (d * d - gamma) / (d * ((1.0 + gamma) * d + 2.0 * gamma));
  } else {
    // Dead zone: the optimal estimate is the identity, with loss ell1.
    const double q = (1.0 - 1.0 / ell1) / (1.0 + 1.0 / ell1);
    delta = q * q;
  }
  const double s = std::sqrt(delta);
  return (1.0 + s) / (1.0 - s);
}

double kappa_star_limit(double gamma) {
  detail::require_gamma(gamma);
  const double s = std::sqrt(gamma / (gamma + 1.0));
  return (1.0 + s) / (1.0 - s);
}

double rsrg_from_kappa(double kappa) {
  if (!(kappa >= 1.0)) {
    throw std::domain_error("rsrg_from_kappa: kappa must be >= 1");
  }
  const double r = std::sqrt(kappa);
  return (r + 1.0 / r) / 2.0;
}

LossReport loss_report(const SpikeConfig& config, const ShrinkerSpec& spec) {
  std::vector<double> lambdas;
  lambdas.reserve(config.spikes.size());
  for (double ell : config.spikes) {
    lambdas.push_back(eigen_map(ell, config.gamma));
  }
  const std::vector<double> etas = apply(spec, lambdas, config.gamma);
  const double kappa = asymptotic_kappa(config, etas);
  const double opt = kappa_star(config.spikes.front(), config.gamma);
  LossReport report;
  report.kappa = kappa;
  report.rsrg = rsrg_from_kappa(kappa);
  report.kappa_star = opt;
  report.regret_kappa_pct = clamp_regret(100.0 * (1.0 - opt / kappa));
  report.regret_rsrg_pct =
      clamp_regret(100.0 * (1.0 - rsrg_from_kappa(opt) / report.rsrg));
  return report;
}

std::vector<double> spike_grid(const SweepGrid& grid) {
  std::vector<double> pts;
  const int nlin =
      static_cast<int>(std::round((grid.lin_max - 1.0) / grid.lin_step));
  pts.reserve(nlin + grid.log_points + 2);
  for (int i = 0; i <= nlin; ++i) {
    pts.push_back(1.0 + i * grid.lin_step);
  }
  if (grid.far_point > grid.lin_max) {
    const double ratio = grid.far_point / grid.lin_max;
    for (int i = 1; i < grid.log_points; ++i) {
      pts.push_back(grid.lin_max *
                    std::pow(ratio, static_cast<double>(i) / grid.log_points));
    }
    pts.push_back(grid.far_point);
  }
  return pts;
}

std::vector<double> default_gamma_grid() {
  std::vector<double> g;
  for (int i = 0;; ++i) {
    const double v = 0.01 + 0.02 * i;
    if (v > 1.995) break;
    g.push_back(v);
  }
  g.push_back(2.0);  // grid endpoint, unreachable by the step
  return g;
}

WorstConfig worst_config_kappa(const ShrinkerSpec& spec, double ell_top,
                               double gamma, const SweepGrid& grid) {
  detail::require_gamma(gamma);
  detail::require_ell(ell_top);
  ShrinkerSpec tuned = spec;
  if (spec.kind == ShrinkerKind::multi_spike_optimal && !spec.lambda1) {
    tuned.lambda1 = eigen_map(ell_top, gamma);
  }

  std::vector<double> pts = spike_grid(grid);
  append_thresholds(tuned, gamma, &pts);
  pts.push_back(ell_top);
  std::sort(pts.begin(), pts.end());

  Extremes ext;
  for (double ell : pts) {
    if (ell < 1.0 || ell > ell_top) continue;
    const double eta = shrink_at(tuned, eigen_map(ell, gamma), gamma);
    ext.absorb(block(ell, eta, gamma), ell);
  }
  return {ext.kappa(), ext.hi, ext.arg_hi, ext.lo, ext.arg_lo};
}

RegretSweepRow max_regret(const ShrinkerSpec& spec, double gamma,
                          const SweepGrid& grid) {
  detail::require_gamma(gamma);
  std::vector<double> pts = spike_grid(grid);
  const bool self_tuned =
      spec.kind == ShrinkerKind::multi_spike_optimal && !spec.lambda1;
  if (!self_tuned) append_thresholds(spec, gamma, &pts);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  RegretSweepRow row{gamma, spec, 0.0, 0.0, 1.0};
  if (self_tuned) {
    // The tuning moves with the top spike, so the inner extremes have to be
    // recomputed for every grid point.
    for (double ell : pts) {
      ShrinkerSpec tuned = spec;
      tuned.lambda1 = eigen_map(ell, gamma);
      Extremes ext;
      for (double inner : pts) {
        if (inner > ell) break;
        const double eta = shrink_at(tuned, eigen_map(inner, gamma), gamma);
        ext.absorb(block(inner, eta, gamma), inner);
      }
      const double opt = kappa_star(ell, gamma);
      const double rk = clamp_regret(100.0 * (1.0 - opt / ext.kappa()));
      const double rr = clamp_regret(
          100.0 * (1.0 - rsrg_from_kappa(opt) / rsrg_from_kappa(ext.kappa())));
      if (rk > row.max_regret_kappa_pct) {
        row.max_regret_kappa_pct = rk;
        row.argmax_ell = ell;
      }
      row.max_regret_rsrg_pct = std::max(row.max_regret_rsrg_pct, rr);
    }
    return row;
  }

  // Scalar rules: one pass with running extremes gives the worst
  // configuration for every prefix [1, ell] at once.
  Extremes ext;
  for (double ell : pts) {
    const double eta = shrink_at(spec, eigen_map(ell, gamma), gamma);
    ext.absorb(block(ell, eta, gamma), ell);
    const double opt = kappa_star(ell, gamma);
    const double rk = clamp_regret(100.0 * (1.0 - opt / ext.kappa()));
    const double rr = clamp_regret(
        100.0 * (1.0 - rsrg_from_kappa(opt) / rsrg_from_kappa(ext.kappa())));
    if (rk > row.max_regret_kappa_pct) {
      row.max_regret_kappa_pct = rk;
      row.argmax_ell = ell;
    }
    row.max_regret_rsrg_pct = std::max(row.max_regret_rsrg_pct, rr);
  }
  return row;
}

std::vector<RegretSweepRow> regret_sweep(std::span<const ShrinkerSpec> specs,
                                         std::span<const double> gammas,
                                         int threads, const SweepGrid& grid) {
  if (specs.empty() || gammas.empty()) {
    throw std::domain_error("regret_sweep: specs and gammas must be non-empty");
  }
  std::vector<double> gs(gammas.begin(), gammas.end());
  std::sort(gs.begin(), gs.end());

  std::vector<RegretSweepRow> rows(specs.size() * gs.size());
  const auto cell = [&](std::size_t idx) {
    const std::size_t si = idx / gs.size();
    const std::size_t gi = idx % gs.size();
    rows[idx] = max_regret(specs[si], gs[gi], grid);
  };

  int nthreads = threads > 0
                     ? threads
                     : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::max(1, std::min<int>(nthreads, rows.size()));
  if (nthreads == 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) cell(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < rows.size();
             i = next.fetch_add(1)) {
          cell(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  return rows;
}

}  // namespace condshrink
