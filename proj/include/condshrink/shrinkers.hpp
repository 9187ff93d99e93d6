#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace condshrink {

// Scalar nonlinearities mapping empirical eigenvalues to estimator
// eigenvalues.  All shrinkers take the observable lambda scale; inversion to
// the spike scale happens internally.  Every shrinker maps its dead zone to
// exactly 1.0 (tests rely on exact collapse).

enum class ShrinkerKind {
  single_spike_optimal,  // optimal for one emerged spike, gamma-only tuning
  multi_spike_optimal,   // optimal for any configuration, tuned by lambda1
  minimax,               // lambda1 -> infinity limit of the multi-spike rule
  mmst,                  // soft threshold at the bulk edge, slope 1/(1+gamma)
  precision,             // optimal Frobenius-loss precision-matrix rule
  identity,              // constant 1 baseline
  raw,                   // no shrinkage baseline
};

struct ShrinkerSpec {
  ShrinkerKind kind = ShrinkerKind::single_spike_optimal;
  // Top limiting empirical eigenvalue; only meaningful for
  // multi_spike_optimal.  When absent, apply() tunes with the observed top
  // eigenvalue.
  std::optional<double> lambda1;

  // Canonical text encoding: single, multi[:lambda1], minimax, mmst, pnl,
  // identity, raw.  parse() throws std::domain_error on anything else.
  static ShrinkerSpec parse(std::string_view text);
  std::string str() const;
};

struct DeadZone {
  double ell_threshold;
  double lambda_threshold;  // eigen_map(ell_threshold)
};

// Dead zone of the single-spike optimal rule:
//   ell = 1 + (gamma + sqrt(gamma^2 + 8 gamma)) / 2,
// strictly beyond the detection threshold 1 + sqrt(gamma).
DeadZone dead_zone_single(double gamma);

// Optimal single-spike shrinker: ell / (1 + gamma + 2 gamma/(ell-1)) above
// the dead zone, 1 inside it.  Continuous, >= 1.
double eta_single(double lambda, double gamma);

// nu_minus of the block at ell1 shrunk by eta_single; the quantity that
// parametrizes the multi-spike rule.
double nu_minus_star(double ell1, double gamma);

// Its ell1 -> infinity limit 1 - sqrt(gamma/(gamma+1)).
double nu_minus_minimax(double gamma);

// Optimal multi-spike shrinker tuned by the top limiting eigenvalue lambda1:
//   (nu - b) / (a - 1/(ell nu))  with nu = nu_minus_star(ell(lambda1))
// above ell = 1/nu, 1 below.  Requires lambda <= lambda1.
double eta_multi(double lambda, double lambda1, double gamma);

// Minimax shrinker: the multi-spike formula with nu = nu_minus_minimax.
double eta_minimax(double lambda, double gamma);

// Generalized soft threshold 1 + (lambda - bulk_edge)_+ / (1 + gamma).
double eta_mmst(double lambda, double gamma);

// Precision-optimal rule ell / (ell s^2 + c^2) above the bulk edge, else 1.
double eta_pnl(double lambda, double gamma);

// Element-wise application to a descending spectrum.  multi_spike_optimal
// auto-tunes lambda1 with eigenvalues[0] unless the spec carries one.
// Throws std::domain_error on unsorted or negative input.
std::vector<double> apply(const ShrinkerSpec& spec,
                          std::span<const double> eigenvalues, double gamma);

}  // namespace condshrink
