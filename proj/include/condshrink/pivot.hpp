#pragma once

#include <span>

#include "condshrink/spiked.hpp"

namespace condshrink {

// Algebra of the 2x2 blocks A(ell, eta) that make up the block-diagonal
// limit of the pivot Sigma^{-1/2} SigmaHat Sigma^{-1/2}.

struct PivotBlock {
  double ell;
  double eta;
  double trace;     // (1 + (eta-1) c^2)/ell + 1 + (eta-1) s^2
  double det;       // eta / ell
  double nu_minus;  // smaller eigenvalue
  double nu_plus;   // larger eigenvalue
};

// Block summary for a spike ell shrunk to eta.  Requires ell >= 1, eta >= 0.
// nu_plus is computed from the stable branch of the quadratic formula and
// nu_minus as det / nu_plus, so tiny nu_minus values keep full relative
// accuracy.
PivotBlock block(double ell, double eta, double gamma);

struct ABCoeffs {
  double a;  // c^2/ell + s^2
  double b;  // s^2/ell + c^2
};

// Coefficients of the block trace as a linear function of eta:
// trace = a*eta + b.  They satisfy a + b = 1 + 1/ell.
ABCoeffs ab_coeffs(double ell, double gamma);

// Condition number of the block-diagonal asymptotic pivot for the given
// config shrunk to etas (one per spike):
//   max(1, max_i nu_plus) / min(1, min_i nu_minus),
// the 1s standing in for the untouched bulk block.  etas.size() must equal
// config.rank() and every eta must be >= 0; an eta of exactly 0 yields
// +infinity (singular estimator), a negative eta is a domain error.
double asymptotic_kappa(const SpikeConfig& config, std::span<const double> etas);

}  // namespace condshrink
