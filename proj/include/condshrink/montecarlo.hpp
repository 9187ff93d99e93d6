#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "condshrink/shrinkers.hpp"
#include "condshrink/spiked.hpp"

namespace condshrink {

// Finite-sample machinery: sampling from the spiked model, the empirical
// pivot condition number, replicated loss simulations and the least
// favorable forecast construction.

// SPD matrix of the form I + B (diag(s) - I) B' with orthonormal columns B.
// Both the population covariance and low-rank estimates take this shape, and
// every power Sigma^t is again of the same form with s -> s^t.
struct LowRankSpd {
  Eigen::MatrixXd basis;   // p x m, orthonormal columns
  Eigen::VectorXd values;  // m spectral values, > 0 for invertibility

  // (I + B (diag(s^power) - I) B') * M, cost O(p m cols).
  Eigen::MatrixXd apply(const Eigen::MatrixXd& m, double power = 1.0) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& v, double power = 1.0) const;
};

struct SpikedPopulation {
  SpikedPopulation(SpikeConfig config_in, Eigen::MatrixXd u);

  // U = Q factor of a seeded Gaussian p x r matrix.
  static SpikedPopulation random(int p, SpikeConfig config, std::uint64_t seed);
  // U = first r canonical basis vectors (reproducible debugging).
  static SpikedPopulation canonical(int p, SpikeConfig config);

  int p() const { return static_cast<int>(u_basis.rows()); }
  LowRankSpd covariance() const;  // Sigma in low-rank form

  SpikeConfig config;
  Eigen::MatrixXd u_basis;  // p x r, orthonormal
};

struct Spectrum {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // p x values.size() (leading columns)
  int n = 0;
  int p = 0;
};

struct SampleOptions {
  // Number of leading eigenpairs to return; -1 means the full min(n, p)
  // spectrum via a dense solve.  A positive k uses subspace iteration on
  // S = X'X/n, which is exact for the separated spikes and adequate for
  // bulk-edge classification.
  int top_k = -1;
  int max_iterations = 300;
  double ritz_tol = 1e-12;
};

// Data matrix with iid N(0, Sigma) rows: X = Z Sigma^{1/2}, n x p.
// Deterministic given seed; the stream is independent of the population
// basis stream even for equal seeds.
Eigen::MatrixXd sample_data(const SpikedPopulation& pop, int n,
                            std::uint64_t seed);

// Leading spectral decomposition of S = X'X/n for X = sample_data(...).
Spectrum sample_empirical(const SpikedPopulation& pop, int n,
                          std::uint64_t seed, const SampleOptions& opts = {});

// Condition number of the empirical pivot Sigma^{-1/2} SigmaHat Sigma^{-1/2}
// for SigmaHat = V diag(etas) V' padded with ones on the orthocomplement.
// etas align with the columns of eigenvectors; any eta == 0 gives +infinity.
// Computed on the invariant subspace spanned by the population spikes and
// the eigenvectors carrying eta != 1, so cost stays O(p (r + k)^2).
double empirical_pivot_kappa(const SpikedPopulation& pop,
                             const Eigen::VectorXd& eigenvalues,
                             const Eigen::MatrixXd& eigenvectors,
                             std::span<const double> etas);

struct SimResult {
  std::uint64_t seed = 0;
  int n = 0;
  int p = 0;
  int reps = 0;
  double gamma = 0;            // p / n used for tuning
  std::vector<double> spikes;
  std::string shrinker;
  std::vector<double> kappa;   // per replicate, replicate order
  std::vector<double> rsrg;
  double mean_kappa = 0;
  double stderr_kappa = 0;
  double mean_rsrg = 0;
  double stderr_rsrg = 0;
  double target = 0;           // asymptotic loss the means should approach
};

struct SimulateOptions {
  bool full_spectrum = false;  // force the dense decomposition path
  int threads = 1;
};

// Replicated empirical losses under a shrinker with empirical tuning
// (lambda1 := top observed eigenvalue, gamma := p/n).  Replicate i draws
// from substream seed + i + 1; the population basis uses the seed itself.
SimResult simulate_loss(const SpikedPopulation& pop, int n,
                        const ShrinkerSpec& spec, int reps, std::uint64_t seed,
                        const SimulateOptions& opts = {});

// Sharpe ratio h'mu / sqrt(h' Sigma h) of holdings h under forecast mu.
double sharpe_ratio(const Eigen::VectorXd& h, const Eigen::VectorXd& mu,
                    const LowRankSpd& sigma);

// Best Sharpe ratio sqrt(mu' Sigma^{-1} mu), attained by h = Sigma^{-1} mu.
double sharpe_ratio_best(const Eigen::VectorXd& mu, const LowRankSpd& sigma);

struct ForecastVector {
  Eigen::VectorXd mu;        // unit norm
  double alpha1 = 0;         // component along the top population eigenvector
  double alpha2 = 0;         // component along W2 (orthogonalized top
                             // empirical eigenvector)
  double achieved_ratio = 0; // SR(Sigma; mu) / SR(SigmaHat; mu)
  double bound = 0;          // rsrg_from_kappa of the pivot condition number
  double pivot_kappa = 0;
};

// Least favorable forecast for the estimate SigmaHat = I + V (diag(eta)-I) V':
// mu proportional to SigmaHat^{1/2} (v_plus + v_minus)/sqrt(2), where v_pm
// are the extreme eigenvectors of SigmaHat^{-1/2} Sigma SigmaHat^{-1/2}.
// The achieved ratio attains the Kantorovich bound.
ForecastVector least_favorable_forecast(const SpikedPopulation& pop,
                                        const Eigen::MatrixXd& est_vectors,
                                        const Eigen::VectorXd& est_values);

}  // namespace condshrink
