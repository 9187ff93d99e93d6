#pragma once

#include <vector>

namespace condshrink {

// Deterministic maps of the spiked covariance model under proportional
// growth p/n -> gamma.  All functions are pure; gamma is always passed
// explicitly and must be positive and finite.

struct BulkEdges {
  double lower;  // (1 - sqrt(gamma))^2
  double upper;  // (1 + sqrt(gamma))^2
};

// Support edges of the Marchenko-Pastur bulk of noise eigenvalues.
BulkEdges bulk_edges(double gamma);

// Upper bulk edge (1 + sqrt(gamma))^2.
double bulk_edge_upper(double gamma);

// Spike-scale detection threshold 1 + sqrt(gamma).  Population spikes at or
// below it do not emerge from the bulk.
double spike_detection_threshold(double gamma);

// Limiting empirical eigenvalue of a population spike:
//   ell * (1 + gamma / (ell - 1))   for ell above the detection threshold,
//   bulk_edge_upper(gamma)          otherwise.
// Continuous and nondecreasing on ell >= 1.
double eigen_map(double ell, double gamma);

// Inverse of eigen_map on the emerged branch:
//   (lambda + 1 - gamma + sqrt((lambda + 1 - gamma)^2 - 4 lambda)) / 2.
// Defined only for lambda strictly above the bulk edge; throws
// std::domain_error at or below it.
double eigen_inverse(double lambda, double gamma);

// Squared cosine of the angle between the population and empirical spike
// eigenvectors:
//   (1 - gamma/(ell-1)^2) / (1 + gamma/(ell-1))  above the threshold, else 0.
double cosine2(double ell, double gamma);

// Complement 1 - cosine2 (exact).
double sine2(double ell, double gamma);

struct EigenPair {
  double ell;     // population spike
  double lambda;  // limiting empirical eigenvalue
  double c2;      // squared cosine
  double s2;      // squared sine, c2 + s2 == 1
};

EigenPair eigen_pair(double ell, double gamma);

// A spiked population: aspect ratio plus strictly decreasing spikes, all > 1.
struct SpikeConfig {
  SpikeConfig(double gamma, std::vector<double> spikes);

  double gamma;
  std::vector<double> spikes;

  int rank() const { return static_cast<int>(spikes.size()); }
};

namespace detail {
// Shared validation helpers; throw std::domain_error on violation.
void require_gamma(double gamma);
void require_ell(double ell);
}  // namespace detail

}  // namespace condshrink
