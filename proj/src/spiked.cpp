#include "condshrink/spiked.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace condshrink {

namespace detail {

void require_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::domain_error("gamma must be positive and finite, got " +
                            std::to_string(gamma));
  }
}

void require_ell(double ell) {
  if (!(ell >= 1.0) || !std::isfinite(ell)) {
    throw std::domain_error("spike value must satisfy ell >= 1, got " +
                            std::to_string(ell));
  }
}

}  // namespace detail

BulkEdges bulk_edges(double gamma) {
  detail::require_gamma(gamma);
  const double s = std::sqrt(gamma);
  return {(1.0 - s) * (1.0 - s), (1.0 + s) * (1.0 + s)};
}

double bulk_edge_upper(double gamma) { return bulk_edges(gamma).upper; }

double spike_detection_threshold(double gamma) {
  detail::require_gamma(gamma);
  return 1.0 + std::sqrt(gamma);
}

double eigen_map(double ell, double gamma) {
  detail::require_gamma(gamma);
  detail::require_ell(ell);
  if (ell <= spike_detection_threshold(gamma)) {
    // Below the detection threshold both branches meet at the bulk edge.
    return bulk_edge_upper(gamma);
  }
  return ell * (1.0 + gamma / (ell - 1.0));
}

double eigen_inverse(double lambda, double gamma) {
  detail::require_gamma(gamma);
  if (!std::isfinite(lambda)) {
    throw std::domain_error("lambda must be finite");
  }
  const double edge = bulk_edge_upper(gamma);
  if (lambda <= edge) {
    throw std::domain_error(
        "eigen_inverse undefined at or below the bulk edge: lambda = " +
        std::to_string(lambda) + ", edge = " + std::to_string(edge));
  }
  const double m = lambda + 1.0 - gamma;
  double disc = m * m - 4.0 * lambda;
  if (disc < 0.0) {
    // Roundoff just above the edge can push the discriminant slightly
    // negative; anything beyond noise level is a genuine domain violation.
    if (disc > -1e-12 * std::max(1.0, m * m)) {
      disc = 0.0;
    } else {
      throw std::domain_error("eigen_inverse: negative discriminant");
    }
  }
  return (m + std::sqrt(disc)) / 2.0;
}

double cosine2(double ell, double gamma) {
  detail::require_gamma(gamma);
  detail::require_ell(ell);
  if (ell <= spike_detection_threshold(gamma)) return 0.0;
  const double d = ell - 1.0;
  return (1.0 - gamma / (d * d)) / (1.0 + gamma / d);
}

double sine2(double ell, double gamma) { return 1.0 - cosine2(ell, gamma); }

EigenPair eigen_pair(double ell, double gamma) {
  const double c2 = cosine2(ell, gamma);
  return {ell, eigen_map(ell, gamma), c2, 1.0 - c2};
}

SpikeConfig::SpikeConfig(double gamma_in, std::vector<double> spikes_in)
    : gamma(gamma_in), spikes(std::move(spikes_in)) {
  detail::require_gamma(gamma);
  if (spikes.empty()) {
    throw std::domain_error("SpikeConfig requires at least one spike");
  }
  double prev = std::numeric_limits<double>::infinity();
  for (double ell : spikes) {
    if (!(ell > 1.0) || !std::isfinite(ell)) {
      throw std::domain_error("spikes must be finite and > 1");
    }
    if (!(ell < prev)) {
      throw std::domain_error("spikes must be strictly decreasing");
    }
    prev = ell;
  }
}

}  // namespace condshrink
