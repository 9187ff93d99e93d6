#include "condshrink/shrinkers.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "condshrink/pivot.hpp"
#include "condshrink/spiked.hpp"

namespace condshrink {

namespace {

void require_lambda(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::domain_error("eigenvalue must be >= 0 and finite, got " +
                            std::to_string(lambda));
  }
}

// Shared body of the multi-spike and minimax rules: collapse up to
// ell = 1/nu, then the eta solving nu_minus(A(ell, eta)) = nu.
double eta_from_floor(double lambda, double nu, double gamma) {
  require_lambda(lambda);
  if (lambda <= bulk_edge_upper(gamma)) return 1.0;
  const double ell = eigen_inverse(lambda, gamma);
  if (ell * nu <= 1.0) return 1.0;
  const auto [a, b] = ab_coeffs(ell, gamma);
  const double denom = a - 1.0 / (ell * nu);
  // The floor always stays below 1/(a ell) above the threshold, so a zero
  // denominator signals a bug rather than bad user input.
  if (!(std::abs(denom) > 1e-14)) {
    throw std::logic_error("shrinker denominator vanished");
  }
  return (nu - b) / denom;
}

}  // namespace

ShrinkerSpec ShrinkerSpec::parse(std::string_view text) {
  ShrinkerSpec spec;
  if (text == "single") {
    spec.kind = ShrinkerKind::single_spike_optimal;
  } else if (text == "multi" || text.rfind("multi:", 0) == 0) {
    spec.kind = ShrinkerKind::multi_spike_optimal;
    if (text.size() > 6) {
      const std::string_view arg = text.substr(6);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(arg.begin(), arg.end(), v);
      if (ec != std::errc{} || ptr != arg.end() || !(v > 0.0)) {
        throw std::domain_error("bad multi tuning value: " + std::string(arg));
      }
      spec.lambda1 = v;
    }
  } else if (text == "minimax") {
    spec.kind = ShrinkerKind::minimax;
  } else if (text == "mmst") {
    spec.kind = ShrinkerKind::mmst;
  } else if (text == "pnl") {
    spec.kind = ShrinkerKind::precision;
  } else if (text == "identity") {
    spec.kind = ShrinkerKind::identity;
  } else if (text == "raw") {
    spec.kind = ShrinkerKind::raw;
  } else {
    throw std::domain_error("unknown shrinker: " + std::string(text));
  }
  return spec;
}

std::string ShrinkerSpec::str() const {
  switch (kind) {
    case ShrinkerKind::single_spike_optimal:
      return "single";
    case ShrinkerKind::multi_spike_optimal:
      if (lambda1) {
        std::string s = "multi:" + std::to_string(*lambda1);
        return s;
      }
      return "multi";
    case ShrinkerKind::minimax:
      return "minimax";
    case ShrinkerKind::mmst:
      return "mmst";
    case ShrinkerKind::precision:
      return "pnl";
    case ShrinkerKind::identity:
      return "identity";
    case ShrinkerKind::raw:
      return "raw";
  }
  throw std::logic_error("unreachable");
}

DeadZone dead_zone_single(double gamma) {
  detail::require_gamma(gamma);
  const double ell = 1.0 + (gamma + std::sqrt(gamma * gamma + 8.0 * gamma)) / 2.0;
  return {ell, eigen_map(ell, gamma)};
}

double eta_single(double lambda, double gamma) {
  require_lambda(lambda);
  const DeadZone dz = dead_zone_single(gamma);
  if (lambda <= dz.lambda_threshold) return 1.0;
  const double ell = eigen_inverse(lambda, gamma);
  return ell / (1.0 + gamma + 2.0 * gamma / (ell - 1.0));
}

double nu_minus_star(double ell1, double gamma) {
  detail::require_ell(ell1);
  const double eta = eta_single(eigen_map(ell1, gamma), gamma);
  return block(ell1, eta, gamma).nu_minus;
}

double nu_minus_minimax(double gamma) {
  detail::require_gamma(gamma);
  return 1.0 - std::sqrt(gamma / (gamma + 1.0));
}

double eta_multi(double lambda, double lambda1, double gamma) {
  require_lambda(lambda);
  require_lambda(lambda1);
  if (lambda > lambda1) {
    throw std::domain_error("eta_multi: lambda exceeds the lambda1 tuning");
  }
  if (lambda1 <= bulk_edge_upper(gamma)) return 1.0;  // everything collapses
  const double ell1 = eigen_inverse(lambda1, gamma);
  return eta_from_floor(lambda, nu_minus_star(ell1, gamma), gamma);
}

double eta_minimax(double lambda, double gamma) {
  return eta_from_floor(lambda, nu_minus_minimax(gamma), gamma);
}

double eta_mmst(double lambda, double gamma) {
  require_lambda(lambda);
  const double edge = bulk_edge_upper(gamma);
  if (lambda <= edge) return 1.0;
  return 1.0 + (lambda - edge) / (1.0 + gamma);
}

double eta_pnl(double lambda, double gamma) {
  require_lambda(lambda);
  if (lambda <= bulk_edge_upper(gamma)) return 1.0;
  const double ell = eigen_inverse(lambda, gamma);
  const double c2 = cosine2(ell, gamma);
  return ell / (ell * (1.0 - c2) + c2);
}

std::vector<double> apply(const ShrinkerSpec& spec,
                          std::span<const double> eigenvalues, double gamma) {
  detail::require_gamma(gamma);
  double prev = std::numeric_limits<double>::infinity();
  for (double v : eigenvalues) {
    require_lambda(v);
    if (v > prev) {
      throw std::domain_error("apply: eigenvalues must be sorted descending");
    }
    prev = v;
  }
  std::vector<double> out;
  out.reserve(eigenvalues.size());
  if (eigenvalues.empty()) return out;

  switch (spec.kind) {
    case ShrinkerKind::identity:
      out.assign(eigenvalues.size(), 1.0);
      break;
    case ShrinkerKind::raw:
      out.assign(eigenvalues.begin(), eigenvalues.end());
      break;
    case ShrinkerKind::single_spike_optimal:
      for (double v : eigenvalues) out.push_back(eta_single(v, gamma));
      break;
    case ShrinkerKind::multi_spike_optimal: {
      const double lambda1 = spec.lambda1.value_or(eigenvalues[0]);
      if (eigenvalues[0] > lambda1) {
        throw std::domain_error(
            "apply: top eigenvalue exceeds the multi-spike tuning lambda1");
      }
      for (double v : eigenvalues) out.push_back(eta_multi(v, lambda1, gamma));
      break;
    }
    case ShrinkerKind::minimax:
      for (double v : eigenvalues) out.push_back(eta_minimax(v, gamma));
      break;
    case ShrinkerKind::mmst:
      for (double v : eigenvalues) out.push_back(eta_mmst(v, gamma));
      break;
    case ShrinkerKind::precision:
      for (double v : eigenvalues) out.push_back(eta_pnl(v, gamma));
      break;
  }
  return out;
}

}  // namespace condshrink
