#include "condshrink/pivot.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace condshrink {

PivotBlock block(double ell, double eta, double gamma) {
  detail::require_gamma(gamma);
  detail::require_ell(ell);
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    throw std::domain_error("block: eta must be >= 0 and finite, got " +
                            std::to_string(eta));
  }
  const double c2 = cosine2(ell, gamma);
  const double s2 = 1.0 - c2;
  const double ed = eta - 1.0;
  const double trace = (1.0 + ed * c2) / ell + 1.0 + ed * s2;
  const double det = eta / ell;

  double disc = trace * trace / 4.0 - det;
  if (disc < 0.0) {
    if (disc > -1e-12 * trace * trace) {
      disc = 0.0;  // symmetric 2x2, eigenvalues are real; this is roundoff
    } else {
      throw std::logic_error("block: discriminant significantly negative");
    }
  }
  const double nu_plus = trace / 2.0 + std::sqrt(disc);
  // det/nu_plus avoids the cancellation in trace/2 - sqrt(disc) when the
  // small eigenvalue is orders of magnitude below the large one.
  const double nu_minus = nu_plus > 0.0 ? det / nu_plus : 0.0;
  return {ell, eta, trace, det, nu_minus, nu_plus};
}

ABCoeffs ab_coeffs(double ell, double gamma) {
  const double c2 = cosine2(ell, gamma);
  const double s2 = 1.0 - c2;
  return {c2 / ell + s2, s2 / ell + c2};
}

double asymptotic_kappa(const SpikeConfig& config,
                        std::span<const double> etas) {
  if (static_cast<int>(etas.size()) != config.rank()) {
    throw std::domain_error("asymptotic_kappa: need one eta per spike");
  }
  double hi = 1.0;  // bulk block contributes the 1s
  double lo = 1.0;
  for (std::size_t i = 0; i < etas.size(); ++i) {
    const double eta = etas[i];
    if (!(eta >= 0.0) || !std::isfinite(eta)) {
      throw std::domain_error("asymptotic_kappa: etas must be >= 0");
    }
    if (eta == 0.0) return std::numeric_limits<double>::infinity();
    const PivotBlock b = block(config.spikes[i], eta, config.gamma);
    hi = std::max(hi, b.nu_plus);
    lo = std::min(lo, b.nu_minus);
  }
  return hi / lo;
}

}  // namespace condshrink
