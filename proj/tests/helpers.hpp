#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "condshrink/spiked.hpp"

namespace condshrink::testing {

// Literal 2x2 pivot block, eigensolved directly.  Kept independent of
// pivot.cpp's trace/determinant route on purpose: the two must agree.
inline Eigen::Matrix2d explicit_block_matrix(double ell, double eta,
                                             double gamma) {
  const double c2 = cosine2(ell, gamma);
  const double s2 = 1.0 - c2;
  const double c = std::sqrt(c2);
  const double s = std::sqrt(s2);
  Eigen::Matrix2d a;
  a << (eta * c2 + s2) / ell, (eta - 1.0) * c * s / std::sqrt(ell),
      (eta - 1.0) * c * s / std::sqrt(ell), c2 + eta * s2;
  return a;
}

inline std::pair<double, double> explicit_block_eigs(double ell, double eta,
                                                     double gamma) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(
      explicit_block_matrix(ell, eta, gamma));
  return {es.eigenvalues()[0], es.eigenvalues()[1]};
}

inline std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  g.reserve(n);
  for (int i = 0; i < n; ++i) {
    g.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
  }
  return g;
}

inline std::vector<double> lin_grid(double lo, double hi, int n) {
  std::vector<double> g;
  g.reserve(n);
  for (int i = 0; i < n; ++i) {
    g.push_back(lo + (hi - lo) * double(i) / (n - 1));
  }
  return g;
}

}  // namespace condshrink::testing
