#include "condshrink/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "condshrink/loss.hpp"
#include "condshrink/pivot.hpp"
#include "condshrink/rng.hpp"

namespace condshrink {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXd gaussian_matrix(Rng& rng, Eigen::Index rows,
                                Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = rng.normal();
    }
  }
  return m;
}

Eigen::MatrixXd thin_q(const Eigen::MatrixXd& m) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  const Eigen::Index cols = std::min(m.rows(), m.cols());
  return qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), cols);
}

// Orthonormal basis whose span contains the columns of both inputs.
Eigen::MatrixXd joint_basis(const Eigen::MatrixXd& a,
                            const Eigen::MatrixXd& b) {
  Eigen::MatrixXd stacked(a.rows(), a.cols() + b.cols());
  stacked << a, b;
  return thin_q(stacked);
}

// Sorted-descending eigenpairs of a small symmetric matrix.
void sym_eig_desc(const Eigen::MatrixXd& m, Eigen::VectorXd* values,
                  Eigen::MatrixXd* vectors) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigensolve failed");
  }
  *values = es.eigenvalues().reverse();
  if (vectors) *vectors = es.eigenvectors().rowwise().reverse();
}

int emergent_count(const SpikeConfig& config, double gamma) {
  int k = 0;
  const double thr = spike_detection_threshold(gamma);
  for (double ell : config.spikes) {
    if (ell > thr) ++k;
  }
  return k;
}

}  // namespace

Eigen::MatrixXd LowRankSpd::apply(const Eigen::MatrixXd& m,
                                  double power) const {
  if (basis.cols() == 0) return m;
  Eigen::VectorXd w(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) && power < 0.0) {
      throw std::domain_error("LowRankSpd: singular matrix has no inverse");
    }
    w[i] = std::pow(values[i], power) - 1.0;
  }
  return m + basis * (w.asDiagonal() * (basis.transpose() * m));
}

Eigen::VectorXd LowRankSpd::apply(const Eigen::VectorXd& v,
                                  double power) const {
  return apply(Eigen::MatrixXd(v), power).col(0);
}

SpikedPopulation::SpikedPopulation(SpikeConfig config_in, Eigen::MatrixXd u)
    : config(std::move(config_in)), u_basis(std::move(u)) {
  if (u_basis.cols() != config.rank()) {
    throw std::domain_error("population basis needs one column per spike");
  }
  if (u_basis.rows() < 2 || u_basis.rows() < u_basis.cols()) {
    throw std::domain_error("population dimension too small");
  }
  const Eigen::MatrixXd gram = u_basis.transpose() * u_basis;
  const double err =
      (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (err > 1e-10) {
    throw std::domain_error("population basis is not orthonormal");
  }
}

namespace {
// Stream tags separating the independent uses of one user seed.
constexpr std::uint64_t kPopulationStream = 0x706f70;  // population basis
constexpr std::uint64_t kSampleStream = 0x646174;      // data matrices
}  // namespace

SpikedPopulation SpikedPopulation::random(int p, SpikeConfig config,
                                          std::uint64_t seed) {
  Rng rng(derive_seed(seed, kPopulationStream));
  const int r = config.rank();
  return SpikedPopulation(std::move(config),
                          thin_q(gaussian_matrix(rng, p, r)));
}

SpikedPopulation SpikedPopulation::canonical(int p, SpikeConfig config) {
  const int r = config.rank();
  Eigen::MatrixXd u = Eigen::MatrixXd::Identity(p, r);
  return SpikedPopulation(std::move(config), std::move(u));
}

LowRankSpd SpikedPopulation::covariance() const {
  LowRankSpd cov;
  cov.basis = u_basis;
  cov.values =
      Eigen::Map<const Eigen::VectorXd>(config.spikes.data(), config.rank());
  return cov;
}

Eigen::MatrixXd sample_data(const SpikedPopulation& pop, int n,
                            std::uint64_t seed) {
  if (n < 2 || pop.p() < 2) {
    throw std::domain_error("sample_data: need n >= 2 and p >= 2");
  }
  Rng rng(derive_seed(seed, kSampleStream));
  // X = Z Sigma^{1/2}, applied in the rank-r form.
  Eigen::MatrixXd x = gaussian_matrix(rng, n, pop.p());
  Eigen::VectorXd w(pop.config.rank());
  for (int i = 0; i < pop.config.rank(); ++i) {
    w[i] = std::sqrt(pop.config.spikes[i]) - 1.0;
  }
  x += (x * pop.u_basis) * w.asDiagonal() * pop.u_basis.transpose();
  return x;
}

Spectrum sample_empirical(const SpikedPopulation& pop, int n,
                          std::uint64_t seed, const SampleOptions& opts) {
  const int p = pop.p();
  const Eigen::MatrixXd x = sample_data(pop, n, seed);
  Rng rng(derive_seed(seed, kSampleStream + 1));  // subspace starting block

  Spectrum out;
  out.n = n;
  out.p = p;
  const int m = std::min(n, p);

  if (opts.top_k < 0 || opts.top_k >= m) {
    // Dense path on the smaller Gram side.
    if (p <= n) {
      const Eigen::MatrixXd s = (x.transpose() * x) / double(n);
      sym_eig_desc(s, &out.values, &out.vectors);
    } else {
      const Eigen::MatrixXd g = (x * x.transpose()) / double(n);
      Eigen::VectorXd vals;
      Eigen::MatrixXd w;
      sym_eig_desc(g, &vals, &w);
      out.values = vals.cwiseMax(0.0);
      out.vectors.resize(p, n);
      for (int i = 0; i < n; ++i) {
        const double v = out.values[i];
        if (v > 1e-14 * out.values[0]) {
          out.vectors.col(i) = x.transpose() * w.col(i) / std::sqrt(n * v);
        } else {
          // Numerically null direction; keep a normalized lift anyway.
          Eigen::VectorXd lift = x.transpose() * w.col(i);
          const double nrm = lift.norm();
          out.vectors.col(i) =
              nrm > 0 ? Eigen::VectorXd(lift / nrm)
                      : Eigen::VectorXd(Eigen::VectorXd::Unit(p, i % p));
        }
      }
    }
    return out;
  }

  // Subspace iteration for the leading block.  Spike Ritz values separate
  // quickly; the convergence test therefore watches only the emergent spike
  // positions, which is all downstream consumers rely on.  Up to a memory
  // cap the small-side Gram matrix is formed once, making each iteration
  // O(m^2 k) instead of O(n p k).
  const int k = std::min(opts.top_k, m);
  const int watch = std::max(1, std::min(k, emergent_count(pop.config,
                                                           double(p) / n)));
  constexpr int kGramCap = 4096;
  const bool lifted = p > n;       // iterate on XX'/n and lift at the end
  const bool cache = m <= kGramCap;
  Eigen::MatrixXd op;
  if (cache) {
    op = lifted ? Eigen::MatrixXd(x * x.transpose() / double(n))
                : Eigen::MatrixXd(x.transpose() * x / double(n));
  }
  const int dim = (cache && lifted) ? n : p;
  const auto multiply = [&](const Eigen::MatrixXd& b) -> Eigen::MatrixXd {
    if (cache) return op.selfadjointView<Eigen::Lower>() * b;
    return x.transpose() * (x * b) / double(n);
  };

  Eigen::MatrixXd basis = thin_q(gaussian_matrix(rng, dim, k));
  Eigen::VectorXd prev = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd ritz;
  Eigen::MatrixXd rot;
  for (int it = 0; it < opts.max_iterations; ++it) {
    const Eigen::MatrixXd w = multiply(basis);
    sym_eig_desc(basis.transpose() * w, &ritz, &rot);
    bool settled = it >= 15;
    for (int i = 0; i < watch && settled; ++i) {
      settled = std::abs(ritz[i] - prev[i]) <=
                opts.ritz_tol * std::max(1.0, std::abs(ritz[i]));
    }
    if (settled) break;
    prev = ritz;
    basis = thin_q(w);
  }
  sym_eig_desc(basis.transpose() * multiply(basis), &ritz, &rot);
  out.values = ritz.cwiseMax(0.0);
  if (cache && lifted) {
    // Ritz vectors live in the Gram space; lift w -> X'w / sqrt(n lambda).
    const Eigen::MatrixXd w = basis * rot;
    out.vectors.resize(p, k);
    for (int i = 0; i < k; ++i) {
      Eigen::VectorXd v = x.transpose() * w.col(i);
      const double nrm = v.norm();
      out.vectors.col(i) =
          nrm > 0 ? Eigen::VectorXd(v / nrm)
                  : Eigen::VectorXd(Eigen::VectorXd::Unit(p, i % p));
    }
  } else {
    out.vectors = basis * rot;
  }
  return out;
}

double empirical_pivot_kappa(const SpikedPopulation& pop,
                             const Eigen::VectorXd& eigenvalues,
                             const Eigen::MatrixXd& eigenvectors,
                             std::span<const double> etas) {
  if (eigenvectors.cols() != static_cast<Eigen::Index>(etas.size()) ||
      eigenvalues.size() != eigenvectors.cols()) {
    throw std::domain_error(
        "empirical_pivot_kappa: eigenvalues, eigenvectors and etas must align");
  }
  if (eigenvectors.rows() != pop.p()) {
    throw std::domain_error("empirical_pivot_kappa: dimension mismatch");
  }
  std::vector<int> shifted;  // estimator eigenvalues differing from 1
  for (std::size_t j = 0; j < etas.size(); ++j) {
    if (!(etas[j] >= 0.0)) {
      throw std::domain_error("empirical_pivot_kappa: etas must be >= 0");
    }
    if (etas[j] == 0.0) return kInf;
    if (etas[j] != 1.0) shifted.push_back(static_cast<int>(j));
  }

  // SigmaHat - I has rank |shifted| and Sigma^{-1/2} - I has rank r, so the
  // pivot acts as the identity off span{U, V_shifted}; its condition number
  // comes from that subspace plus the implicit bulk eigenvalue 1.
  Eigen::MatrixXd vj(pop.p(), shifted.size());
  Eigen::VectorXd scale(shifted.size());
  for (std::size_t c = 0; c < shifted.size(); ++c) {
    vj.col(c) = eigenvectors.col(shifted[c]);
    scale[c] = etas[shifted[c]] - 1.0;
  }
  const Eigen::MatrixXd basis = joint_basis(pop.u_basis, vj);
  const Eigen::MatrixXd c = pop.covariance().apply(basis, -0.5);
  const Eigen::MatrixXd vjc = vj.transpose() * c;
  const Eigen::MatrixXd m =
      c.transpose() * c + vjc.transpose() * scale.asDiagonal() * vjc;

  Eigen::VectorXd nus;
  sym_eig_desc((m + m.transpose()) / 2.0, &nus, nullptr);
  double hi = nus[0];
  double lo = nus[nus.size() - 1];
  if (basis.cols() < pop.p()) {
    hi = std::max(hi, 1.0);
    lo = std::min(lo, 1.0);
  }
  if (!(lo > 0.0)) return kInf;
  return hi / lo;
}

SimResult simulate_loss(const SpikedPopulation& pop, int n,
                        const ShrinkerSpec& spec, int reps, std::uint64_t seed,
                        const SimulateOptions& opts) {
  if (reps < 1) throw std::domain_error("simulate_loss: reps must be >= 1");
  const int p = pop.p();
  const double gamma_hat = double(p) / double(n);

  SimResult result;
  result.seed = seed;
  result.n = n;
  result.p = p;
  result.reps = reps;
  result.gamma = gamma_hat;
  result.spikes = pop.config.spikes;
  result.shrinker = spec.str();
  result.kappa.resize(reps);
  result.rsrg.resize(reps);

  const bool dense = opts.full_spectrum || spec.kind == ShrinkerKind::raw;
  const int m = std::min(n, p);

  const auto run_rep = [&](int rep) {
    SampleOptions sopts;
    if (!dense) {
      sopts.top_k = std::min(m, emergent_count(pop.config, gamma_hat) + 8);
    }
    Spectrum spectrum;
    for (;;) {
      spectrum = sample_empirical(pop, n, seed + rep + 1, sopts);
      if (dense || sopts.top_k >= m) break;
      // All computed values above the bulk edge means more candidates could
      // remain below the cut; widen the block.  In practice one pass is
      // enough far below the dead zones.
      if (spectrum.values[spectrum.values.size() - 1] <
          bulk_edge_upper(gamma_hat)) {
        break;
      }
      sopts.top_k = std::min(m, sopts.top_k * 2);
    }
    const std::vector<double> lambdas(
        spectrum.values.data(), spectrum.values.data() + spectrum.values.size());
    const std::vector<double> etas = apply(spec, lambdas, gamma_hat);
    const double kappa =
        empirical_pivot_kappa(pop, spectrum.values, spectrum.vectors, etas);
    result.kappa[rep] = kappa;
    result.rsrg[rep] = std::isfinite(kappa) ? rsrg_from_kappa(kappa) : kInf;
  };

  int nthreads = opts.threads > 0
                     ? opts.threads
                     : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::max(1, std::min(nthreads, reps));
  if (nthreads == 1) {
    for (int rep = 0; rep < reps; ++rep) run_rep(rep);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) {
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i < reps; i = next.fetch_add(1)) {
          run_rep(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  const auto aggregate = [reps](const std::vector<double>& xs, double* mean,
                                double* se) {
    double s = 0;
    for (double x : xs) s += x;
    *mean = s / reps;
    double v = 0;
    for (double x : xs) v += (x - *mean) * (x - *mean);
    *se = reps > 1 ? std::sqrt(v / (reps - 1)) / std::sqrt(double(reps)) : 0.0;
  };
  aggregate(result.kappa, &result.mean_kappa, &result.stderr_kappa);
  aggregate(result.rsrg, &result.mean_rsrg, &result.stderr_rsrg);

  // Asymptotic target the replicate means should approach.
  const SpikeConfig limit_config(gamma_hat, pop.config.spikes);
  if (spec.kind == ShrinkerKind::single_spike_optimal ||
      spec.kind == ShrinkerKind::multi_spike_optimal) {
    result.target = kappa_star(pop.config.spikes.front(), gamma_hat);
  } else {
    std::vector<double> lambdas;
    for (double ell : pop.config.spikes) {
      lambdas.push_back(eigen_map(ell, gamma_hat));
    }
    result.target = asymptotic_kappa(limit_config,
                                     apply(spec, lambdas, gamma_hat));
  }
  return result;
}

double sharpe_ratio(const Eigen::VectorXd& h, const Eigen::VectorXd& mu,
                    const LowRankSpd& sigma) {
  if (h.size() != mu.size()) {
    throw std::domain_error("sharpe_ratio: size mismatch");
  }
  const double norm2 = h.squaredNorm();
  if (!(norm2 > 0.0)) {
    throw std::domain_error("sharpe_ratio: holdings must be nonzero");
  }
  const double risk = h.dot(sigma.apply(h));
  return h.dot(mu) / std::sqrt(risk);
}

double sharpe_ratio_best(const Eigen::VectorXd& mu, const LowRankSpd& sigma) {
  return std::sqrt(mu.dot(sigma.apply(mu, -1.0)));
}

ForecastVector least_favorable_forecast(const SpikedPopulation& pop,
                                        const Eigen::MatrixXd& est_vectors,
                                        const Eigen::VectorXd& est_values) {
  if (est_vectors.rows() != pop.p() ||
      est_vectors.cols() != est_values.size()) {
    throw std::domain_error("least_favorable_forecast: estimate shape");
  }
  for (Eigen::Index i = 0; i < est_values.size(); ++i) {
    if (!(est_values[i] > 0.0)) {
      throw std::domain_error("least_favorable_forecast: singular estimate");
    }
  }
  LowRankSpd est{est_vectors, est_values};
  const LowRankSpd sigma = pop.covariance();

  // Pivot SigmaHat^{-1/2} Sigma SigmaHat^{-1/2} restricted to the invariant
  // subspace spanned by the population and estimate eigenvectors.
  const Eigen::MatrixXd basis = joint_basis(pop.u_basis, est_vectors);
  const Eigen::MatrixXd c = est.apply(basis, -0.5);
  const Eigen::MatrixXd m_small = c.transpose() * sigma.apply(c);
  Eigen::VectorXd nus;
  Eigen::MatrixXd rot;
  sym_eig_desc((m_small + m_small.transpose()) / 2.0, &nus, &rot);

  const bool off_subspace = basis.cols() < pop.p();
  double nu_hi = nus[0];
  double nu_lo = nus[nus.size() - 1];
  Eigen::VectorXd v_hi = basis * rot.col(0);
  Eigen::VectorXd v_lo = basis * rot.col(rot.cols() - 1);
  if (off_subspace && nu_hi < 1.0) {
    nu_hi = 1.0;
    v_hi = Eigen::VectorXd::Unit(pop.p(), 0);
    v_hi -= basis * (basis.transpose() * v_hi);
    v_hi.normalize();
  }
  if (off_subspace && nu_lo > 1.0) {
    nu_lo = 1.0;
    v_lo = Eigen::VectorXd::Unit(pop.p(), 0);
    v_lo -= basis * (basis.transpose() * v_lo);
    v_lo.normalize();
  }

  ForecastVector fv;
  fv.pivot_kappa = nu_hi / nu_lo;
  fv.bound = rsrg_from_kappa(fv.pivot_kappa);

  Eigen::VectorXd x = (v_hi + v_lo) / std::sqrt(2.0);
  if (fv.pivot_kappa <= 1.0 + 1e-14) {
    x = pop.u_basis.col(0);  // degenerate: every forecast achieves ratio 1
  }
  fv.mu = est.apply(x, 0.5);
  fv.mu.normalize();

  const Eigen::VectorXd h = est.apply(fv.mu, -1.0);
  fv.achieved_ratio =
      sharpe_ratio_best(fv.mu, sigma) / sharpe_ratio(h, fv.mu, sigma);

  const Eigen::VectorXd u1 = pop.u_basis.col(0);
  Eigen::VectorXd w2 = est_vectors.col(0) - est_vectors.col(0).dot(u1) * u1;
  const double w2n = w2.norm();
  fv.alpha1 = fv.mu.dot(u1);
  fv.alpha2 = w2n > 1e-12 ? fv.mu.dot(w2 / w2n) : 0.0;
  return fv;
}

}  // namespace condshrink
