#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "condshrink/loss.hpp"
#include "condshrink/montecarlo.hpp"
#include "condshrink/pivot.hpp"
#include "condshrink/shrinkers.hpp"
#include "condshrink/spiked.hpp"

namespace py = pybind11;
using namespace condshrink;

namespace {

ShrinkerSpec spec_from(const std::string& text) {
  return ShrinkerSpec::parse(text);
}

py::dict sim_to_dict(const SimResult& r) {
  py::dict d;
  d["seed"] = r.seed;
  d["n"] = r.n;
  d["p"] = r.p;
  d["gamma"] = r.gamma;
  d["spikes"] = r.spikes;
  d["shrinker"] = r.shrinker;
  d["reps"] = r.reps;
  d["kappa"] = r.kappa;
  d["rsrg"] = r.rsrg;
  d["mean_kappa"] = r.mean_kappa;
  d["stderr_kappa"] = r.stderr_kappa;
  d["mean_rsrg"] = r.mean_rsrg;
  d["stderr_rsrg"] = r.stderr_rsrg;
  d["target"] = r.target;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Optimal eigenvalue shrinkage of spiked covariance matrices under "
      "relative condition number loss";

  // Spiked model maps.
  m.def("bulk_edges", [](double g) {
    const BulkEdges e = bulk_edges(g);
    return py::make_tuple(e.lower, e.upper);
  }, py::arg("gamma"));
  m.def("spike_detection_threshold", &spike_detection_threshold,
        py::arg("gamma"));
  m.def("eigen_map", &eigen_map, py::arg("ell"), py::arg("gamma"));
  m.def("eigen_inverse", &eigen_inverse, py::arg("lmbda"), py::arg("gamma"));
  m.def("cosine2", &cosine2, py::arg("ell"), py::arg("gamma"));
  m.def("sine2", &sine2, py::arg("ell"), py::arg("gamma"));

  // Pivot blocks.
  py::class_<PivotBlock>(m, "PivotBlock")
      .def_readonly("ell", &PivotBlock::ell)
      .def_readonly("eta", &PivotBlock::eta)
      .def_readonly("trace", &PivotBlock::trace)
      .def_readonly("det", &PivotBlock::det)
      .def_readonly("nu_minus", &PivotBlock::nu_minus)
      .def_readonly("nu_plus", &PivotBlock::nu_plus);
  m.def("block", &block, py::arg("ell"), py::arg("eta"), py::arg("gamma"));
  m.def("ab_coeffs", [](double ell, double g) {
    const ABCoeffs c = ab_coeffs(ell, g);
    return py::make_tuple(c.a, c.b);
  }, py::arg("ell"), py::arg("gamma"));
  m.def("asymptotic_kappa",
        [](double gamma, const std::vector<double>& spikes,
           const std::vector<double>& etas) {
          return asymptotic_kappa(SpikeConfig(gamma, spikes), etas);
        },
        py::arg("gamma"), py::arg("spikes"), py::arg("etas"));

  // Shrinkers.
  m.def("dead_zone_single", [](double g) {
    const DeadZone dz = dead_zone_single(g);
    return py::make_tuple(dz.ell_threshold, dz.lambda_threshold);
  }, py::arg("gamma"));
  m.def("eta_single", &eta_single, py::arg("lmbda"), py::arg("gamma"));
  m.def("nu_minus_star", &nu_minus_star, py::arg("ell1"), py::arg("gamma"));
  m.def("nu_minus_minimax", &nu_minus_minimax, py::arg("gamma"));
  m.def("eta_multi", &eta_multi, py::arg("lmbda"), py::arg("lambda1"),
        py::arg("gamma"));
  m.def("eta_minimax", &eta_minimax, py::arg("lmbda"), py::arg("gamma"));
  m.def("eta_mmst", &eta_mmst, py::arg("lmbda"), py::arg("gamma"));
  m.def("eta_pnl", &eta_pnl, py::arg("lmbda"), py::arg("gamma"));
  m.def("apply",
        [](const std::string& shrinker, const std::vector<double>& values,
           double gamma) { return apply(spec_from(shrinker), values, gamma); },
        py::arg("shrinker"), py::arg("eigenvalues"), py::arg("gamma"));

  // Losses and sweeps.
  m.def("kappa_star", &kappa_star, py::arg("ell1"), py::arg("gamma"));
  m.def("kappa_star_limit", &kappa_star_limit, py::arg("gamma"));
  m.def("rsrg_from_kappa", &rsrg_from_kappa, py::arg("kappa"));
  m.def("loss_report",
        [](double gamma, const std::vector<double>& spikes,
           const std::string& shrinker) {
          const LossReport r =
              loss_report(SpikeConfig(gamma, spikes), spec_from(shrinker));
          py::dict d;
          d["kappa"] = r.kappa;
          d["rsrg"] = r.rsrg;
          d["kappa_star"] = r.kappa_star;
          d["regret_kappa_pct"] = r.regret_kappa_pct;
          d["regret_rsrg_pct"] = r.regret_rsrg_pct;
          return d;
        },
        py::arg("gamma"), py::arg("spikes"), py::arg("shrinker"));
  m.def("worst_config_kappa",
        [](const std::string& shrinker, double ell_top, double gamma) {
          const WorstConfig w =
              worst_config_kappa(spec_from(shrinker), ell_top, gamma);
          py::dict d;
          d["kappa"] = w.kappa;
          d["nu_plus_max"] = w.nu_plus_max;
          d["argmax_ell"] = w.argmax_ell;
          d["nu_minus_min"] = w.nu_minus_min;
          d["argmin_ell"] = w.argmin_ell;
          return d;
        },
        py::arg("shrinker"), py::arg("ell_top"), py::arg("gamma"));
  m.def("max_regret",
        [](const std::string& shrinker, double gamma) {
          const RegretSweepRow row = max_regret(spec_from(shrinker), gamma);
          py::dict d;
          d["gamma"] = row.gamma;
          d["shrinker"] = row.shrinker.str();
          d["max_regret_kappa_pct"] = row.max_regret_kappa_pct;
          d["max_regret_rsrg_pct"] = row.max_regret_rsrg_pct;
          d["argmax_ell"] = row.argmax_ell;
          return d;
        },
        py::arg("shrinker"), py::arg("gamma"));
  m.def("default_gamma_grid", &default_gamma_grid);

  // Monte Carlo.
  py::class_<SpikedPopulation>(m, "SpikedPopulation")
      .def(py::init([](int p, double gamma, const std::vector<double>& spikes,
                       std::uint64_t seed) {
             return SpikedPopulation::random(p, SpikeConfig(gamma, spikes),
                                             seed);
           }),
           py::arg("p"), py::arg("gamma"), py::arg("spikes"), py::arg("seed"))
      .def_property_readonly("p", &SpikedPopulation::p)
      .def_property_readonly(
          "basis", [](const SpikedPopulation& pop) { return pop.u_basis; });
  m.def("sample_data", &sample_data, py::arg("pop"), py::arg("n"),
        py::arg("seed"));
  m.def("sample_empirical",
        [](const SpikedPopulation& pop, int n, std::uint64_t seed, int top_k) {
          SampleOptions opts;
          opts.top_k = top_k;
          const Spectrum s = sample_empirical(pop, n, seed, opts);
          return py::make_tuple(s.values, s.vectors);
        },
        py::arg("pop"), py::arg("n"), py::arg("seed"), py::arg("top_k") = -1);
  m.def("empirical_pivot_kappa",
        [](const SpikedPopulation& pop, const Eigen::VectorXd& values,
           const Eigen::MatrixXd& vectors, const std::vector<double>& etas) {
          return empirical_pivot_kappa(pop, values, vectors, etas);
        },
        py::arg("pop"), py::arg("eigenvalues"), py::arg("eigenvectors"),
        py::arg("etas"));
  m.def("simulate_loss",
        [](const SpikedPopulation& pop, int n, const std::string& shrinker,
           int reps, std::uint64_t seed, bool full_spectrum, int threads) {
          SimulateOptions opts;
          opts.full_spectrum = full_spectrum;
          opts.threads = threads;
          return sim_to_dict(
              simulate_loss(pop, n, spec_from(shrinker), reps, seed, opts));
        },
        py::arg("pop"), py::arg("n"), py::arg("shrinker"), py::arg("reps"),
        py::arg("seed"), py::arg("full_spectrum") = false,
        py::arg("threads") = 1);
  m.def("least_favorable_forecast",
        [](const SpikedPopulation& pop, const Eigen::MatrixXd& est_vectors,
           const Eigen::VectorXd& est_values) {
          const ForecastVector fv =
              least_favorable_forecast(pop, est_vectors, est_values);
          py::dict d;
          d["mu"] = fv.mu;
          d["alpha1"] = fv.alpha1;
          d["alpha2"] = fv.alpha2;
          d["achieved_ratio"] = fv.achieved_ratio;
          d["bound"] = fv.bound;
          d["pivot_kappa"] = fv.pivot_kappa;
          return d;
        },
        py::arg("pop"), py::arg("est_vectors"), py::arg("est_values"));
}
