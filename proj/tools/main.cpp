// Command line surface: shrink, thresholds, loss, sweep, simulate, worstcase.
//
// Exit codes: 0 success, 1 usage or domain error, 2 check failure,
// 3 internal error.

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "condshrink/loss.hpp"
#include "condshrink/montecarlo.hpp"
#include "condshrink/pivot.hpp"
#include "condshrink/shrinkers.hpp"
#include "condshrink/spiked.hpp"
#include "condshrink/table_io.hpp"

namespace cs = condshrink;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckFailed = 2;
constexpr int kExitInternal = 3;

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::fputs(content.c_str(), stdout);
  } else {
    cs::atomic_write(out_path, content);
  }
}

std::vector<double> parse_number_list(const std::string& text,
                                      const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t pos = 0;
      values.push_back(std::stod(cell, &pos));
      if (pos != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw std::domain_error(std::string("bad ") + what + " entry: " + cell);
    }
  }
  if (values.empty()) {
    throw std::domain_error(std::string("empty ") + what + " list");
  }
  return values;
}

cs::ShrinkerSpec make_spec(const std::string& shrinker_text,
                           std::optional<double> lambda1_flag) {
  cs::ShrinkerSpec spec = cs::ShrinkerSpec::parse(shrinker_text);
  if (lambda1_flag) {
    if (spec.kind != cs::ShrinkerKind::multi_spike_optimal) {
      throw std::domain_error("--lambda1 only applies to the multi shrinker");
    }
    if (spec.lambda1) {
      throw std::domain_error("lambda1 given twice (inline and via --lambda1)");
    }
    spec.lambda1 = *lambda1_flag;
  }
  return spec;
}

std::string join_spikes(const std::vector<double>& spikes, char sep) {
  std::string s;
  for (std::size_t i = 0; i < spikes.size(); ++i) {
    if (i) s += sep;
    s += cs::format_number(spikes[i]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// shrink

struct ShrinkArgs {
  std::string matrix_path;
  std::string values_path;
  std::vector<double> spikes;  // synthetic mode
  int n = 0;
  int p = 0;
  double gamma = 0.0;
  bool has_gamma = false;
  bool center = false;
  std::string shrinker = "single";
  std::optional<double> lambda1;
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string out;
  std::string cov_out;
  bool force = false;
};

int cmd_shrink(const ShrinkArgs& args) {
  const int modes = (!args.matrix_path.empty()) + (!args.values_path.empty()) +
                    (!args.spikes.empty());
  if (modes != 1) {
    throw std::domain_error(
        "exactly one input mode: --matrix, --eigenvalues, or --spikes");
  }
  const cs::ShrinkerSpec spec = make_spec(args.shrinker, args.lambda1);

  std::vector<double> lambdas;
  Eigen::MatrixXd vectors;  // empty unless a matrix was decomposed
  double gamma = args.gamma;

  if (!args.values_path.empty()) {
    if (!args.has_gamma) {
      throw std::domain_error("eigenvalue-list input requires --gamma");
    }
    lambdas = cs::read_eigenvalue_list(args.values_path);
  } else {
    Eigen::MatrixXd s;
    if (!args.matrix_path.empty()) {
      const Eigen::MatrixXd x = cs::read_matrix_csv(args.matrix_path);
      const Eigen::Index n = x.rows(), p = x.cols();
      if (n < 2 || p < 2) {
        throw std::domain_error("matrix input needs n >= 2 and p >= 2");
      }
      if (!args.has_gamma) gamma = double(p) / double(n);
      if (args.center) {
        const Eigen::RowVectorXd mean = x.colwise().mean();
        const Eigen::MatrixXd centered = x.rowwise() - mean;
        s = centered.transpose() * centered / double(n - 1);
      } else {
        s = x.transpose() * x / double(n);
      }
    } else {
      if (args.n < 2) throw std::domain_error("synthetic mode requires --n");
      int p = args.p;
      if (p == 0) {
        if (!args.has_gamma) {
          throw std::domain_error("synthetic mode requires --p or --gamma");
        }
        p = std::max(2, int(std::llround(args.gamma * args.n)));
      }
      gamma = double(p) / double(args.n);
      const cs::SpikedPopulation pop = cs::SpikedPopulation::random(
          p, cs::SpikeConfig(gamma, args.spikes), args.seed);
      const Eigen::MatrixXd x = cs::sample_data(pop, args.n, args.seed);
      s = x.transpose() * x / double(args.n);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    if (es.info() != Eigen::Success) {
      throw std::runtime_error("eigendecomposition failed");
    }
    const Eigen::VectorXd vals = es.eigenvalues().reverse().cwiseMax(0.0);
    vectors = es.eigenvectors().rowwise().reverse();
    lambdas.assign(vals.data(), vals.data() + vals.size());
  }

  const std::vector<double> etas = cs::apply(spec, lambdas, gamma);
  const double edge = cs::bulk_edge_upper(gamma);

  if (!args.cov_out.empty()) {
    if (vectors.size() == 0) {
      throw std::domain_error(
          "covariance output requires matrix or synthetic input");
    }
    if (vectors.rows() > 4096 && !args.force) {
      throw std::domain_error(
          "refusing to write a dense covariance with p > 4096 (use --force)");
    }
    const Eigen::VectorXd eta_vec =
        Eigen::Map<const Eigen::VectorXd>(etas.data(), etas.size());
    const Eigen::MatrixXd sigma_hat =
        vectors * eta_vec.asDiagonal() * vectors.transpose();
    cs::atomic_write(args.cov_out, cs::matrix_to_csv(sigma_hat));
  }

  if (args.format == "json") {
    json doc;
    doc["gamma"] = gamma;
    doc["shrinker"] = spec.str();
    doc["eigenvalues"] = lambdas;
    doc["etas"] = etas;
    json flags = json::array();
    for (std::size_t i = 0; i < etas.size(); ++i) {
      flags.push_back(etas[i] == 1.0 && lambdas[i] > edge);
    }
    doc["dead_zone"] = std::move(flags);
    emit(args.out, doc.dump(2) + "\n");
  } else {
    std::string csv = "index,eigenvalue,eta,dead_zone\n";
    for (std::size_t i = 0; i < etas.size(); ++i) {
      const bool flag = etas[i] == 1.0 && lambdas[i] > edge;
      csv += std::to_string(i) + ',' + cs::format_number(lambdas[i]) + ',' +
             cs::format_number(etas[i]) + ',' + (flag ? '1' : '0') + '\n';
    }
    emit(args.out, csv);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// thresholds

int cmd_thresholds(double gamma, const std::string& format,
                   const std::string& out) {
  const cs::BulkEdges edges = cs::bulk_edges(gamma);
  const double ell_plus = cs::spike_detection_threshold(gamma);
  const cs::DeadZone single = cs::dead_zone_single(gamma);
  const double ell_mm = 1.0 / cs::nu_minus_minimax(gamma);
  const double lambda_mm = cs::eigen_map(ell_mm, gamma);
  // Threshold ordering is a theorem; a violation means broken formulas.
  if (!(edges.upper < single.lambda_threshold &&
        single.lambda_threshold <= lambda_mm)) {
    throw std::logic_error("threshold ordering violated");
  }

  if (format == "json") {
    json doc;
    doc["gamma"] = gamma;
    doc["lambda_minus"] = edges.lower;
    doc["lambda_plus"] = edges.upper;
    doc["ell_plus"] = ell_plus;
    doc["ell_1_plus"] = single.ell_threshold;
    doc["lambda_1_plus"] = single.lambda_threshold;
    doc["ell_mm_plus"] = ell_mm;
    doc["lambda_mm_plus"] = lambda_mm;
    emit(out, doc.dump(2) + "\n");
  } else {
    std::string csv =
        "lambda_minus,lambda_plus,ell_plus,ell_1_plus,lambda_1_plus,"
        "ell_mm_plus,lambda_mm_plus\n";
    csv += cs::format_number(edges.lower) + ',' +
           cs::format_number(edges.upper) + ',' + cs::format_number(ell_plus) +
           ',' + cs::format_number(single.ell_threshold) + ',' +
           cs::format_number(single.lambda_threshold) + ',' +
           cs::format_number(ell_mm) + ',' + cs::format_number(lambda_mm) +
           '\n';
    emit(out, csv);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// loss

int cmd_loss(double gamma, const std::vector<double>& spikes,
             const std::string& shrinker, std::optional<double> lambda1,
             const std::string& format, const std::string& out) {
  const cs::SpikeConfig config(gamma, spikes);
  const cs::ShrinkerSpec spec = make_spec(shrinker, lambda1);
  const cs::LossReport r = cs::loss_report(config, spec);
  if (format == "json") {
    json doc;
    doc["gamma"] = gamma;
    doc["spikes"] = spikes;
    doc["shrinker"] = spec.str();
    doc["kappa"] = r.kappa;
    doc["rsrg"] = r.rsrg;
    doc["kappa_star"] = r.kappa_star;
    doc["regret_kappa_pct"] = r.regret_kappa_pct;
    doc["regret_rsrg_pct"] = r.regret_rsrg_pct;
    emit(out, doc.dump(2) + "\n");
  } else {
    std::string csv =
        "gamma,spikes,shrinker,kappa,rsrg,kappa_star,regret_kappa_pct,"
        "regret_rsrg_pct\n";
    csv += cs::format_number(gamma) + ',' + join_spikes(spikes, ';') + ',' +
           spec.str() + ',' + cs::format_number(r.kappa) + ',' +
           cs::format_number(r.rsrg) + ',' + cs::format_number(r.kappa_star) +
           ',' + cs::format_number(r.regret_kappa_pct) + ',' +
           cs::format_number(r.regret_rsrg_pct) + '\n';
    emit(out, csv);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

int cmd_sweep(const std::string& gammas_text, const std::string& shrinkers_text,
              int threads, const std::string& out) {
  std::vector<double> gammas = gammas_text.empty()
                                   ? cs::default_gamma_grid()
                                   : parse_number_list(gammas_text, "gamma");
  std::vector<cs::ShrinkerSpec> specs;
  std::stringstream ss(shrinkers_text);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (!name.empty()) specs.push_back(cs::ShrinkerSpec::parse(name));
  }
  if (specs.empty()) throw std::domain_error("empty shrinker list");

  const auto rows = cs::regret_sweep(specs, gammas, threads);
  std::string csv =
      "gamma,shrinker,max_regret_kappa_pct,max_regret_rsrg_pct,argmax_ell\n";
  for (const auto& row : rows) {
    csv += cs::format_number(row.gamma) + ',' + row.shrinker.str() + ',' +
           cs::format_number(row.max_regret_kappa_pct) + ',' +
           cs::format_number(row.max_regret_rsrg_pct) + ',' +
           cs::format_number(row.argmax_ell) + '\n';
  }
  emit(out, csv);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const std::vector<double>& spikes, double gamma,
                 bool has_gamma, int n, int p, int reps, std::uint64_t seed,
                 const std::string& shrinker, std::optional<double> lambda1,
                 int threads, bool full_spectrum, bool check, double tolerance,
                 const std::string& out) {
  if (reps < 1) throw std::domain_error("--reps must be >= 1");
  if (n < 2) throw std::domain_error("--n must be >= 2");
  if (p == 0) {
    if (!has_gamma) throw std::domain_error("need --p or --gamma");
    p = std::max(2, int(std::llround(gamma * n)));
  }
  const double gamma_hat = double(p) / double(n);
  const cs::SpikedPopulation pop = cs::SpikedPopulation::random(
      p, cs::SpikeConfig(gamma_hat, spikes), seed);
  cs::SimulateOptions opts;
  opts.threads = threads;
  opts.full_spectrum = full_spectrum;
  const cs::SimResult r = cs::simulate_loss(
      pop, n, make_spec(shrinker, lambda1), reps, seed, opts);

  json doc;
  doc["seed"] = r.seed;
  doc["n"] = r.n;
  doc["p"] = r.p;
  doc["gamma"] = r.gamma;
  doc["spikes"] = r.spikes;
  doc["shrinker"] = r.shrinker;
  doc["reps"] = r.reps;
  doc["mean_kappa"] = r.mean_kappa;
  doc["stderr_kappa"] = r.stderr_kappa;
  doc["mean_rsrg"] = r.mean_rsrg;
  doc["stderr_rsrg"] = r.stderr_rsrg;
  doc["target"] = r.target;
  json per_rep = json::array();
  for (int i = 0; i < r.reps; ++i) {
    per_rep.push_back(json{{"kappa", r.kappa[i]}, {"rsrg", r.rsrg[i]}});
  }
  doc["per_rep"] = std::move(per_rep);
  emit(out, doc.dump(2) + "\n");

  if (check) {
    const double rel = std::abs(r.mean_kappa - r.target) / r.target;
    if (!(rel <= tolerance)) {
      std::fprintf(stderr,
                   "check failed: mean kappa %.6g vs target %.6g "
                   "(relative %.3g > %.3g)\n",
                   r.mean_kappa, r.target, rel, tolerance);
      return kExitCheckFailed;
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// worstcase

int cmd_worstcase(const std::vector<double>& spikes, double gamma, int p,
                  int n, std::uint64_t seed, const std::string& shrinker,
                  std::optional<double> lambda1, bool exact,
                  const std::string& out) {
  if (p < 4) throw std::domain_error("--p too small");
  if (n == 0) n = std::max(4, int(std::llround(p / gamma)));
  const double gamma_hat = double(p) / double(n);
  const cs::SpikedPopulation pop = cs::SpikedPopulation::random(
      p, cs::SpikeConfig(gamma_hat, spikes), seed);

  Eigen::MatrixXd est_vectors;
  Eigen::VectorXd est_values;
  if (exact) {
    est_vectors = pop.u_basis;
    est_values = Eigen::Map<const Eigen::VectorXd>(spikes.data(),
                                                   spikes.size());
  } else {
    const cs::Spectrum s = cs::sample_empirical(pop, n, seed);
    const std::vector<double> lambdas(
        s.values.data(), s.values.data() + s.values.size());
    const std::vector<double> etas =
        cs::apply(make_spec(shrinker, lambda1), lambdas, gamma_hat);
    est_vectors = s.vectors;
    est_values = Eigen::Map<const Eigen::VectorXd>(etas.data(), etas.size());
  }
  const cs::ForecastVector fv =
      cs::least_favorable_forecast(pop, est_vectors, est_values);
  const double gap = std::abs(fv.achieved_ratio - fv.bound);

  json doc;
  doc["p"] = p;
  doc["n"] = n;
  doc["gamma"] = gamma_hat;
  doc["spikes"] = spikes;
  doc["shrinker"] = exact ? "exact" : shrinker;
  doc["seed"] = seed;
  doc["alpha1"] = fv.alpha1;
  doc["alpha2"] = fv.alpha2;
  doc["achieved_ratio"] = fv.achieved_ratio;
  doc["kantorovich_bound"] = fv.bound;
  doc["pivot_kappa"] = fv.pivot_kappa;
  doc["equality_gap"] = gap;
  emit(out, doc.dump(2) + "\n");

  if (!(gap <= 1e-8)) {
    std::fprintf(stderr, "Kantorovich equality violated: gap %.3g\n", gap);
    return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Optimal eigenvalue shrinkage of spiked covariance matrices under "
      "relative condition number loss"};
  app.require_subcommand(1);

  // shrink ------------------------------------------------------------------
  ShrinkArgs sh;
  std::string sh_spikes_text;
  auto* shrink = app.add_subcommand(
      "shrink", "Shrink a spectrum or a data matrix into a covariance estimate");
  shrink->add_option("--matrix", sh.matrix_path,
                     "CSV data matrix, one observation per row");
  shrink->add_option("--eigenvalues", sh.values_path,
                     "newline-separated descending eigenvalue list");
  shrink->add_option("--spikes", sh_spikes_text,
                     "synthetic mode: comma list of population spikes");
  shrink->add_option("--n", sh.n, "synthetic mode: observations");
  shrink->add_option("--p", sh.p, "synthetic mode: dimension");
  auto* shg = shrink->add_option("--gamma", sh.gamma, "aspect ratio p/n");
  shrink->add_flag("--center", sh.center,
                   "subtract column means and use n-1 (off by default)");
  shrink->add_option("--shrinker", sh.shrinker,
                     "single|multi[:lambda1]|minimax|mmst|pnl|identity|raw");
  double sh_lambda1 = 0.0;
  auto* shl = shrink->add_option("--lambda1", sh_lambda1,
                                 "tuning for the multi shrinker");
  shrink->add_option("--seed", sh.seed, "synthetic mode seed");
  shrink->add_option("--format", sh.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  shrink->add_option("--out", sh.out, "output path (default stdout)");
  shrink->add_option("--cov-out", sh.cov_out,
                     "write the dense shrunk covariance to this CSV path");
  shrink->add_flag("--force", sh.force, "allow dense covariance with p > 4096");

  // thresholds ----------------------------------------------------------------
  double th_gamma = 0.0;
  std::string th_format = "csv", th_out;
  auto* thresholds =
      app.add_subcommand("thresholds", "Dead-zone and bulk-edge table");
  thresholds->add_option("--gamma", th_gamma, "aspect ratio")->required();
  thresholds->add_option("--format", th_format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  thresholds->add_option("--out", th_out, "output path");

  // loss ----------------------------------------------------------------------
  double lo_gamma = 0.0;
  std::string lo_spikes_text, lo_shrinker = "single", lo_format = "csv", lo_out;
  double lo_lambda1 = 0.0;
  auto* loss = app.add_subcommand(
      "loss", "Asymptotic loss and regret of a shrinker at a configuration");
  loss->add_option("--gamma", lo_gamma, "aspect ratio")->required();
  loss->add_option("--spikes", lo_spikes_text, "comma list of spikes")
      ->required();
  loss->add_option("--shrinker", lo_shrinker, "shrinker spec");
  auto* lol = loss->add_option("--lambda1", lo_lambda1, "multi tuning");
  loss->add_option("--format", lo_format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  loss->add_option("--out", lo_out, "output path");

  // sweep ---------------------------------------------------------------------
  std::string sw_gammas, sw_shrinkers = "single,minimax,mmst,pnl", sw_out;
  int sw_threads = 0;
  auto* sweep = app.add_subcommand(
      "sweep", "Max-regret sweep over aspect ratios (CSV)");
  sweep->add_option("--gammas", sw_gammas,
                    "comma list (default 0.01,0.03,...,1.99,2)");
  sweep->add_option("--shrinkers", sw_shrinkers, "comma list of shrinkers");
  sweep->add_option("--threads", sw_threads, "0 = hardware concurrency");
  sweep->add_option("--out", sw_out, "output path");

  // simulate ------------------------------------------------------------------
  std::string si_spikes_text = "5", si_shrinker = "single", si_out;
  double si_gamma = 0.0, si_lambda1 = 0.0, si_tolerance = 0.05;
  int si_n = 0, si_p = 0, si_reps = 50, si_threads = 0;
  std::uint64_t si_seed = 1;
  bool si_check = false, si_full = false;
  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo empirical losses against the asymptotic target");
  simulate->add_option("--spikes", si_spikes_text, "comma list of spikes");
  auto* sig = simulate->add_option("--gamma", si_gamma, "aspect ratio");
  simulate->add_option("--n", si_n, "observations")->required();
  simulate->add_option("--p", si_p, "dimension (default round(gamma*n))");
  simulate->add_option("--reps", si_reps, "replicates");
  simulate->add_option("--seed", si_seed, "base seed");
  simulate->add_option("--shrinker", si_shrinker, "shrinker spec");
  auto* sil = simulate->add_option("--lambda1", si_lambda1, "multi tuning");
  simulate->add_option("--threads", si_threads, "0 = hardware concurrency");
  simulate->add_flag("--full-spectrum", si_full,
                     "dense decomposition in every replicate");
  simulate->add_flag("--check", si_check,
                     "exit 2 unless mean kappa is within --tolerance of target");
  simulate->add_option("--tolerance", si_tolerance, "relative check tolerance");
  simulate->add_option("--out", si_out, "output path");

  // worstcase -----------------------------------------------------------------
  std::string wc_spikes_text = "5", wc_shrinker = "single", wc_out;
  double wc_gamma = 1.0, wc_lambda1 = 0.0;
  int wc_p = 200, wc_n = 0;
  std::uint64_t wc_seed = 1;
  bool wc_exact = false;
  auto* worstcase = app.add_subcommand(
      "worstcase", "Least favorable forecast and the Kantorovich equality");
  worstcase->add_option("--spikes", wc_spikes_text, "comma list of spikes");
  worstcase->add_option("--gamma", wc_gamma, "aspect ratio");
  worstcase->add_option("--p", wc_p, "dimension (desk scale)");
  worstcase->add_option("--n", wc_n, "observations (default round(p/gamma))");
  worstcase->add_option("--seed", wc_seed, "seed");
  worstcase->add_option("--shrinker", wc_shrinker, "estimate shrinker");
  auto* wcl = worstcase->add_option("--lambda1", wc_lambda1, "multi tuning");
  worstcase->add_flag("--exact", wc_exact,
                      "use SigmaHat = Sigma instead of a sampled estimate");
  worstcase->add_option("--out", wc_out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto opt_double = [](const CLI::Option* opt,
                             double value) -> std::optional<double> {
    return opt->count() ? std::optional<double>(value) : std::nullopt;
  };

  try {
    if (shrink->parsed()) {
      sh.has_gamma = shg->count() > 0;
      if (!sh_spikes_text.empty()) {
        sh.spikes = parse_number_list(sh_spikes_text, "spike");
      }
      sh.lambda1 = opt_double(shl, sh_lambda1);
      return cmd_shrink(sh);
    }
    if (thresholds->parsed()) {
      return cmd_thresholds(th_gamma, th_format, th_out);
    }
    if (loss->parsed()) {
      return cmd_loss(lo_gamma, parse_number_list(lo_spikes_text, "spike"),
                      lo_shrinker, opt_double(lol, lo_lambda1), lo_format,
                      lo_out);
    }
    if (sweep->parsed()) {
      return cmd_sweep(sw_gammas, sw_shrinkers, sw_threads, sw_out);
    }
    if (simulate->parsed()) {
      return cmd_simulate(parse_number_list(si_spikes_text, "spike"), si_gamma,
                          sig->count() > 0, si_n, si_p, si_reps, si_seed,
                          si_shrinker, opt_double(sil, si_lambda1), si_threads,
                          si_full, si_check, si_tolerance, si_out);
    }
    if (worstcase->parsed()) {
      return cmd_worstcase(parse_number_list(wc_spikes_text, "spike"), wc_gamma,
                           wc_p, wc_n, wc_seed, wc_shrinker,
                           opt_double(wcl, wc_lambda1), wc_exact, wc_out);
    }
    return kExitUsage;
  } catch (const CheckFailure& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitCheckFailed;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
}
