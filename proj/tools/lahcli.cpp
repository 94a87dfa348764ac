// Command-line front end: exact combinatorics, Lah distribution tables,
// seeded samplers, asymptotic laws, hull face formulas, walk simulation, and
// the acceptance suite. Exit codes: 0 success, 1 failed verification,
// 2 domain/usage error, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lah/asymptotics.hpp"
#include "lah/conic.hpp"
#include "lah/distribution.hpp"
#include "lah/hull_model.hpp"
#include "lah/sampling.hpp"
#include "lah/verify.hpp"
#include "lah/walk.hpp"
#include "lah/zeros.hpp"

#ifndef LAHKIT_GIT_HASH
#define LAHKIT_GIT_HASH "unknown"
#endif

namespace {

using Json = nlohmann::ordered_json;

struct OutputOptions {
  std::string format = "pretty";  // csv | json | pretty
  std::string out_path;           // empty = stdout
  std::uint64_t seed = 0;
  int threads = 1;
};

// A result table: column names plus string rows, with the resolved config
// echoed into every output header.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> config;

  void add_config(const std::string& key, const std::string& value) {
    config.emplace_back(key, value);
  }
  void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

std::string format_double(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

void write_output(const Table& table, const OutputOptions& opt) {
  std::ostringstream body;
  if (opt.format == "csv") {
    for (const auto& [key, value] : table.config)
      body << "# " << key << "=" << value << "\n";
    for (size_t c = 0; c < table.columns.size(); ++c)
      body << table.columns[c] << (c + 1 < table.columns.size() ? "," : "\n");
    for (const auto& row : table.rows)
      for (size_t c = 0; c < row.size(); ++c)
        body << row[c] << (c + 1 < row.size() ? "," : "\n");
  } else if (opt.format == "json") {
    Json root;
    Json config = Json::object();
    for (const auto& [key, value] : table.config) config[key] = value;
    root["config"] = config;
    Json rows = Json::array();
    for (const auto& row : table.rows) {
      Json obj = Json::object();
      for (size_t c = 0; c < row.size() && c < table.columns.size(); ++c)
        obj[table.columns[c]] = row[c];
      rows.push_back(obj);
    }
    root["results"] = rows;
    root["provenance"] = {{"git", LAHKIT_GIT_HASH}, {"seed", opt.seed}};
    body << root.dump(2) << "\n";
  } else {
    for (const auto& [key, value] : table.config)
      body << key << " = " << value << "\n";
    for (size_t c = 0; c < table.columns.size(); ++c)
      body << table.columns[c] << (c + 1 < table.columns.size() ? "\t" : "\n");
    for (const auto& row : table.rows)
      for (size_t c = 0; c < row.size(); ++c)
        body << row[c] << (c + 1 < row.size() ? "\t" : "\n");
  }
  if (opt.out_path.empty()) {
    std::cout << body.str();
    return;
  }
  std::string path = opt.out_path;
  if (const char* dir = std::getenv("LAHKIT_OUT_DIR");
      dir && !path.empty() && path.front() != '/')
    path = std::string(dir) + "/" + path;
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::domain_error("cannot open output path " + path);
  file << body.str();
}

struct CliState {
  OutputOptions opt;
  std::string leaf;  // "exact.stirling1", "dist.pmf", ...
  int n_int = 4, k = 1, m = 1, d = 2, d_max = 10, n_extra = 30, precision = 53;
  int cov_m = 10;
  long n_long = 10, trials = 10000;
  double alpha = 0.5, beta = 0.7, t = 0.0, z_re = 0.0, z_im = 0.0;
  double delta = 0.0, lo = 0.05, hi = 0.95, step = 0.05;
  std::string method = "bernoulli-blocks";
  std::string law = "gaussian";
};

int run_exact(const CliState& s) {
  Table table;
  table.add_config("command", "exact " + s.leaf);
  table.add_config("n", std::to_string(s.n_int));
  table.columns = {"value"};
  if (s.leaf == "stirling1") {
    table.add_config("j", std::to_string(s.k));
    table.add_row({lah::to_decimal(lah::stirling_first(s.n_int, s.k))});
  } else if (s.leaf == "stirling2") {
    table.add_config("j", std::to_string(s.k));
    table.add_row({lah::to_decimal(lah::stirling_second(s.n_int, s.k))});
  } else if (s.leaf == "lah") {
    table.add_config("k", std::to_string(s.k));
    table.add_row({lah::to_decimal(lah::lah_number(s.n_int, s.k))});
  } else if (s.leaf == "binom") {
    table.add_config("k", std::to_string(s.k));
    table.add_row({lah::to_decimal(lah::binomial(s.n_int, s.k))});
  } else {  // harmonic
    table.add_config("m", std::to_string(s.m));
    const lah::Ratio h = lah::harmonic(s.n_int, s.m);
    table.columns = {"value_pq", "value_float"};
    table.add_row({lah::to_fraction(h), format_double(lah::to_double(h))});
  }
  write_output(table, s.opt);
  return 0;
}

int run_dist(const CliState& s) {
  const lah::LahParams params{s.n_int, s.k};
  Table table;
  table.add_config("command", "dist " + s.leaf);
  table.add_config("n", std::to_string(s.n_int));
  table.add_config("k", std::to_string(s.k));
  if (s.leaf == "pmf" || s.leaf == "cdf") {
    const lah::LahPmfTable pmf(params);
    table.columns = s.leaf == "pmf"
                        ? std::vector<std::string>{"j", "mass_p", "mass_q", "mass_float"}
                        : std::vector<std::string>{"j", "cdf_p", "cdf_q", "cdf_float"};
    for (int j = s.k; j <= s.n_int; ++j) {
      const lah::Ratio v = s.leaf == "pmf" ? pmf.pmf(j) : pmf.cdf(j);
      table.add_row({std::to_string(j), lah::to_decimal(numerator(v)),
                     lah::to_decimal(denominator(v)),
                     format_double(lah::to_double(v))});
    }
  } else if (s.leaf == "moments") {
    table.columns = {"moment", "value_pq", "value_float"};
    const lah::Ratio mean = lah::lah_expectation(params);
    const lah::Ratio variance = lah::lah_variance(params);
    table.add_row({"mean", lah::to_fraction(mean), format_double(lah::to_double(mean))});
    table.add_row({"variance", lah::to_fraction(variance),
                   format_double(lah::to_double(variance))});
    for (int p = 1; p <= 3 && p <= s.n_int; ++p) {
      const lah::Ratio fm = lah::lah_factorial_moment(params, p);
      table.add_row({"factorial_" + std::to_string(p), lah::to_fraction(fm),
                     format_double(lah::to_double(fm))});
    }
  } else if (s.leaf == "mode") {
    const auto mode = lah::lah_mode(params);
    table.columns = {"argmax", "predicted_floor", "predicted_ceil"};
    std::string argmax;
    for (size_t i = 0; i < mode.argmax.size(); ++i)
      argmax += (i ? ";" : "") + std::to_string(mode.argmax[i]);
    table.add_row({argmax, std::to_string(mode.predicted.first),
                   std::to_string(mode.predicted.second)});
  } else {  // zeros
    const auto zeros = lah::poly_zeros(params, s.precision);
    table.add_config("precision_bits", std::to_string(s.precision));
    table.add_config("max_residual", format_double(zeros.max_residual));
    table.columns = {"re", "im"};
    for (const auto& z : zeros.roots)
      table.add_row({format_double(z.real()), format_double(z.imag())});
    if (!zeros.converged)
      throw lah::numerical_error("poly_zeros did not converge (partial roots emitted)");
  }
  write_output(table, s.opt);
  return 0;
}

int run_sample(const CliState& s) {
  lah::LahSampler sampler;
  if (s.method == "records") sampler = lah::LahSampler::records;
  else if (s.method == "bernoulli-blocks") sampler = lah::LahSampler::bernoulli_blocks;
  else if (s.method == "polya") sampler = lah::LahSampler::polya;
  else throw std::domain_error("sample: unknown method " + s.method);
  if (s.trials < 1) throw std::domain_error("sample: trials must be >= 1");
  std::vector<long> hits(s.n_int + 1, 0);
  std::vector<int> values(s.opt.format == "csv" ? s.trials : 0);
  double sum = 0, sum_sq = 0;
  for (long t = 0; t < s.trials; ++t) {
    lah::Rng rng({s.opt.seed, static_cast<std::uint64_t>(t)});
    const int value = lah::sample_lah(s.n_int, s.k, sampler, rng);
    ++hits[value];
    sum += value;
    sum_sq += static_cast<double>(value) * value;
    if (!values.empty()) values[t] = value;
  }
  const lah::LahPmfTable table({s.n_int, s.k});
  double tv = 0;
  for (int j = s.k; j <= s.n_int; ++j)
    tv += std::abs(static_cast<double>(hits[j]) / s.trials -
                   lah::to_double(table.pmf(j)));
  tv /= 2;
  Table out;
  out.add_config("command", "sample");
  out.add_config("n", std::to_string(s.n_int));
  out.add_config("k", std::to_string(s.k));
  out.add_config("method", s.method);
  out.add_config("trials", std::to_string(s.trials));
  out.add_config("seed", std::to_string(s.opt.seed));
  if (s.opt.format == "csv") {
    out.columns = {"trial", "value"};
    for (long t = 0; t < s.trials; ++t)
      out.add_row({std::to_string(t), std::to_string(values[t])});
  } else {
    const double mean = sum / s.trials;
    out.columns = {"count", "mean", "variance", "tv_distance_vs_exact"};
    out.add_row({std::to_string(s.trials), format_double(mean),
                 format_double(sum_sq / s.trials - mean * mean), format_double(tv)});
  }
  write_output(out, s.opt);
  return 0;
}

int run_asy(const CliState& s) {
  Table table;
  table.add_config("command", "asy " + s.leaf);
  if (s.leaf == "psi") {
    table.add_config("k", std::to_string(s.k));
    const auto value = lah::mod_poisson_psi(s.k, {s.z_re, s.z_im});
    table.columns = {"re", "im"};
    table.add_row({format_double(value.real()), format_double(value.imag())});
  } else if (s.leaf == "phi") {
    table.add_config("alpha", format_double(s.alpha));
    const auto root = lah::saddle_root(s.alpha, s.t);
    table.columns = {"t", "phi", "saddle_r"};
    table.add_row({format_double(s.t), format_double(lah::phi_alpha(s.alpha, s.t)),
                   format_double(root.r)});
  } else if (s.leaf == "rate") {
    table.add_config("alpha", format_double(s.alpha));
    table.columns = {"beta", "rate_closed", "rate_legendre"};
    table.add_row(
        {format_double(s.beta),
         format_double(lah::rate_function(s.alpha, s.beta, lah::RateMethod::closed)),
         format_double(lah::rate_function(s.alpha, s.beta, lah::RateMethod::legendre))});
  } else if (s.leaf == "cov") {
    table.add_config("alpha", format_double(s.alpha));
    table.add_config("M", std::to_string(s.cov_m));
    const auto cov = lah::composition_cov(s.alpha, s.cov_m);
    table.columns = {"i", "j", "cov"};
    for (int i = 1; i <= s.cov_m; ++i)
      for (int j = 1; j <= s.cov_m; ++j)
        table.add_row({std::to_string(i), std::to_string(j),
                       format_double(cov(i - 1, j - 1))});
  } else if (s.leaf == "thresholds") {
    table.columns = {"delta", "rho_weak", "rho_strong"};
    if (s.delta > 0) {
      const auto point = lah::threshold_point(s.delta);
      table.add_row({format_double(s.delta), format_double(point.rho_weak),
                     format_double(point.rho_strong)});
    } else {
      for (double dd = s.lo; dd <= s.hi + 1e-12; dd += s.step) {
        const auto point = lah::threshold_point(dd);
        table.add_row({format_double(dd), format_double(point.rho_weak),
                       format_double(point.rho_strong)});
      }
    }
  } else {  // curve-rate | curve-phi | curve-sigma2
    table.add_config("alpha", format_double(s.alpha));
    table.columns = {"x", "value"};
    for (double x = s.lo; x <= s.hi + 1e-12; x += s.step) {
      double value;
      if (s.leaf == "curve-rate")
        value = lah::rate_function(s.alpha, x, lah::RateMethod::closed);
      else if (s.leaf == "curve-phi")
        value = lah::phi_alpha(s.alpha, x);
      else
        value = lah::central_clt_params(x).variance;
      table.add_row({format_double(x), format_double(value)});
    }
  }
  write_output(table, s.opt);
  return 0;
}

int run_faces(const CliState& s) {
  Table table;
  table.add_config("command", "faces " + s.leaf);
  if (s.leaf == "expected") {
    table.columns = {"n", "d", "k", "Ef_pq", "Ef_float", "ratio"};
    const int k_lo = s.k > 0 ? s.k : 1;
    const int k_hi = s.k > 0 ? s.k : s.d;
    for (int kk = k_lo; kk <= k_hi; ++kk) {
      const lah::Ratio faces = lah::expected_faces({s.n_long, s.d, kk});
      const lah::Ratio ratio = faces / lah::Ratio(lah::binomial(s.n_long + 1, kk));
      table.add_row({std::to_string(s.n_long), std::to_string(s.d), std::to_string(kk),
                     lah::to_fraction(faces), format_double(lah::to_double(faces)),
                     format_double(lah::to_double(ratio))});
    }
  } else if (s.leaf == "defect") {
    table.columns = {"n", "d", "k", "defect_pq", "defect_float"};
    const int kk = s.k > 0 ? s.k : 1;
    const lah::Ratio defect = lah::neighborliness_defect({s.n_long, s.d, kk});
    table.add_row({std::to_string(s.n_long), std::to_string(s.d), std::to_string(kk),
                   lah::to_fraction(defect), format_double(lah::to_double(defect))});
  } else if (s.leaf == "conjecture") {
    table.add_config("d_max", std::to_string(s.d_max));
    table.add_config("n_extra", std::to_string(s.n_extra));
    const auto report = lah::check_monotonicity_conjecture(s.d_max, s.n_extra);
    table.columns = {"status", "detail"};
    if (report.ok) {
      table.add_row({"no-counterexample", "checked d<=" + std::to_string(s.d_max) +
                                              ", n<=k+" + std::to_string(s.n_extra)});
    } else {
      const auto& ce = *report.counterexample;
      table.add_row({"counterexample", ce.what + " at d=" + std::to_string(ce.d) +
                                           ",k=" + std::to_string(ce.k) +
                                           ",n=" + std::to_string(ce.n)});
    }
  } else if (s.leaf == "regime") {
    const auto report =
        lah::constant_k_regime_report(s.d, s.k > 0 ? s.k : 1, s.n_long);
    table.columns = {"gamma_hat", "inv_k", "window_c", "gaussian_limit",
                     "classification", "face_ratio"};
    table.add_row({format_double(report.gamma_hat), format_double(report.inv_k),
                   format_double(report.window_c), format_double(report.gaussian_limit),
                   report.classification, format_double(report.face_ratio)});
  } else {  // conic
    table.columns = {"n", "k", "j", "value_pq", "value_float"};
    const int nn = static_cast<int>(s.n_long);
    for (int j = s.k; j <= nn; ++j) {
      const lah::Ratio v = lah::conic_face_volume_sum(nn, s.k, j);
      table.add_row({std::to_string(nn), std::to_string(s.k), std::to_string(j),
                     lah::to_fraction(v), format_double(lah::to_double(v))});
    }
  }
  write_output(table, s.opt);
  return 0;
}

int run_simulate(const CliState& s) {
  lah::WalkConfig cfg;
  cfg.d = s.d;
  cfg.n = s.n_long;
  cfg.trials = s.trials;
  cfg.seed = s.opt.seed;
  cfg.threads = s.opt.threads;
  if (s.law == "gaussian") cfg.law = lah::IncrementLaw::gaussian;
  else if (s.law == "cauchy") cfg.law = lah::IncrementLaw::cauchy_isotropic;
  else throw std::domain_error("simulate: unknown increment law " + s.law);
  const auto report = lah::monte_carlo_report(cfg);
  Table table;
  table.add_config("command", "simulate");
  table.add_config("d", std::to_string(s.d));
  table.add_config("n", std::to_string(s.n_long));
  table.add_config("law", lah::increment_law_name(cfg.law));
  table.add_config("trials", std::to_string(s.trials));
  table.add_config("seed", std::to_string(s.opt.seed));
  // threads is execution plumbing, not config: reports are byte-identical
  // for any worker count, so it must not appear in the output.
  table.add_config("resampled", std::to_string(report.resampled));
  table.columns = {"k", "mean", "se", "exact_pq", "exact_float", "z"};
  for (const auto& stat : report.faces) {
    table.add_row({std::to_string(stat.k), format_double(stat.mean),
                   format_double(stat.se), stat.exact,
                   format_double(stat.exact_float), format_double(stat.z)});
  }
  write_output(table, s.opt);
  return 0;
}

int run_verify(const CliState& s) {
  const auto results = lah::run_acceptance();
  Table table;
  table.add_config("command", "verify");
  table.columns = {"criterion", "name", "status", "seconds", "detail"};
  bool all_pass = true;
  for (const auto& r : results) {
    table.add_row({std::to_string(r.id), r.name, r.pass ? "PASS" : "FAIL",
                   format_double(r.seconds), r.detail});
    all_pass = all_pass && r.pass;
  }
  write_output(table, s.opt);
  if (s.opt.out_path.empty() && s.opt.format == "pretty")
    std::cout << (all_pass ? "all criteria passed\n" : "FAILURES PRESENT\n");
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lah distribution toolkit: exact combinatorics, couplings, "
               "limit laws, and random-walk hull verification"};
  app.set_config("--config", "", "flat key=value defaults; argv overrides");
  CliState s;
  app.add_option("--format", s.opt.format, "output format")
      ->check(CLI::IsMember({"csv", "json", "pretty"}))
      ->capture_default_str();
  app.add_option("--out", s.opt.out_path,
                 "output file (default stdout; LAHKIT_OUT_DIR prefixes relative paths)");
  app.add_option("--seed", s.opt.seed, "base RNG seed")->capture_default_str();
  app.add_option("--threads", s.opt.threads, "worker count (never changes results)")
      ->capture_default_str();
  app.require_subcommand(1);

  // Dispatch table filled as the leaf subcommands are declared.
  std::vector<std::pair<CLI::App*, std::pair<std::string, int (*)(const CliState&)>>>
      dispatch;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  int (*runner)(const CliState&)) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->fallthrough();
    dispatch.push_back({sub, {name, runner}});
    return sub;
  };

  auto* exact = app.add_subcommand("exact", "exact combinatorial numbers");
  exact->fallthrough();
  exact->require_subcommand(1);
  for (const char* kind : {"stirling1", "stirling2", "lah", "binom", "harmonic"}) {
    auto* sub = leaf(exact, kind, "", run_exact);
    sub->add_option("--n", s.n_int)->required();
    if (std::string(kind) == "harmonic") sub->add_option("--m", s.m);
    else if (std::string(kind) == "stirling1" || std::string(kind) == "stirling2")
      sub->add_option("--j,--k", s.k)->required();
    else sub->add_option("--k", s.k)->required();
  }

  auto* dist = app.add_subcommand("dist", "exact Lah distribution queries");
  dist->fallthrough();
  dist->require_subcommand(1);
  for (const char* what : {"pmf", "cdf", "moments", "mode", "zeros"}) {
    auto* sub = leaf(dist, what, "", run_dist);
    sub->add_option("--n", s.n_int)->required();
    sub->add_option("--k", s.k)->required();
    if (std::string(what) == "zeros")
      sub->add_option("--precision", s.precision, "output precision bits");
  }

  auto* sample = app.add_subcommand("sample", "seeded Lah samplers");
  sample->fallthrough();
  sample->add_option("--n", s.n_int)->required();
  sample->add_option("--k", s.k)->required();
  sample->add_option("--method", s.method,
                     "records|bernoulli-blocks|polya (default O(n), label-free)")
      ->capture_default_str();
  sample->add_option("--trials", s.trials)->capture_default_str();
  dispatch.push_back({sample, {"sample", run_sample}});

  auto* asy = app.add_subcommand("asy", "limit laws and rate functions");
  asy->fallthrough();
  asy->require_subcommand(1);
  for (const char* what : {"psi", "phi", "rate", "cov", "thresholds", "curve-rate",
                           "curve-phi", "curve-sigma2"}) {
    auto* sub = leaf(asy, what, "", run_asy);
    sub->add_option("--alpha", s.alpha);
    sub->add_option("--beta", s.beta);
    sub->add_option("--t", s.t);
    sub->add_option("--k", s.k);
    sub->add_option("--z-re", s.z_re);
    sub->add_option("--z-im", s.z_im);
    sub->add_option("--M", s.cov_m);
    sub->add_option("--delta", s.delta);
    sub->add_option("--lo", s.lo);
    sub->add_option("--hi", s.hi);
    sub->add_option("--step", s.step);
  }

  auto* faces = app.add_subcommand("faces", "expected hull face numbers");
  faces->fallthrough();
  faces->require_subcommand(1);
  for (const char* what : {"expected", "defect", "regime", "conjecture", "conic"}) {
    auto* sub = leaf(faces, what, "", run_faces);
    sub->add_option("--n", s.n_long);
    sub->add_option("--d", s.d);
    sub->add_option("--k", s.k);
    sub->add_option("--d-max", s.d_max);
    sub->add_option("--n-extra", s.n_extra);
  }

  auto* simulate = app.add_subcommand("simulate", "random-walk hull Monte Carlo");
  simulate->fallthrough();
  simulate->add_option("--d", s.d)->required();
  simulate->add_option("--n", s.n_long)->required();
  simulate->add_option("--trials", s.trials)->capture_default_str();
  simulate->add_option("--law", s.law, "gaussian|cauchy")->capture_default_str();
  dispatch.push_back({simulate, {"simulate", run_simulate}});

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->fallthrough();
  dispatch.push_back({verify, {"verify", run_verify}});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    for (const auto& [sub, entry] : dispatch) {
      if (sub->parsed()) {
        s.leaf = entry.first;
        return entry.second(s);
      }
    }
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const lah::resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 2;
  } catch (const lah::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
