#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "lah/asymptotics.hpp"
#include "lah/conic.hpp"
#include "lah/distribution.hpp"
#include "lah/hull_model.hpp"
#include "lah/sampling.hpp"
#include "lah/walk.hpp"

namespace lah {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // first failure, or a one-line summary of what ran
  double seconds = 0;
};

namespace acceptance {

// Small check collector: records the first failure, keeps counting the rest.
struct Checker {
  bool ok = true;
  long checks = 0;
  std::string first_failure;

  void expect(bool condition, const std::string& what) {
    ++checks;
    if (!condition && ok) {
      ok = false;
      first_failure = what;
    }
  }
};

inline CriterionResult criterion_exact_identities() {
  Checker c;
  // Lah identity and both closed forms, n <= 30.
  for (int n = 1; n <= 30; ++n) {
    for (int k = 1; k <= n; ++k) {
      Int cross = 0;
      for (int j = k; j <= n; ++j)
        cross += stirling_first(n, j) * stirling_second(j, k);
      const Int lah = lah_number(n, k);
      c.expect(cross == lah, "sum s(n,j)S(j,k) != L(n,k) at n=" + std::to_string(n));
      c.expect(lah == factorial(n - 1) / factorial(k - 1) * binomial(n, k),
               "closed forms of L(n,k) disagree at n=" + std::to_string(n));
    }
  }
  // Normalization and the parity-1/2 identity.
  for (int n = 1; n <= 60; ++n) {
    for (int k = 1; k <= n; ++k) {
      const LahPmfTable table({n, k});
      c.expect(table.total() == 1, "pmf does not normalize at n=" + std::to_string(n));
      if (n > k) {
        const int even_top = n - (n % 2);
        c.expect(table.parity_mass(even_top) == Ratio(1, 2),
                 "even mass != 1/2 at n=" + std::to_string(n) + ",k=" + std::to_string(k));
      }
    }
  }
  // Moment cross-checks: the twin expectation sums and factorial moments p = 1,2,3.
  for (int n = 1; n <= 30; ++n) {
    for (int k = 1; k <= n; ++k) {
      const LahPmfTable table({n, k});
      Ratio mean_direct = 0;
      for (int j = k; j <= n; ++j) mean_direct += Ratio(j) * table.pmf(j);
      c.expect(lah_expectation({n, k}) == mean_direct,
               "expectation sums disagree with pmf at n=" + std::to_string(n));
      for (int p = 1; p <= 3; ++p) {
        Ratio direct = 0;
        for (int j = k; j <= n; ++j)
          direct += Ratio(binomial(j, p) * factorial(p)) * table.pmf(j);
        c.expect(lah_factorial_moment({n, k}, p) == direct,
                 "factorial moment p=" + std::to_string(p) + " mismatch at n=" +
                     std::to_string(n) + ",k=" + std::to_string(k));
      }
    }
  }
  // Integer zeros of the generating polynomial.
  for (int n = 2; n <= 40; ++n) {
    for (int k = 1; k < n; ++k) {
      for (int z = 1; z <= (n - 1) / k; ++z) {
        c.expect(gen_poly_eval({n, k}, Ratio(-z), GenPolyMethod::pmf_sum) == 0,
                 "P_{n,k}(-z) != 0 at n=" + std::to_string(n) + ",k=" +
                     std::to_string(k) + ",z=" + std::to_string(z));
      }
    }
  }
  return {1, "exact identity suite", c.ok,
          c.ok ? std::to_string(c.checks) + " exact identities" : c.first_failure};
}

inline CriterionResult criterion_samplers() {
  Checker c;
  const long trials = 100000;
  struct Case {
    int n, k;
  };
  for (const Case nk : {Case{12, 3}, Case{12, 8}, Case{20, 1}}) {
    const LahPmfTable table({nk.n, nk.k});
    for (const auto method :
         {LahSampler::records, LahSampler::bernoulli_blocks, LahSampler::polya}) {
      std::vector<long> hits(nk.n + 1, 0);
      for (long t = 0; t < trials; ++t) {
        Rng rng({2024, static_cast<std::uint64_t>(t)});
        ++hits[sample_lah(nk.n, nk.k, method, rng)];
      }
      double tv = 0;
      for (int j = nk.k; j <= nk.n; ++j)
        tv += std::abs(static_cast<double>(hits[j]) / trials - to_double(table.pmf(j)));
      tv /= 2;
      std::ostringstream what;
      what << "TV=" << tv << " at (" << nk.n << "," << nk.k << ") method "
           << static_cast<int>(method);
      c.expect(tv < 0.01, what.str());
    }
  }
  // Aldous coupling monotonicity in k, every realization.
  for (long rep = 0; rep < 2000; ++rep) {
    Rng rng({77, static_cast<std::uint64_t>(rep)});
    const auto family = sample_aldous_family(24, rng);
    int prev = 0;
    for (int k = 1; k <= 24; ++k) {
      const int records = family.records_row(k);
      c.expect(records >= prev, "Aldous X_{n,k} decreased in k at rep " +
                                    std::to_string(rep));
      prev = records;
    }
  }
  // Urn-path monotonicity in n, every realization.
  for (long rep = 0; rep < 2000; ++rep) {
    Rng rng({78, static_cast<std::uint64_t>(rep)});
    const auto path = polya_urn_path(200, 5, rng);
    c.expect(path.front() == 5, "urn path must start at k");
    for (size_t i = 1; i < path.size(); ++i)
      c.expect(path[i] >= path[i - 1], "urn path decreased at rep " + std::to_string(rep));
  }
  return {2, "coupling/sampler suite", c.ok,
          c.ok ? std::to_string(c.checks) + " sampler checks" : c.first_failure};
}

inline CriterionResult criterion_thresholds() {
  Checker c;
  const double weak = weak_threshold_rho(0.5);
  const double strong = strong_threshold_rho(0.5);
  c.expect(std::abs(weak - 0.5693) < 5e-4, "rho_weak(1/2) off: " + std::to_string(weak));
  c.expect(std::abs(strong - 0.1498) < 5e-4,
           "rho_strong(1/2) off: " + std::to_string(strong));
  c.expect(std::abs(h_function(weak * 0.5) - 0.5) < 1e-10,
           "weak threshold residual exceeds 1e-10");
  c.expect(std::abs(detail::strong_threshold_lhs(strong) -
                    detail::strong_threshold_rhs(0.5)) < 1e-10,
           "strong threshold residual exceeds 1e-10");
  for (double delta = 0.1; delta < 0.95; delta += 0.1) {
    const auto point = threshold_point(delta);
    c.expect(point.rho_strong < point.rho_weak,
             "rho_strong >= rho_weak at delta=" + std::to_string(delta));
    c.expect(point.rho_strong > 0 && point.rho_weak < 1,
             "threshold out of (0,1) at delta=" + std::to_string(delta));
  }
  return {3, "neighborliness thresholds", c.ok,
          c.ok ? "rho_weak=" + std::to_string(weak) + " rho_strong=" + std::to_string(strong)
               : c.first_failure};
}

inline CriterionResult criterion_rate_function() {
  Checker c;
  for (double alpha : {0.2, 0.5}) {
    c.expect(std::abs(rate_function(alpha, h_function(alpha), RateMethod::closed)) <
                 1e-10,
             "I(h(alpha)) != 0 at alpha=" + std::to_string(alpha));
    for (double beta = alpha + 0.05; beta < 0.95; beta += 0.05) {
      const double gap = std::abs(rate_function(alpha, beta, RateMethod::closed) -
                                  rate_function(alpha, beta, RateMethod::legendre));
      c.expect(gap < 1e-8, "closed vs legendre gap " + std::to_string(gap) +
                               " at beta=" + std::to_string(beta));
    }
    // Convexity on a 200-point grid over [alpha, 1].
    const int grid = 200;
    std::vector<double> values(grid + 1);
    for (int i = 0; i <= grid; ++i)
      values[i] = rate_function(alpha, alpha + (1 - alpha) * i / grid, RateMethod::closed);
    for (int i = 1; i < grid; ++i)
      c.expect(values[i + 1] - 2 * values[i] + values[i - 1] > -1e-8,
               "convexity defect at alpha=" + std::to_string(alpha));
  }
  for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    c.expect(std::abs(phi_alpha(alpha, 0.0)) < 1e-12, "phi(0) != 0");
    c.expect(std::abs(saddle_root(alpha, 0.0).r - (1 - alpha)) < 1e-12,
             "r(0) != 1 - alpha");
    const double step = 1e-5;
    const double d1 = (phi_alpha(alpha, step) - phi_alpha(alpha, -step)) / (2 * step);
    c.expect(std::abs(d1 - h_function(alpha)) < 1e-5, "phi'(0) != h(alpha)");
    const double wide = 1e-4;
    const double d2 =
        (phi_alpha(alpha, wide) - 2 * phi_alpha(alpha, 0.0) + phi_alpha(alpha, -wide)) /
        (wide * wide);
    c.expect(std::abs(d2 - central_clt_params(alpha).variance) < 1e-5,
             "phi''(0) != sigma^2(alpha)");
  }
  // Variance argmax at 0.23517.
  double lo = 0.05, hi = 0.6;
  while (hi - lo > 1e-10) {
    const double x1 = hi - 0.61803398875 * (hi - lo);
    const double x2 = lo + 0.61803398875 * (hi - lo);
    if (central_clt_params(x1).variance < central_clt_params(x2).variance) lo = x1;
    else hi = x2;
  }
  c.expect(std::abs(0.5 * (lo + hi) - 0.23517) < 1e-4,
           "sigma^2 argmax off: " + std::to_string(0.5 * (lo + hi)));
  return {4, "central-regime rate function", c.ok,
          c.ok ? std::to_string(c.checks) + " rate-function checks" : c.first_failure};
}

inline CriterionResult criterion_limit_laws() {
  Checker c;
  // Local limit: sup-norm x sqrt(log n) decreasing at k = 2, exact centering.
  double previous = std::numeric_limits<double>::infinity();
  for (int n : {100, 300, 1000}) {
    const LahPmfTable table({n, 2});
    const auto params = local_limit_params(n, 2, Centering::exact);
    double sup = 0;
    for (int j = 2; j <= n; ++j)
      sup = std::max(sup, std::abs(to_double(table.pmf(j)) - gaussian_density(j, params)));
    const double scaled = sup * std::sqrt(std::log(static_cast<double>(n)));
    c.expect(scaled < previous,
             "local-limit sup norm not decreasing at n=" + std::to_string(n));
    previous = scaled;
  }
  // Mod-Poisson ratio error shrinking from n = 500 to n = 4000 at k = 2.
  const std::vector<double> zs = {0.2, 0.4};
  const auto mgf_small = lah_log_mgf_multi(500, 2, zs);
  const auto mgf_large = lah_log_mgf_multi(4000, 2, zs);
  for (size_t i = 0; i < zs.size(); ++i) {
    const double z = zs[i];
    const double limit = mod_poisson_psi(2, {z, 0}).real();
    auto ratio = [&](double log_mgf, int n) {
      return std::exp(log_mgf -
                      2 * std::log(static_cast<double>(n)) * (std::exp(z) - 1));
    };
    const double err_small = std::abs(ratio(mgf_small[i], 500) - limit);
    const double err_large = std::abs(ratio(mgf_large[i], 4000) - limit);
    c.expect(err_large < err_small,
             "mod-Poisson error not shrinking at z=" + std::to_string(z));
  }
  // Scaled cumulant of the exact law vs phi at n = 400, alpha = 1/2, t = 1/2.
  const double mgf_rate = lah_log_mgf(400, 200, 0.5) / 400;
  c.expect(std::abs(mgf_rate - phi_alpha(0.5, 0.5)) < 0.03,
           "(1/n) log mgf vs phi gap " +
               std::to_string(std::abs(mgf_rate - phi_alpha(0.5, 0.5))));
  // Precise LDP: exact point probability within [0.5, 2] of the formula at
  // n = 1e4, k = 2, x ~ 2 (nearest lattice point of k x log n).
  const int deep_n = 10000;
  const double log_n = std::log(static_cast<double>(deep_n));
  const int m = static_cast<int>(std::lround(2 * 2 * log_n));
  const double x_lattice = m / (2 * log_n);
  const int old_cap = triangle_row_cap().load();
  set_triangle_row_cap(deep_n);
  const Int s_exact = stirling_first_row_prefix(deep_n, m)[m];
  set_triangle_row_cap(old_cap);
  const double log_pmf = log_int(s_exact) + log_int(stirling_second(m, 2)) -
                         (std::lgamma(static_cast<double>(deep_n) + 1) -
                          std::log(2.0) + std::log(static_cast<double>(deep_n) - 1));
  const double ratio =
      std::exp(log_pmf) / ldp_constant_k(deep_n, 2, x_lattice, LdpTail::point);
  c.expect(ratio > 0.5 && ratio < 2.0,
           "LDP point ratio " + std::to_string(ratio) + " outside [0.5,2]");
  return {5, "desk-scale limit laws", c.ok,
          c.ok ? std::to_string(c.checks) + " limit-law checks" : c.first_failure};
}

inline CriterionResult criterion_composition_covariance() {
  Checker c;
  for (double alpha : {0.3, 0.5, 0.7}) {
    const auto direct = composition_cov(alpha, 40);
    const auto conditioned = composition_cov_conditioned(alpha, 40);
    double max_gap = 0;
    for (int i = 0; i < 40; ++i)
      for (int j = 0; j < 40; ++j)
        max_gap = std::max(max_gap, std::abs(direct(i, j) - conditioned(i, j)));
    c.expect(max_gap < 1e-10, "Schur-complement gap " + std::to_string(max_gap) +
                                  " at alpha=" + std::to_string(alpha));
  }
  // Empirical covariance of (N_j - E N_j)/sqrt(k) at (n,k) = (2000,1000).
  const long n = 2000;
  const int k = 1000;
  const int top = 8;
  const long trials = 100000;
  std::vector<double> exact_mean(top + 1);
  for (int j = 1; j <= top; ++j)
    exact_mean[j] = k * to_double(b1_marginal(n, k, j));
  std::vector<std::vector<double>> x(trials, std::vector<double>(top + 1, 0.0));
  const double sqrt_k = std::sqrt(static_cast<double>(k));
  for (long t = 0; t < trials; ++t) {
    Rng rng({909, static_cast<std::uint64_t>(t)});
    const auto counts = block_counts(sample_composition(n, k, rng), top);
    for (int j = 1; j <= top; ++j)
      x[t][j] = (counts[j - 1] - exact_mean[j]) / sqrt_k;
  }
  const auto limit = composition_cov(0.5, top);
  for (int i = 1; i <= top; ++i) {
    for (int j = i; j <= top; ++j) {
      double mean_i = 0, mean_j = 0, mean_prod = 0;
      for (long t = 0; t < trials; ++t) {
        mean_i += x[t][i];
        mean_j += x[t][j];
        mean_prod += x[t][i] * x[t][j];
      }
      mean_i /= trials;
      mean_j /= trials;
      const double cov = mean_prod / trials - mean_i * mean_j;
      double var_prod = 0;
      for (long t = 0; t < trials; ++t) {
        const double dev = (x[t][i] - mean_i) * (x[t][j] - mean_j) - cov;
        var_prod += dev * dev;
      }
      const double sigma = std::sqrt(var_prod / trials / trials);
      c.expect(std::abs(cov - limit(i - 1, j - 1)) < 3 * sigma,
               "covariance entry (" + std::to_string(i) + "," + std::to_string(j) +
                   ") off by more than 3 sigma");
    }
  }
  return {6, "composition covariance", c.ok,
          c.ok ? std::to_string(c.checks) + " covariance checks" : c.first_failure};
}

inline CriterionResult criterion_hull_monte_carlo() {
  Checker c;
  struct Case {
    int d;
    long n;
  };
  for (const Case cfg_case : {Case{2, 10}, Case{3, 5}, Case{3, 8}, Case{4, 8}}) {
    WalkConfig cfg;
    cfg.d = cfg_case.d;
    cfg.n = cfg_case.n;
    cfg.trials = 2000;
    cfg.seed = 31337;
    cfg.threads = 4;
    const auto report = monte_carlo_report(cfg);
    std::ostringstream what;
    what << "z=" << report.faces[0].z << " at d=" << cfg.d << ", n=" << cfg.n;
    c.expect(std::abs(report.faces[0].z) < 3.0, what.str());
    c.expect(report.resampled == 0,
             "degenerate resamples at d=" + std::to_string(cfg.d));
  }
  // Exact-formula identities for n <= 40.
  for (long n = 3; n <= 40; ++n) {
    c.expect(expected_faces({n, 2, 1}) == expected_faces({n, 2, 2}),
             "E f0 != E f1 at d=2, n=" + std::to_string(n));
    const Ratio f0 = expected_faces({n, 3, 1});
    const Ratio f1 = expected_faces({n, 3, 2});
    const Ratio f2 = expected_faces({n, 3, 3});
    c.expect(f0 - f1 + f2 == 2, "Euler identity fails at n=" + std::to_string(n));
    c.expect(2 * f1 == 3 * f2, "simplicial identity fails at n=" + std::to_string(n));
  }
  return {7, "hull Monte Carlo verification", c.ok,
          c.ok ? std::to_string(c.checks) + " hull checks" : c.first_failure};
}

inline CriterionResult criterion_conjecture_sweep() {
  const auto report = check_monotonicity_conjecture(20, 60);
  std::string detail = "no counterexample for d <= 20, n <= k+60";
  if (!report.ok && report.counterexample) {
    const auto& ce = *report.counterexample;
    detail = ce.what + " at d=" + std::to_string(ce.d) + ", k=" + std::to_string(ce.k) +
             ", n=" + std::to_string(ce.n);
  }
  return {8, "monotonicity conjecture sweep", report.ok, detail};
}

inline CriterionResult criterion_conic_identity() {
  Checker c;
  for (int n = 1; n <= 12; ++n) {
    for (int k = 1; k <= n; ++k) {
      for (int j = k; j <= n; ++j) {
        const Ratio expected = Ratio(
            factorial(k) * stirling_first(n, j) * stirling_second(j, k), factorial(n));
        c.expect(conic_face_volume_sum(n, k, j) == expected,
                 "conic identity fails at (" + std::to_string(n) + "," +
                     std::to_string(k) + "," + std::to_string(j) + ")");
      }
    }
  }
  return {9, "conic intrinsic-volume identity", c.ok,
          c.ok ? std::to_string(c.checks) + " conic identities" : c.first_failure};
}

}  // namespace acceptance

// Runs all acceptance criteria; each result carries pass/fail and timing.
inline std::vector<CriterionResult> run_acceptance() {
  using Runner = CriterionResult (*)();
  const Runner runners[] = {
      acceptance::criterion_exact_identities, acceptance::criterion_samplers,
      acceptance::criterion_thresholds,       acceptance::criterion_rate_function,
      acceptance::criterion_limit_laws,       acceptance::criterion_composition_covariance,
      acceptance::criterion_hull_monte_carlo, acceptance::criterion_conjecture_sweep,
      acceptance::criterion_conic_identity};
  std::vector<CriterionResult> results;
  for (const Runner runner : runners) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult result = runner();
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace lah
