#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "lah/geometry.hpp"
#include "lah/hull_model.hpp"
#include "lah/rng.hpp"

namespace lah {

enum class IncrementLaw { gaussian, cauchy_isotropic };

inline const char* increment_law_name(IncrementLaw law) {
  return law == IncrementLaw::gaussian ? "gaussian" : "cauchy_isotropic";
}

// Configuration of one Monte Carlo verification run. Results are a pure
// function of (d, n, law, trials, seed); threads only changes the wall time.
struct WalkConfig {
  int d = 2;
  long n = 10;
  IncrementLaw law = IncrementLaw::gaussian;
  long trials = 2000;
  std::uint64_t seed = 0;
  int threads = 1;
};

// One walk S_0 = 0, S_i = xi_1 + ... + xi_i. Deterministic given
// (seed, trial): the trial index is the RNG stream id.
inline std::vector<PointXd> simulate_walk(const WalkConfig& cfg, Rng& rng) {
  std::vector<PointXd> points(cfg.n + 1, PointXd(cfg.d, 0.0));
  for (long i = 1; i <= cfg.n; ++i) {
    PointXd step(cfg.d);
    for (int c = 0; c < cfg.d; ++c) step[c] = rng.next_normal();
    if (cfg.law == IncrementLaw::cauchy_isotropic) {
      // Isotropic Cauchy: Gaussian direction over an independent |N(0,1)|.
      double denom = 0;
      while (denom == 0) denom = std::abs(rng.next_normal());
      for (int c = 0; c < cfg.d; ++c) step[c] /= denom;
    }
    for (int c = 0; c < cfg.d; ++c) points[i][c] = points[i - 1][c] + step[c];
  }
  return points;
}

inline std::vector<PointXd> simulate_walk(const WalkConfig& cfg, long trial) {
  Rng rng({cfg.seed, static_cast<std::uint64_t>(trial)});
  return simulate_walk(cfg, rng);
}

struct FaceStat {
  int k = 1;               // faces of dimension k-1
  double mean = 0;
  double se = 0;
  std::string exact;       // exact expectation as "p/q"
  double exact_float = 0;
  double z = 0;
};

struct MonteCarloReport {
  WalkConfig config;
  std::vector<FaceStat> faces;
  long resampled = 0;  // trials redrawn after hitting a degenerate configuration
};

namespace detail {

struct TrialCounts {
  std::array<long, 3> f{0, 0, 0};
  long resamples = 0;
};

inline TrialCounts run_trial(const WalkConfig& cfg, long trial) {
  Rng rng({cfg.seed, static_cast<std::uint64_t>(trial)});
  TrialCounts counts;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const auto points = simulate_walk(cfg, rng);
    try {
      if (cfg.d == 2) {
        const auto faces = hull_faces_2d(points);
        counts.f = {faces.f0, faces.f1, 0};
      } else if (cfg.d == 3) {
        const auto faces = hull_faces_3d(points);
        counts.f = {faces.f0, faces.f1, faces.f2};
      } else {
        counts.f = {vertex_count_lp(points, cfg.d), 0, 0};
      }
      return counts;
    } catch (const degenerate_error&) {
      ++counts.resamples;  // probability-zero event in theory; redraw the walk
    }
  }
  throw numerical_error("run_trial: persistent degeneracy, check the configuration");
}

}  // namespace detail

// Runs the trials (optionally chunked over threads, per-trial streams keep
// the result identical for any worker count), aggregates f-vector means and
// standard errors, and attaches the exact formula values with z-scores.
inline MonteCarloReport monte_carlo_report(const WalkConfig& cfg) {
  if (cfg.d < 2) throw std::domain_error("monte_carlo_report: need d >= 2");
  if (cfg.n < cfg.d) throw std::domain_error("monte_carlo_report: need n >= d");
  if (cfg.trials < 2) throw std::domain_error("monte_carlo_report: need trials >= 2");
  std::vector<detail::TrialCounts> per_trial(cfg.trials);
  const int workers = std::max(1, cfg.threads);
  if (workers == 1) {
    for (long t = 0; t < cfg.trials; ++t) per_trial[t] = detail::run_trial(cfg, t);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (long t = w; t < cfg.trials; t += workers)
            per_trial[t] = detail::run_trial(cfg, t);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  MonteCarloReport report;
  report.config = cfg;
  const int face_dims = cfg.d <= 3 ? cfg.d : 1;
  for (int k = 1; k <= face_dims; ++k) {
    double sum = 0, sum_sq = 0;
    for (const auto& counts : per_trial) {
      const double v = static_cast<double>(counts.f[k - 1]);
      sum += v;
      sum_sq += v * v;
    }
    FaceStat stat;
    stat.k = k;
    stat.mean = sum / cfg.trials;
    const double variance =
        std::max(0.0, (sum_sq / cfg.trials - stat.mean * stat.mean)) *
        cfg.trials / (cfg.trials - 1.0);
    stat.se = std::sqrt(variance / cfg.trials);
    const Ratio exact = expected_faces({cfg.n, cfg.d, k});
    stat.exact = to_fraction(exact);
    stat.exact_float = to_double(exact);
    stat.z = stat.se > 0 ? (stat.mean - stat.exact_float) / stat.se : 0.0;
    report.faces.push_back(stat);
  }
  for (const auto& counts : per_trial) report.resampled += counts.resamples;
  return report;
}

}  // namespace lah
