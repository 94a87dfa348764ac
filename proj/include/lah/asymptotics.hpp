#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "lah/combinatorics.hpp"
#include "lah/distribution.hpp"
#include "lah/exact.hpp"
#include "lah/special.hpp"

namespace lah {

// ---------------------------------------------------------------------------
// Constant-k regime: mod-Poisson limit, local limit, precise large deviations.
// ---------------------------------------------------------------------------

// Mod-Poisson limit function Psi(z) = Gamma(k)/Gamma(k e^z) on the domain
// cos(Im z) > 0 (where the leading Gamma-sum term dominates).
inline std::complex<double> mod_poisson_psi(int k, std::complex<double> z) {
  if (k < 1) throw std::domain_error("mod_poisson_psi: k must be >= 1");
  if (std::cos(z.imag()) <= 0)
    throw std::domain_error("mod_poisson_psi: z outside the domain cos(Im z) > 0");
  const std::complex<double> kez = static_cast<double>(k) * std::exp(z);
  return std::exp(std::complex<double>(log_gamma(static_cast<double>(k)), 0.0) -
                  log_gamma(kez));
}

// log E e^{t Lah(n,k)} from the exact pmf (big-integer rows converted to
// logs, then a log-sum-exp), for a batch of t values so the expensive row
// is computed once. The finite-n oracle behind the mod-Poisson and cumulant
// desk checks.
inline std::vector<double> lah_log_mgf_multi(int n, int k,
                                             const std::vector<double>& ts) {
  const std::vector<Int> first_row = stirling_first_row(n);
  const std::vector<Int> second_col = stirling_second_column(n, k);
  const double log_lah = log_int(lah_number(n, k));
  std::vector<double> log_pmf(n + 1, -std::numeric_limits<double>::infinity());
  for (int j = k; j <= n; ++j) {
    if (first_row[j] == 0 || second_col[j] == 0) continue;
    log_pmf[j] = log_int(first_row[j]) + log_int(second_col[j]) - log_lah;
  }
  std::vector<double> out;
  out.reserve(ts.size());
  for (const double t : ts) {
    double peak = -std::numeric_limits<double>::infinity();
    for (int j = k; j <= n; ++j)
      if (std::isfinite(log_pmf[j])) peak = std::max(peak, t * j + log_pmf[j]);
    double acc = 0;
    for (int j = k; j <= n; ++j)
      if (std::isfinite(log_pmf[j])) acc += std::exp(t * j + log_pmf[j] - peak);
    out.push_back(peak + std::log(acc));
  }
  return out;
}

inline double lah_log_mgf(int n, int k, double t) {
  return lah_log_mgf_multi(n, k, {t})[0];
}

// Finite-n mod-Poisson ratio E e^{z X} / e^{k log n (e^z - 1)} for real z.
inline double mod_poisson_finite_ratio(int n, int k, double z) {
  const double log_poisson = k * std::log(static_cast<double>(n)) * (std::exp(z) - 1);
  return std::exp(lah_log_mgf(n, k, z) - log_poisson);
}

enum class Centering { asymptotic, exact };

struct LocalLimitParams {
  double mean;
  double variance;
};

inline LocalLimitParams local_limit_params(int n, int k, Centering centering) {
  if (n <= k) throw std::domain_error("local_limit_params: need n > k");
  if (centering == Centering::asymptotic) {
    const double kl = k * std::log(static_cast<double>(n));
    return {kl, kl};
  }
  const LahParams p{n, k};
  return {to_double(lah_expectation(p)), to_double(lah_variance(p))};
}

inline double gaussian_density(double m, const LocalLimitParams& params) {
  const double dev = m - params.mean;
  return std::exp(-dev * dev / (2 * params.variance)) /
         std::sqrt(6.283185307179586476925286766559 * params.variance);
}

// Local-limit approximant of P[Lah(n,k) = m].
inline double local_limit_density(int n, int k, int m, Centering centering) {
  return gaussian_density(static_cast<double>(m), local_limit_params(n, k, centering));
}

enum class LdpTail { point, upper, lower };

// Precise large-deviation asymptotics at the lattice point k x log n:
//   point: n^{-k(x log x - x + 1)} (2 pi k x log n)^{-1/2} Gamma(k)/Gamma(kx),
// with tail factors x/(x-1) (upper, x > 1) and 1/(1-x) (lower, x < 1).
// Off-lattice targets are evaluated at the given x; callers that compare with
// exact probabilities should pass x = m/(k log n) for an integer m.
inline double ldp_constant_k(int n, int k, double x, LdpTail tail) {
  if (x <= 0) throw std::domain_error("ldp_constant_k: x must be positive");
  if (tail == LdpTail::upper && x <= 1)
    throw std::domain_error("ldp_constant_k: upper tail requires x > 1");
  if (tail == LdpTail::lower && x >= 1)
    throw std::domain_error("ldp_constant_k: lower tail requires x < 1");
  const double log_n = std::log(static_cast<double>(n));
  const double exponent = -k * (x * std::log(x) - x + 1) * log_n;
  double value = std::exp(exponent + log_gamma(static_cast<double>(k)) -
                          log_gamma(k * x)) /
                 std::sqrt(6.283185307179586476925286766559 * k * x * log_n);
  if (tail == LdpTail::upper) value *= x / (x - 1);
  if (tail == LdpTail::lower) value *= 1 / (1 - x);
  return value;
}

// ---------------------------------------------------------------------------
// Expectation asymptotics.
// ---------------------------------------------------------------------------

// Leading-order E Lah(n,k): k log(n/k) for k/n < 0.01, n h(k/n) in the
// central band, n when k/n >= 0.99. The band edges are implementation
// choices; pass an explicit regime via the tag overload to bypass them.
enum class ExpectationRegime { small_k, central, diagonal };

inline double expectation_asymptotic(long n, long k, ExpectationRegime regime) {
  switch (regime) {
    case ExpectationRegime::small_k:
      return k * std::log(static_cast<double>(n) / k);
    case ExpectationRegime::central:
      return n * h_function(static_cast<double>(k) / n);
    case ExpectationRegime::diagonal:
      return static_cast<double>(n);
  }
  throw std::logic_error("expectation_asymptotic: unknown regime");
}

inline double expectation_asymptotic(long n, long k) {
  if (n < 1 || k < 1 || k > n)
    throw std::domain_error("expectation_asymptotic: need 1 <= k <= n");
  const double alpha = static_cast<double>(k) / n;
  if (alpha < 0.01) return expectation_asymptotic(n, k, ExpectationRegime::small_k);
  if (alpha < 0.99) return expectation_asymptotic(n, k, ExpectationRegime::central);
  return expectation_asymptotic(n, k, ExpectationRegime::diagonal);
}

// Float evaluation of the exact binomial sum for E Lah(n,k); usable far
// beyond the big-rational range (the ratio of binomials telescopes).
inline double expectation_exact_float(long n, long k) {
  if (n < 1 || k < 1 || k > n)
    throw std::domain_error("expectation_exact_float: need 1 <= k <= n");
  double ratio = 1.0;  // binom(n-i,k-1)/binom(n-1,k-1) at i = 1
  double sum = 0.0;
  for (long i = 1; i <= n - k + 1; ++i) {
    sum += ratio / i;
    ratio *= static_cast<double>(n - i - k + 1) / (n - i);
    if (ratio == 0.0) break;
  }
  return k * sum;
}

// ---------------------------------------------------------------------------
// Central regime: cumulant limit, CLT parameters, LDP rate function.
// ---------------------------------------------------------------------------

struct SaddleRoot {
  double t;
  double r;  // in (0,1); solves (1-r)^{e^t+1} - 1 + r(1 + alpha e^t) = 0
};

namespace detail {

// Stable rewrite of the saddle equation:
//   (1-r)^{E+1} - 1 + r(1+aE)  ==  (1-r) expm1(E log1p(-r)) + a E r,  E = e^t.
// Strictly convex in r with a simple interior zero.
inline double saddle_equation(double alpha, double expt, double r) {
  return (1 - r) * std::expm1(expt * std::log1p(-r)) + alpha * expt * r;
}

}  // namespace detail

inline SaddleRoot saddle_root(double alpha, double t) {
  if (alpha <= 0 || alpha >= 1)
    throw std::domain_error("saddle_root: alpha must lie in (0,1)");
  const double expt = std::exp(t);
  double lo = 1e-300, hi = 1 - 1e-16;
  if (!(detail::saddle_equation(alpha, expt, lo) < 0) ||
      !(detail::saddle_equation(alpha, expt, hi) > 0))
    throw numerical_error("saddle_root: bracket failed");
  for (int iter = 0; iter < 200 && hi - lo > 1e-18 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (detail::saddle_equation(alpha, expt, mid) < 0) lo = mid;
    else hi = mid;
  }
  return {t, 0.5 * (lo + hi)};
}

// varphi_alpha(t) = lim (1/n) log E e^{t Lah(n, alpha n)}.
inline double phi_alpha(double alpha, double t) {
  const SaddleRoot root = saddle_root(alpha, t);
  const double log_one_minus_r = std::log1p(-root.r);
  return 2 * alpha * std::log(alpha) + (1 - alpha) * std::log1p(-alpha) +
         (alpha - 1) * std::log(root.r) + alpha * t -
         alpha * (std::exp(t) + 1) * log_one_minus_r;
}

struct CltParams {
  double drift;     // h(alpha)
  double variance;  // sigma^2(alpha)
};

inline CltParams central_clt_params(double alpha) {
  if (alpha <= 0 || alpha >= 1)
    throw std::domain_error("central_clt_params: alpha must lie in (0,1)");
  const double la = std::log(alpha);
  const double om = 1 - alpha;
  const double variance =
      -(alpha / om + alpha * (alpha + 1) * la / (om * om) +
        alpha * alpha * la * la / (om * om * om));
  return {h_function(alpha), variance};
}

enum class RateMethod { closed, legendre };

namespace detail {

// Closed form of the rate function on the open interval alpha < beta < 1.
inline double rate_closed_interior(double alpha, double beta) {
  const double w = h_inverse(beta / alpha);  // > 1
  const double v = h_inverse(beta);          // < 1
  return -alpha * std::log(w - 1) + std::log1p(-v) +
         beta * std::log(-std::log(w) / std::log(v)) - alpha * std::log(alpha) -
         (1 - alpha) * std::log1p(-alpha);
}

inline double rate_boundary_alpha(double alpha) {
  const double v = h_inverse(alpha);
  return std::log1p(-v) - alpha * std::log(-std::log(v)) -
         alpha * std::log(alpha) - (1 - alpha) * std::log1p(-alpha);
}

inline double rate_boundary_one(double alpha) {
  const double w = h_inverse(1 / alpha);
  return -alpha * std::log(w - 1) + std::log(std::log(w)) -
         alpha * std::log(alpha) - (1 - alpha) * std::log1p(-alpha);
}

}  // namespace detail

// LDP rate function I_alpha(beta) for Lah(n, alpha n)/n. +infinity below
// alpha; closed form or a Legendre-Fenchel maximization of beta t - phi(t).
inline double rate_function(double alpha, double beta, RateMethod method) {
  if (alpha <= 0 || alpha >= 1)
    throw std::domain_error("rate_function: alpha must lie in (0,1)");
  if (beta > 1 + 1e-12)
    throw std::domain_error("rate_function: beta must lie in [0,1]");
  if (beta < alpha) return std::numeric_limits<double>::infinity();
  // The boundary values are limits (the Legendre sup is approached only as
  // t -> -+inf there), so both methods report the closed boundary formulas.
  if (beta == alpha) return detail::rate_boundary_alpha(alpha);
  if (beta >= 1) return detail::rate_boundary_one(alpha);
  if (method == RateMethod::closed) return detail::rate_closed_interior(alpha, beta);
  // t -> beta t - phi_alpha(t) is concave; golden-section search with window
  // expansion on boundary hits.
  double lo = -40, hi = 40;
  auto objective = [&](double t) { return beta * t - phi_alpha(alpha, t); };
  const double gr = 0.61803398874989484820458683436564;
  for (int expand = 0; expand < 8; ++expand) {
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = objective(x1), f2 = objective(x2);
    while (b - a > 1e-9) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = objective(x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = objective(x1);
      }
    }
    const double t_star = 0.5 * (a + b);
    if (t_star > lo + 1e-3 && t_star < hi - 1e-3) return objective(t_star);
    lo *= 2;
    hi *= 2;
  }
  throw numerical_error("rate_function: Legendre maximizer escaped the search window");
}

// ---------------------------------------------------------------------------
// Block-count CLT covariance (two routes) and Stirling log-asymptotics.
// ---------------------------------------------------------------------------

struct CovMatrix {
  int size = 0;
  std::vector<double> data;  // row-major, symmetric

  double operator()(int i, int j) const { return data[i * size + j]; }
  double& at(int i, int j) { return data[i * size + j]; }
};

// Limit covariance of the normalized block counts (N_j - E N_j)/sqrt(k):
// Cov(i,j) = p_i 1{i=j} - p_i p_j - p_i p_j (alpha i - 1)(alpha j - 1)/(1-alpha)
// with p_j = alpha (1-alpha)^{j-1}.
inline CovMatrix composition_cov(double alpha, int m) {
  if (alpha <= 0 || alpha >= 1)
    throw std::domain_error("composition_cov: alpha must lie in (0,1)");
  if (m < 1) throw std::domain_error("composition_cov: M must be >= 1");
  CovMatrix cov;
  cov.size = m;
  cov.data.assign(static_cast<size_t>(m) * m, 0.0);
  std::vector<double> p(m + 1);
  for (int j = 1; j <= m; ++j) p[j] = alpha * std::pow(1 - alpha, j - 1);
  for (int i = 1; i <= m; ++i) {
    for (int j = i; j <= m; ++j) {
      double value = -p[i] * p[j] -
                     p[i] * p[j] * (alpha * i - 1) * (alpha * j - 1) / (1 - alpha);
      if (i == j) value += p[i];
      cov.at(i - 1, j - 1) = value;
      cov.at(j - 1, i - 1) = value;
    }
  }
  return cov;
}

// Independent route: independent Gaussians G_j with Var G_j = p_j conditioned
// on {sum G_j = 0, sum j G_j = 0}. The geometric moments are summed to
// numerical convergence, then the 2x2 Schur complement is applied entrywise.
inline CovMatrix composition_cov_conditioned(double alpha, int m) {
  if (alpha <= 0 || alpha >= 1)
    throw std::domain_error("composition_cov_conditioned: alpha must lie in (0,1)");
  if (m < 1) throw std::domain_error("composition_cov_conditioned: M must be >= 1");
  double m0 = 0, m1 = 0, m2 = 0;
  double pj = alpha;
  for (int j = 1; j < 100000; ++j) {
    m0 += pj;
    m1 += static_cast<double>(j) * pj;
    m2 += static_cast<double>(j) * j * pj;
    if (static_cast<double>(j) * j * pj < 1e-25 && j > m) break;
    pj *= 1 - alpha;
  }
  const double det = m0 * m2 - m1 * m1;
  // Inverse of [[m0, m1], [m1, m2]].
  const double inv00 = m2 / det, inv01 = -m1 / det, inv11 = m0 / det;
  CovMatrix cov;
  cov.size = m;
  cov.data.assign(static_cast<size_t>(m) * m, 0.0);
  std::vector<double> p(m + 1);
  for (int j = 1; j <= m; ++j) p[j] = alpha * std::pow(1 - alpha, j - 1);
  for (int i = 1; i <= m; ++i) {
    for (int j = i; j <= m; ++j) {
      const double quad = inv00 + inv01 * (i + j) + inv11 * i * j;
      double value = -p[i] * p[j] * quad;
      if (i == j) value += p[i];
      cov.at(i - 1, j - 1) = value;
      cov.at(j - 1, i - 1) = value;
    }
  }
  return cov;
}

enum class StirlingKind { first, second };

// Central-regime limits of (1/n) log((k!/n!) s(n,k)) and
// (1/n) log((k!/n!) S(n,k)) at k ~ alpha n, in terms of h^{-1}.
inline double stirling_log_asymptotic(StirlingKind kind, double alpha) {
  if (alpha <= 0 || alpha >= 1)
    throw std::domain_error("stirling_log_asymptotic: alpha must lie in (0,1)");
  if (kind == StirlingKind::first) {
    const double v = h_inverse(alpha);  // < 1
    return -std::log1p(-v) + alpha * std::log(-std::log(v));
  }
  const double w = h_inverse(1 / alpha);  // > 1
  return alpha * std::log(w - 1) - std::log(std::log(w));
}

// Rate function reassembled from the two Stirling limits plus the binomial
// entropy, an internal cross-check of the closed form: the pointwise
// exponential rate of P[Lah(n, alpha n) = beta n] is the negation of this.
inline double rate_from_stirling_parts(double alpha, double beta) {
  if (!(alpha < beta && beta < 1))
    throw std::domain_error("rate_from_stirling_parts: need alpha < beta < 1");
  const double first_part = stirling_log_asymptotic(StirlingKind::first, beta);
  const double second_part =
      beta * stirling_log_asymptotic(StirlingKind::second, alpha / beta);
  const double binom_entropy =
      alpha * std::log(alpha) + (1 - alpha) * std::log1p(-alpha);
  return -(first_part + second_part + binom_entropy);
}

// ---------------------------------------------------------------------------
// Deep-n pmf logs for small j (regime reports far beyond exact range).
// ---------------------------------------------------------------------------

namespace detail {

// H_n^{(m)} in doubles. Direct summation up to a fixed prefix, then an
// Euler-Maclaurin tail: sum_{i=a+1}^{b} i^-m = (a^{1-m}-b^{1-m})/(m-1)
// + (b^-m - a^-m)/2 + m(a^{-m-1}-b^{-m-1})/12 + O(a^{-m-3}).
inline double harmonic_float(long n, int m) {
  if (n <= 0) return 0.0;
  const long prefix = std::min<long>(n, 100000);
  if (m == 1) {
    if (n <= prefix) {
      double acc = 0;
      for (long i = 1; i <= n; ++i) acc += 1.0 / i;
      return acc;
    }
    const double nd = static_cast<double>(n);
    return std::log(nd) + kEulerGamma + 1.0 / (2 * nd) - 1.0 / (12 * nd * nd);
  }
  double acc = 0;
  for (long i = 1; i <= prefix; ++i) acc += std::pow(static_cast<double>(i), -m);
  if (n > prefix) {
    const double a = static_cast<double>(prefix), b = static_cast<double>(n);
    const double am = std::pow(a, -m), bm = std::pow(b, -m);
    acc += (std::pow(a, 1.0 - m) - std::pow(b, 1.0 - m)) / (m - 1);
    acc += (bm - am) / 2;
    acc += m * (am / a - bm / b) / 12;
  }
  return acc;
}

}  // namespace detail

// log P[Lah(n,k) = j] for j = 0..j_max, usable for n far beyond the exact
// range as long as j_max stays moderate. Up to n = 4000 the big-integer
// row prefix is used directly. Beyond that, s(n,j) = (n-1)! e_{j-1}(1,...,
// 1/(n-1)) with the elementary symmetric polynomials obtained from the power
// sums H^{(m)}_{n-1} by Newton's identities; that alternating recursion is
// numerically sound only while j stays well below log^2 n, which is enforced.
inline std::vector<double> lah_log_pmf_deep_range(long n, int k, int j_max) {
  if (k < 1 || k > n)
    throw std::domain_error("lah_log_pmf_deep_range: need 1 <= k <= n");
  if (j_max > 400 || j_max > n)
    throw std::domain_error("lah_log_pmf_deep_range: need j_max <= min(n, 400)");
  std::vector<double> out(j_max + 1, -std::numeric_limits<double>::infinity());
  const std::vector<Int> second_col = stirling_second_column(j_max, std::min(k, j_max));
  if (n <= 4000) {
    const int ni = static_cast<int>(n);
    const std::vector<Int> prefix = stirling_first_row_prefix(ni, j_max);
    const double log_lah = log_int(lah_number(ni, k));
    for (int j = std::max(1, k); j <= j_max; ++j) {
      if (prefix[j] == 0 || second_col[j] == 0) continue;
      out[j] = log_int(prefix[j]) + log_int(second_col[j]) - log_lah;
    }
    return out;
  }
  const double log_n = std::log(static_cast<double>(n));
  if (j_max > 0.4 * log_n * log_n)
    throw numerical_error(
        "lah_log_pmf_deep_range: Newton-identity route needs j_max <~ 0.4 log^2 n");
  std::vector<double> power_sum(j_max + 1, 0.0);
  for (int m = 1; m <= j_max - 1; ++m)
    power_sum[m] = detail::harmonic_float(n - 1, m);
  std::vector<double> elementary(std::max(1, j_max), 0.0);
  elementary[0] = 1.0;
  for (int m = 1; m <= j_max - 1; ++m) {
    double acc = 0;
    double sign = 1;
    for (int i = 1; i <= m; ++i) {
      acc += sign * power_sum[i] * elementary[m - i];
      sign = -sign;
    }
    elementary[m] = acc / m;
  }
  // log pmf = log e_{j-1} + log S(j,k) + log((n-1)!/L(n,k)); the last factor
  // is formed analytically as -log n + log k! - log binom(n-1,k-1), because a
  // difference of lgamma(~n log n) values would lose every relevant digit.
  double log_norm = -std::log(static_cast<double>(n)) + log_int(factorial(k));
  for (int i = 1; i <= k - 1; ++i)
    log_norm -= std::log(static_cast<double>(n - i)) - std::log(static_cast<double>(i));
  for (int j = std::max(1, k); j <= j_max; ++j) {
    if (second_col[j] == 0 || elementary[j - 1] <= 0) continue;
    out[j] = std::log(elementary[j - 1]) + log_int(second_col[j]) + log_norm;
  }
  return out;
}

inline double lah_log_pmf_deep(long n, int k, int j) {
  if (j < k || j > n) return -std::numeric_limits<double>::infinity();
  return lah_log_pmf_deep_range(n, k, j)[j];
}

}  // namespace lah
