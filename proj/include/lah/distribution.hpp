#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lah/combinatorics.hpp"
#include "lah/exact.hpp"
#include "lah/series.hpp"

namespace lah {

// Parameters of the Lah distribution: support is exactly {k, ..., n} with
// mass at j proportional to s(n,j) S(j,k).
struct LahParams {
  int n;
  int k;

  LahParams(int n_, int k_) : n(n_), k(k_) {
    if (n < 1 || k < 1 || k > n)
      throw std::domain_error("LahParams: need 1 <= k <= n");
  }
};

// Exact pmf over the whole support, built once from the Stirling rows.
class LahPmfTable {
 public:
  explicit LahPmfTable(LahParams p) : params_(p) {
    const Int lah = lah_number(p.n, p.k);
    const std::vector<Int> first_row = stirling_first_row(p.n);
    const std::vector<Int> second_col = stirling_second_column(p.n, p.k);
    mass_.resize(p.n - p.k + 1);
    for (int j = p.k; j <= p.n; ++j)
      mass_[j - p.k] = Ratio(first_row[j] * second_col[j], lah);
  }

  const LahParams& params() const { return params_; }

  Ratio pmf(int j) const {
    if (j < params_.k || j > params_.n) return 0;
    return mass_[j - params_.k];
  }

  Ratio cdf(int j) const {
    if (j < params_.k) return 0;
    Ratio acc = 0;
    for (int i = params_.k; i <= std::min(j, params_.n); ++i)
      acc += mass_[i - params_.k];
    return acc;
  }

  // P[X in {top, top-2, top-4, ...}].
  Ratio parity_mass(int top) const {
    int j = top;
    while (j > params_.n) j -= 2;
    Ratio acc = 0;
    for (; j >= params_.k; j -= 2) acc += pmf(j);
    return acc;
  }

  Ratio total() const {
    Ratio acc = 0;
    for (const auto& m : mass_) acc += m;
    return acc;
  }

  // Exact E X^m for small m (support scan).
  Ratio power_moment(int m) const {
    Ratio acc = 0;
    for (int j = params_.k; j <= params_.n; ++j) {
      Int p = 1;
      for (int i = 0; i < m; ++i) p *= j;
      acc += Ratio(p) * mass_[j - params_.k];
    }
    return acc;
  }

 private:
  LahParams params_;
  std::vector<Ratio> mass_;
};

inline Ratio lah_pmf(LahParams p, int j) {
  if (j < p.k || j > p.n) return 0;
  return Ratio(stirling_first(p.n, j) * stirling_second(j, p.k),
               lah_number(p.n, p.k));
}

inline Ratio lah_cdf(LahParams p, int j) {
  if (j < p.k) return 0;
  if (j >= p.n) return 1;
  Ratio acc = 0;
  for (int i = p.k; i <= j; ++i) acc += lah_pmf(p, i);
  return acc;
}

inline Ratio lah_parity_mass(LahParams p, int top) {
  int j = top;
  while (j > p.n) j -= 2;  // sum starts at the largest support point of top's parity
  Ratio acc = 0;
  for (; j >= p.k; j -= 2) acc += lah_pmf(p, j);
  return acc;
}

enum class GenPolyMethod { pmf_sum, coeff, gamma_sum };

// Rising factorial t (t+1) ... (t+n-1), exact in the rationals.
inline Ratio rising_factorial(const Ratio& t, int n) {
  Ratio r = 1;
  for (int i = 0; i < n; ++i) r *= t + i;
  return r;
}

// P_{n,k}(t) = E t^X by one of three routes that must agree exactly:
// a plain pmf sum, the coefficient extraction from ((1-x)^{-t}-1)^k, and the
// alternating Gamma-ratio sum with Gamma(tm+n)/Gamma(tm) expanded as the
// rising factorial tm (tm+1) ... (tm+n-1).
inline Ratio gen_poly_eval(LahParams p, const Ratio& t, GenPolyMethod method) {
  switch (method) {
    case GenPolyMethod::pmf_sum: {
      const LahPmfTable table(p);
      Ratio acc = 0;
      Ratio tj = 1;
      for (int i = 0; i < p.k; ++i) tj *= t;
      for (int j = p.k; j <= p.n; ++j) {
        acc += tj * table.pmf(j);
        tj *= t;
      }
      return acc;
    }
    case GenPolyMethod::coeff:
      return series_coefficient(p.k, t, p.n) / Ratio(binomial(p.n - 1, p.k - 1));
    case GenPolyMethod::gamma_sum: {
      Ratio acc = 0;
      for (int m = 1; m <= p.k; ++m) {
        Ratio term = Ratio(binomial(p.k, m)) * rising_factorial(t * m, p.n);
        if ((p.k - m) % 2 == 1) term = -term;
        acc += term;
      }
      return acc / (Ratio(binomial(p.n - 1, p.k - 1)) * Ratio(factorial(p.n)));
    }
  }
  throw std::logic_error("gen_poly_eval: unknown method");
}

// E X via both binomial sums (positive-term and alternating), checked against
// each other; the value is sum_j j s(n,j) S(j,k) / L(n,k).
inline Ratio lah_expectation(LahParams p) {
  const int n = p.n, k = p.k;
  const Ratio norm = Ratio(Int(k), binomial(n - 1, k - 1));
  Ratio positive = 0;
  for (int i = 1; i <= n - k + 1; ++i)
    positive += Ratio(binomial(n - i, k - 1), Int(i));
  positive *= norm;
  Ratio alternating = 0;
  for (int i = 1; i <= n - k + 1; ++i) {
    Ratio term = Ratio(binomial(n, k + i - 1), Int(i));
    if (i % 2 == 0) term = -term;
    alternating += term;
  }
  alternating *= norm;
  if (positive != alternating)
    throw std::logic_error("lah_expectation: the two binomial sums disagree");
  return positive;
}

// m-th factorial moment E X(X-1)...(X-m+1) via the double sum
//   sum_j s(n,j) S(j,k) binom(j,m)
//     = n! sum_i binom(n-i,k-1) sum_{l<=min(k,m)} S(m,l)/(k-l)! s(i+l-1,m)/(i+l-1)!
// normalized by m!/L(n,k). For m = 2 the harmonic-number closed form is
// computed as well and the two must agree.
inline Ratio lah_factorial_moment(LahParams p, int m) {
  if (m < 1) throw std::domain_error("lah_factorial_moment: m must be >= 1");
  const int n = p.n, k = p.k;
  if (m > n) return 0;
  const Int lah = lah_number(n, k);
  const int l_max = std::min(k, m);
  // s(i+l-1, m)/(i+l-1)! for i = 1..n-k+1, l = 1..l_max: rows up to n.
  const int row_max = n - k + l_max;
  Ratio sum = 0;
  for (int l = 1; l <= l_max; ++l) {
    const Int s2 = stirling_second(m, l);
    if (s2 == 0) continue;
    const Ratio outer = Ratio(s2, factorial(k - l));
    Ratio inner = 0;
    for (int i = 1; i <= n - k + 1; ++i) {
      const int r = i + l - 1;
      if (r > row_max || r < m) continue;
      inner += Ratio(binomial(n - i, k - 1) * stirling_first(r, m), factorial(r));
    }
    sum += outer * inner;
  }
  Ratio moment = sum * Ratio(factorial(n) * factorial(m), lah);
  if (m == 2) {
    // Corollary form: 2 n!/(k-1)! sum_i binom(n-i,k-1) (H_i (1+ik)/(i(i+1)) - 1/i^2).
    const std::vector<Ratio> h = harmonic_prefix(n - k + 1);
    Ratio alt = 0;
    for (int i = 1; i <= n - k + 1; ++i) {
      Ratio inner = h[i] * Ratio(Int(1) + Int(i) * k, Int(i) * (i + 1)) -
                    Ratio(Int(1), Int(i) * i);
      alt += Ratio(binomial(n - i, k - 1)) * inner;
    }
    alt *= Ratio(2 * factorial(n), factorial(k - 1) * lah);
    if (alt != moment)
      throw std::logic_error("lah_factorial_moment: harmonic form disagrees at m=2");
  }
  return moment;
}

inline Ratio lah_variance(LahParams p) {
  const Ratio ex = lah_expectation(p);
  return lah_factorial_moment(p, 2) + ex - ex * ex;
}

// Euler-Mascheroni constant (50 digits, rounded into a double).
inline constexpr double kEulerGamma =
    0.57721566490153286060651209008240243104215933593992;

struct LahMode {
  std::vector<int> argmax;           // exact maximizers of the pmf (size 1 or 2)
  std::pair<long, long> predicted;   // floor/ceil of k log n - k psi(k) - 1/2
};

// Exact argmax of the pmf plus the asymptotic two-point prediction, with
// digamma(k) evaluated as -gamma + H_{k-1}.
inline LahMode lah_mode(LahParams p) {
  const LahPmfTable table(p);
  LahMode result;
  Ratio best = 0;
  for (int j = p.k; j <= p.n; ++j) {
    const Ratio m = table.pmf(j);
    if (m > best) {
      best = m;
      result.argmax.assign(1, j);
    } else if (m == best) {
      result.argmax.push_back(j);
    }
  }
  const double digamma_k = -kEulerGamma + to_double(harmonic(p.k - 1));
  const double x = p.k * std::log(static_cast<double>(p.n)) - p.k * digamma_k - 0.5;
  result.predicted = {static_cast<long>(std::floor(x)),
                      static_cast<long>(std::ceil(x))};
  return result;
}

struct LogConcavityResult {
  bool ok = true;
  std::optional<int> counterexample;
};

// pmf(i)^2 >= pmf(i-1) pmf(i+1) over the support, exact comparison.
inline LogConcavityResult check_log_concavity(LahParams p) {
  const LahPmfTable table(p);
  for (int i = p.k + 1; i <= p.n - 1; ++i) {
    if (table.pmf(i) * table.pmf(i) < table.pmf(i - 1) * table.pmf(i + 1))
      return {false, i};
  }
  return {};
}

// Nondecreasing then nonincreasing, with at most two maximizers.
inline bool check_unimodal(LahParams p) {
  const LahPmfTable table(p);
  int argmax_size = 0;
  Ratio best = 0;
  for (int j = p.k; j <= p.n; ++j) {
    const Ratio m = table.pmf(j);
    if (m > best) {
      best = m;
      argmax_size = 1;
    } else if (m == best) {
      ++argmax_size;
    }
  }
  if (argmax_size > 2) return false;
  bool rising = true;
  for (int j = p.k + 1; j <= p.n; ++j) {
    const int cmp = table.pmf(j).compare(table.pmf(j - 1));
    if (rising && cmp < 0) rising = false;
    else if (!rising && cmp > 0) return false;
  }
  return true;
}

}  // namespace lah
