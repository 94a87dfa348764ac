#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "lah/distribution.hpp"
#include "lah/exact.hpp"

namespace lah {

struct PolyZerosResult {
  std::vector<std::complex<double>> roots;  // the n-k nonzero roots of P_{n,k}
  bool converged = true;   // false after the iteration cap; roots then hold partials
  double max_residual = 0.0;  // max |P(root)| on the scaled polynomial
};

namespace detail {

template <unsigned Digits>
using BigFloat =
    boost::multiprecision::number<boost::multiprecision::cpp_bin_float<Digits>>;

// Minimal complex arithmetic over a multiprecision real type.
template <typename F>
struct Cx {
  F re{0}, im{0};

  friend Cx operator+(const Cx& a, const Cx& b) { return {F(a.re + b.re), F(a.im + b.im)}; }
  friend Cx operator-(const Cx& a, const Cx& b) { return {F(a.re - b.re), F(a.im - b.im)}; }
  friend Cx operator*(const Cx& a, const Cx& b) {
    return {F(a.re * b.re - a.im * b.im), F(a.re * b.im + a.im * b.re)};
  }
  friend Cx operator/(const Cx& a, const Cx& b) {
    const F d = b.re * b.re + b.im * b.im;
    return {F((a.re * b.re + a.im * b.im) / d), F((a.im * b.re - a.re * b.im) / d)};
  }
  Cx& operator+=(const Cx& o) { re += o.re; im += o.im; return *this; }
  Cx& operator-=(const Cx& o) { re -= o.re; im -= o.im; return *this; }
  F abs2() const { return F(re * re + im * im); }
  bool is_zero() const { return re == 0 && im == 0; }
};

// Aberth-Ehrlich simultaneous root iteration on coefficients that have been
// scaled by max |c_i|. Starting points come from the Newton polygon (the
// upper convex hull of (i, log|c_i|)): each hull edge of horizontal span m
// contributes m starting points on a circle whose radius is the edge-slope
// estimate of those root moduli. A single starting circle does not work
// here, the root moduli span several decades. Converged roots are frozen
// but keep repelling the others. Returns true when all corrections fell
// below tol.
template <typename F>
bool aberth(const std::vector<F>& coeff, const std::vector<double>& log_abs,
            std::vector<std::complex<double>>& out, double& max_residual,
            int max_iter, double tol) {
  using C = Cx<F>;
  const int deg = static_cast<int>(coeff.size()) - 1;
  const double neg_inf = -std::numeric_limits<double>::infinity();
  // Upper convex hull of (i, log|c_i|), left to right.
  std::vector<int> hull;
  for (int i = 0; i <= deg; ++i) {
    if (log_abs[i] == neg_inf) continue;
    while (hull.size() >= 2) {
      const int a = hull[hull.size() - 2], b = hull.back();
      if ((log_abs[b] - log_abs[a]) * (i - a) <= (log_abs[i] - log_abs[a]) * (b - a))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }
  std::vector<C> z(deg);
  const double two_pi = 6.283185307179586476925286766559;
  int placed = 0;
  for (size_t e = 0; e + 1 < hull.size(); ++e) {
    const int a = hull[e], b = hull[e + 1];
    const double radius = std::exp((log_abs[a] - log_abs[b]) / (b - a));
    for (int m = 0; m < b - a; ++m) {
      const double theta = two_pi * (m + 0.5) / (b - a) + 0.4 + 0.05 * e;
      z[placed++] = C{F(radius * std::cos(theta)), F(radius * std::sin(theta))};
    }
  }
  for (; placed < deg; ++placed)  // defensive: hull always spans deg, but still
    z[placed] = C{F(1 + placed), F(0.5)};
  auto eval = [&](const C& x, C& p, C& dp) {
    p = C{coeff[deg], F(0)};
    dp = C{F(0), F(0)};
    for (int i = deg - 1; i >= 0; --i) {
      dp = dp * x + p;
      p = p * x + C{coeff[i], F(0)};
    }
  };
  const F tol2 = F(tol) * F(tol);
  std::vector<bool> frozen(deg, false);
  std::vector<std::complex<double>> zd(deg);
  bool done = false;
  for (int iter = 0; iter < max_iter && !done; ++iter) {
    done = true;
    // The repulsion sums only steer the iteration; at unit-scale root
    // separation double precision is ample for them, and this removes the
    // quadratic number of multiprecision divisions per sweep. Only the
    // Newton correction p/p' needs the full working precision.
    for (int i = 0; i < deg; ++i)
      zd[i] = std::complex<double>(static_cast<double>(z[i].re),
                                   static_cast<double>(z[i].im));
    for (int i = 0; i < deg; ++i) {
      if (frozen[i]) continue;
      C p, dp;
      eval(z[i], p, dp);
      if (p.is_zero()) {
        frozen[i] = true;
        continue;
      }
      const C newton = p / dp;
      std::complex<double> sum_d{0, 0};
      for (int j = 0; j < deg; ++j) {
        if (j == i) continue;
        const std::complex<double> diff = zd[i] - zd[j];
        if (diff == std::complex<double>(0, 0)) continue;
        sum_d += 1.0 / diff;
      }
      const C sum{F(sum_d.real()), F(sum_d.imag())};
      const C delta = newton / (C{F(1), F(0)} - newton * sum);
      z[i] -= delta;
      if (delta.abs2() > tol2 * (F(1) + z[i].abs2())) done = false;
      else if (iter >= 5) frozen[i] = true;  // corrections can be transiently small early
    }
  }
  out.resize(deg);
  max_residual = 0.0;
  for (int i = 0; i < deg; ++i) {
    C p, dp;
    eval(z[i], p, dp);
    const double r = std::sqrt(static_cast<double>(p.abs2()));
    max_residual = std::max(max_residual, r);
    out[i] = std::complex<double>(static_cast<double>(z[i].re),
                                  static_cast<double>(z[i].im));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return done;
}

}  // namespace detail

// All n-k nonzero roots of the generating polynomial P_{n,k} (the factor t^k
// is stripped first), by multiprecision Aberth iteration on coefficients
// normalized by max |c_i|. The working precision is about four times the
// requested output precision, which keeps the n ~ 300 cases conditioned.
// On hitting the iteration cap the partial roots are returned with
// converged = false rather than thrown away.
inline PolyZerosResult poly_zeros(LahParams p, int precision_bits = 53) {
  if (p.n > 300) throw resource_error("poly_zeros: supported up to n = 300");
  if (precision_bits < 8 || precision_bits > 400)
    throw std::domain_error("poly_zeros: precision_bits out of range [8,400]");
  const std::vector<Int> first_row = stirling_first_row(p.n);
  const std::vector<Int> second_col = stirling_second_column(p.n, p.k);
  std::vector<Int> c(p.n - p.k + 1);
  Int max_abs = 0;
  for (int j = p.k; j <= p.n; ++j) {
    c[j - p.k] = first_row[j] * second_col[j];
    if (c[j - p.k] > max_abs) max_abs = c[j - p.k];
  }
  PolyZerosResult result;
  const double tol = std::ldexp(1.0, -precision_bits);
  const int max_iter = 400;
  const double log_scale = log_int(max_abs);
  std::vector<double> log_abs(c.size());
  for (size_t i = 0; i < c.size(); ++i) log_abs[i] = log_int(c[i]) - log_scale;
  // Working precision: at least 4x the requested bits, but what actually
  // binds at n ~ 300 is Wilkinson-style conditioning: the n-k roots are
  // spaced about one unit apart, |P'| at the outer roots carries the scale
  // of the smallest coefficient while the evaluation noise carries that of
  // the largest, so the precision must cover the whole coefficient span.
  double min_log_abs = 0;
  for (const double v : log_abs) min_log_abs = std::min(min_log_abs, v);
  const double span_digits = -min_log_abs / 2.302585092994046;
  const double needed_digits =
      std::max(4 * precision_bits * 0.30103, span_digits * 1.1 + 30);
  auto run = [&](auto tag) {
    using F = decltype(tag);
    std::vector<F> coeff(c.size());
    const F scale = F(max_abs.str());
    for (size_t i = 0; i < c.size(); ++i) coeff[i] = F(F(c[i].str()) / scale);
    result.converged = detail::aberth<F>(coeff, log_abs, result.roots,
                                         result.max_residual, max_iter, tol);
  };
  if (needed_digits <= 96) run(detail::BigFloat<96>{});
  else if (needed_digits <= 192) run(detail::BigFloat<192>{});
  else if (needed_digits <= 384) run(detail::BigFloat<384>{});
  else if (needed_digits <= 768) run(detail::BigFloat<768>{});
  else
    throw resource_error("poly_zeros: conditioning demands more than 768 digits");
  return result;
}

}  // namespace lah
