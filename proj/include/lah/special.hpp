#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "lah/exact.hpp"

namespace lah {

enum class LambertBranch { W0, Wm1 };

namespace detail {

// Halley iteration for w e^w = x from a branch-appropriate start, stopping on
// the residual |w e^w - x| <= 1e-14 max(1,|x|).
inline double lambert_halley(double x, double w) {
  const double tol = 1e-14 * std::max(1.0, std::abs(x));
  for (int iter = 0; iter < 60; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::abs(f) <= tol) return w;
    const double df = ew * (w + 1);
    const double d2f = ew * (w + 2);
    double step = f / df;
    const double denom = 1.0 - step * d2f / (2 * df);
    if (std::isfinite(denom) && denom != 0.0) step /= denom;
    w -= step;
  }
  const double ew = std::exp(w);
  if (std::abs(w * ew - x) <= 1e-11 * std::max(1.0, std::abs(x))) return w;
  throw numerical_error("lambert_w: Halley iteration failed to reach tolerance");
}

}  // namespace detail

// Lambert W on the two real branches. W0 needs x >= -1/e, Wm1 needs
// -1/e <= x < 0.
inline double lambert_w(LambertBranch branch, double x) {
  const double inv_e = 0.36787944117144232159552377016146;
  if (x < -inv_e - 1e-15)
    throw std::domain_error("lambert_w: x below the branch point -1/e");
  if (x < -inv_e) x = -inv_e;
  if (branch == LambertBranch::W0) {
    if (x == 0.0) return 0.0;
    double w;
    const double p2 = 2.0 * (std::exp(1.0) * x + 1.0);
    if (p2 <= 0) return -1.0;
    if (x < -0.25) {
      const double p = std::sqrt(p2);
      w = -1.0 + p - p * p / 3.0;  // branch-point series
    } else if (x < 3.0) {
      w = x / (1.0 + x);
    } else {
      const double l1 = std::log(x), l2 = std::log(l1);
      w = l1 - l2 + l2 / l1;
    }
    return detail::lambert_halley(x, w);
  }
  if (x >= 0)
    throw std::domain_error("lambert_w: W_{-1} requires -1/e <= x < 0");
  const double p2 = 2.0 * (std::exp(1.0) * x + 1.0);
  double w;
  if (p2 <= 0) return -1.0;
  if (p2 < 0.5) {
    const double p = std::sqrt(p2);
    w = -1.0 - p - p * p / 3.0;
  } else {
    const double l1 = std::log(-x), l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
  }
  return detail::lambert_halley(x, w);
}

// h(x) = -x log x / (1-x) on (0,1) u (1,inf), extended by h(1) = 1. Strictly
// increasing; drift of the Lah distribution in the central regime.
inline double h_function(double x) {
  if (x <= 0) throw std::domain_error("h_function: x must be positive");
  const double u = x - 1;
  if (std::abs(u) < 1e-5) {
    // -x log x/(1-x) = 1 + u/2 - u^2/6 + u^3/12 - ... around x = 1.
    return 1 + u / 2 - u * u / 6 + u * u * u / 12;
  }
  return -x * std::log(x) / (1 - x);
}

// Inverse of h: Lambert form -z/W(-z e^{-z}) (W0 for z >= 1, W_{-1} for
// z <= 1), then one or two Newton polish steps on h itself, which repairs
// the square-root precision loss near the branch point z = 1.
inline double h_inverse(double z) {
  if (z <= 0) throw std::domain_error("h_inverse: z must be positive");
  double x;
  if (std::abs(z - 1) < 1e-7) {
    const double u = 2 * (z - 1);
    x = 1 + u + u * u / 3.0;  // inverse of the series above
  } else {
    const double arg = -z * std::exp(-z);
    x = (z >= 1) ? -z / lambert_w(LambertBranch::W0, arg)
                 : -z / lambert_w(LambertBranch::Wm1, arg);
  }
  for (int i = 0; i < 3; ++i) {
    const double u = x - 1;
    double hx, dh;
    if (std::abs(u) < 1e-5) {
      hx = 1 + u / 2 - u * u / 6 + u * u * u / 12;
      dh = 0.5 - u / 3 + u * u / 4;
    } else {
      const double lx = std::log(x);
      hx = -x * lx / (1 - x);
      dh = ((-lx - 1) * (1 - x) - x * lx) / ((1 - x) * (1 - x));
    }
    const double step = (hx - z) / dh;
    x -= step;
    if (std::abs(step) <= 1e-15 * std::abs(x)) break;
  }
  return x;
}

// Standard normal cdf.
inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x * 0.70710678118654752440084436210485);
}

// Log-gamma for complex argument with Re z > 0, by the Lanczos approximation
// with g = 607/128 and the 15 classic coefficients (Godfrey's set).
inline std::complex<double> log_gamma(std::complex<double> z) {
  if (z.real() <= 0)
    throw std::domain_error("log_gamma: requires Re z > 0");
  static const double kCoeff[15] = {
      0.99999999999999709182,     57.156235665862923517,
      -59.597960355475491248,     14.136097974741747174,
      -0.49191381609762019978,    0.33994649984811888699e-4,
      0.46523628927048575665e-4,  -0.98374475304879564677e-4,
      0.15808870322491248884e-3,  -0.21026444172410488319e-3,
      0.21743961811521264320e-3,  -0.16431810653676389022e-3,
      0.84418223983852743293e-4,  -0.26190838401581408670e-4,
      0.36899182659531622704e-5};
  const double g = 607.0 / 128.0;
  const std::complex<double> zm1 = z - 1.0;
  std::complex<double> series = kCoeff[0];
  for (int i = 1; i < 15; ++i) series += kCoeff[i] / (zm1 + static_cast<double>(i));
  const std::complex<double> t = zm1 + g + 0.5;
  const double half_log_two_pi = 0.91893853320467274178032973640562;
  return half_log_two_pi + (zm1 + 0.5) * std::log(t) - t + std::log(series);
}

inline double log_gamma(double x) {
  if (x <= 0) throw std::domain_error("log_gamma: requires x > 0");
  return std::lgamma(x);
}

}  // namespace lah
