#pragma once

#include <stdexcept>
#include <vector>

#include "lah/exact.hpp"

namespace lah {

// Dense truncated power series with exact rational coefficients. All
// operations are exact up to the truncation order; used as the
// generating-function oracle behind the coefficient identities.
class SeriesPoly {
 public:
  explicit SeriesPoly(int order) : coeff_(order + 1, Ratio(0)) {}

  int order() const { return static_cast<int>(coeff_.size()) - 1; }
  const Ratio& operator[](int i) const { return coeff_[i]; }
  Ratio& operator[](int i) { return coeff_[i]; }

  SeriesPoly& operator+=(const SeriesPoly& o) {
    require_same_order(o);
    for (int i = 0; i <= order(); ++i) coeff_[i] += o.coeff_[i];
    return *this;
  }

  SeriesPoly& operator-=(const SeriesPoly& o) {
    require_same_order(o);
    for (int i = 0; i <= order(); ++i) coeff_[i] -= o.coeff_[i];
    return *this;
  }

  SeriesPoly& operator*=(const Ratio& s) {
    for (auto& c : coeff_) c *= s;
    return *this;
  }

  friend SeriesPoly operator*(const SeriesPoly& a, const SeriesPoly& b) {
    a.require_same_order(b);
    const int n = a.order();
    SeriesPoly r(n);
    for (int i = 0; i <= n; ++i) {
      if (a.coeff_[i] == 0) continue;
      for (int j = 0; i + j <= n; ++j) {
        if (b.coeff_[j] == 0) continue;
        r.coeff_[i + j] += a.coeff_[i] * b.coeff_[j];
      }
    }
    return r;
  }

  // Substitute x -> -x.
  SeriesPoly negate_argument() const {
    SeriesPoly r = *this;
    for (int i = 1; i <= order(); i += 2) r.coeff_[i] = -r.coeff_[i];
    return r;
  }

  // log(1/(1-x)) = sum_{m>=1} x^m / m.
  static SeriesPoly log_one_over_one_minus_x(int order) {
    SeriesPoly r(order);
    for (int m = 1; m <= order; ++m) r.coeff_[m] = Ratio(1, m);
    return r;
  }

  // exp of a series with zero constant term, via e_m = (1/m) sum i a_i e_{m-i}.
  SeriesPoly exp() const {
    if (coeff_[0] != 0)
      throw std::domain_error("SeriesPoly::exp: constant term must vanish");
    const int n = order();
    SeriesPoly e(n);
    e.coeff_[0] = 1;
    for (int m = 1; m <= n; ++m) {
      Ratio acc = 0;
      for (int i = 1; i <= m; ++i) {
        if (coeff_[i] == 0) continue;
        acc += Ratio(i) * coeff_[i] * e.coeff_[m - i];
      }
      e.coeff_[m] = acc / m;
    }
    return e;
  }

  // Integer power by repeated squaring (truncated products).
  SeriesPoly pow(int k) const {
    if (k < 0) throw std::domain_error("SeriesPoly::pow: negative exponent");
    SeriesPoly base = *this;
    SeriesPoly r(order());
    r.coeff_[0] = 1;
    while (k > 0) {
      if (k & 1) r = r * base;
      k >>= 1;
      if (k) base = base * base;
    }
    return r;
  }

  // (1-x)^{-t} for rational t, built as exp(t log(1/(1-x))).
  static SeriesPoly one_minus_x_to_minus(const Ratio& t, int order) {
    SeriesPoly l = log_one_over_one_minus_x(order);
    l *= t;
    return l.exp();
  }

 private:
  void require_same_order(const SeriesPoly& o) const {
    if (o.order() != order())
      throw std::domain_error("SeriesPoly: mismatched truncation orders");
  }

  std::vector<Ratio> coeff_;
};

// [x^n] ((1-x)^{-t} - 1)^k, exactly. Vanishes for n < k.
inline Ratio series_coefficient(int k, const Ratio& t, int n) {
  if (k < 1) throw std::domain_error("series_coefficient: k must be >= 1");
  if (n < 0) throw std::domain_error("series_coefficient: n must be >= 0");
  if (n < k) return 0;
  SeriesPoly s = SeriesPoly::one_minus_x_to_minus(t, n);
  s[0] -= 1;
  return s.pow(k)[n];
}

}  // namespace lah
