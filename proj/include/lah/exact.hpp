#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lah {

// Exact scalars. Every identity in the library is checked on these types;
// doubles only appear as explicit lossy views at the boundary.
using Int = boost::multiprecision::cpp_int;
using Ratio = boost::multiprecision::cpp_rational;

// Thrown when a request exceeds a configured capacity cap (not a math error).
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when an iterative numeric routine fails to converge.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string to_decimal(const Int& x) { return x.str(); }

// "p/q" with q omitted when the value is integral.
inline std::string to_fraction(const Ratio& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline Int int_from_decimal(const std::string& s) { return Int(s); }

inline Ratio ratio_from_fraction(const std::string& s) {
  auto pos = s.find('/');
  if (pos == std::string::npos) return Ratio(Int(s));
  return Ratio(Int(s.substr(0, pos)), Int(s.substr(pos + 1)));
}

// Round a big integer to double, exponent-safe (overflows to +-inf).
inline double to_double(const Int& x) {
  if (x == 0) return 0.0;
  Int a = abs(x);
  const long b = static_cast<long>(msb(a));  // index of highest set bit
  double r;
  if (b <= 62) {
    r = static_cast<double>(a.convert_to<std::uint64_t>());
  } else {
    const Int top = a >> (b - 62);
    r = std::ldexp(static_cast<double>(top.convert_to<std::uint64_t>()),
                   static_cast<int>(b - 62));
  }
  return x < 0 ? -r : r;
}

// Rational to double without overflowing on huge numerator/denominator.
inline double to_double(const Ratio& q) {
  const Int& n = numerator(q);
  const Int& d = denominator(q);
  if (n == 0) return 0.0;
  Int an = abs(n);
  const long bn = static_cast<long>(msb(an));
  const long bd = static_cast<long>(msb(d));
  const long sn = bn > 62 ? bn - 62 : 0;
  const long sd = bd > 62 ? bd - 62 : 0;
  const double a = static_cast<double>(Int(an >> sn).convert_to<std::uint64_t>());
  const double b = static_cast<double>(Int(d >> sd).convert_to<std::uint64_t>());
  long e = sn - sd;
  double r = a / b;
  if (e > 3000) return n < 0 ? -HUGE_VAL : HUGE_VAL;
  if (e < -3000) return 0.0;
  while (e > 900) { r = std::ldexp(r, 900); e -= 900; }
  while (e < -900) { r = std::ldexp(r, -900); e += 900; }
  r = std::ldexp(r, static_cast<int>(e));
  return n < 0 ? -r : r;
}

// Natural log of a positive big integer; works far beyond double range.
inline double log_int(const Int& x) {
  if (x <= 0) throw std::domain_error("log_int: argument must be positive");
  const long b = static_cast<long>(msb(x));
  if (b <= 62) return std::log(static_cast<double>(x.convert_to<std::uint64_t>()));
  const Int top = x >> (b - 62);
  return std::log(static_cast<double>(top.convert_to<std::uint64_t>())) +
         static_cast<double>(b - 62) * 0.6931471805599453094172321214581766;
}

inline double log_ratio(const Ratio& q) {
  if (q <= 0) throw std::domain_error("log_ratio: argument must be positive");
  return log_int(numerator(q)) - log_int(denominator(q));
}

}  // namespace lah
