#pragma once

#include <cmath>
#include <concepts>
#include <limits>
#include <string>

#include "oweno/double_double.hpp"
#include "oweno/rational.hpp"

namespace oweno {

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static double from_rational(const Rational& q) { return q.to_double(); }
  static double from_double(double x) { return x; }
  static double to_double(double x) { return x; }
  /// Upper bound on the unit roundoff.
  static double epsilon() { return std::numeric_limits<double>::epsilon(); }
  static bool finite(double x) { return std::isfinite(x); }
  static std::string to_string(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
  }
  static constexpr const char* name() { return "f64"; }
};

template <>
struct ScalarTraits<DoubleDouble> {
  static DoubleDouble from_rational(const Rational& q) {
    double hi = q.to_double();
    if (!std::isfinite(hi)) return DoubleDouble(hi);
    Rational resid = q - Rational::of_double(hi);
    double lo = resid.to_double();
    return DoubleDouble::fast_two_sum(hi, lo);
  }
  static DoubleDouble from_double(double x) { return DoubleDouble(x); }
  static double to_double(const DoubleDouble& x) { return x.to_double(); }
  static DoubleDouble epsilon() { return DoubleDouble(std::ldexp(1.0, -104)); }
  static bool finite(const DoubleDouble& x) { return x.finite(); }
  static std::string to_string(const DoubleDouble& x) {
    Rational exact = Rational::of_double(x.hi) + Rational::of_double(x.lo);
    return exact.to_decimal_string(32);
  }
  static constexpr const char* name() { return "dd" ; }
};

// clang-format off
template <class T>
concept ScalarField = requires(T a, T b, const Rational& q) {
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { a / b } -> std::convertible_to<T>;
  { -a } -> std::convertible_to<T>;
  { abs(a) } -> std::convertible_to<T>;
  { a < b } -> std::convertible_to<bool>;
  { ScalarTraits<T>::from_rational(q) } -> std::convertible_to<T>;
  { ScalarTraits<T>::epsilon() } -> std::convertible_to<T>;
};
// clang-format on

using std::abs;

/// x^e by binary powering, e >= 0.
template <ScalarField T>
T pow_int(const T& x, long e) {
  T acc = ScalarTraits<T>::from_double(1.0);
  T base = x;
  for (; e > 0; e >>= 1) {
    if (e & 1) acc = acc * base;
    base = base * base;
  }
  return acc;
}

/// q-th root of x >= 0 by Newton iteration seeded from double precision.
template <ScalarField T>
T root_int(const T& x, long q) {
  if (q == 1) return x;
  double xd = ScalarTraits<T>::to_double(x);
  if (xd == 0.0) return ScalarTraits<T>::from_double(0.0);
  T y = ScalarTraits<T>::from_double(std::pow(xd, 1.0 / static_cast<double>(q)));
  const T qq = ScalarTraits<T>::from_double(static_cast<double>(q));
  const T qm1 = ScalarTraits<T>::from_double(static_cast<double>(q - 1));
  for (int it = 0; it < 3; ++it) {
    y = (qm1 * y + x / pow_int(y, q - 1)) / qq;
  }
  return y;
}

/// x^(p/q) for x >= 0 with a rational exponent in lowest terms.
template <ScalarField T>
T pow_rational(const T& x, const Rational& e) {
  long p = e.numerator().convert_to<long>();
  long q = e.denominator().convert_to<long>();
  bool inv = p < 0;
  if (inv) p = -p;
  T r = root_int(pow_int(x, p), q);
  return inv ? ScalarTraits<T>::from_double(1.0) / r : r;
}

}  // namespace oweno
