#pragma once

#include <cmath>
#include <limits>
#include <ostream>

namespace oweno {

/// Compensated double-double value: hi + lo with |lo| <= ulp(hi)/2.
/// Error-free transforms (Knuth two-sum, fma-based two-prod) give roughly
/// 106 bits of significand, ~2e-32 relative accuracy per operation.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double h) : hi(h), lo(0.0) {}
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}
  constexpr DoubleDouble(int v) : hi(v), lo(0.0) {}
  constexpr DoubleDouble(long long v) : hi(static_cast<double>(v)), lo(0.0) {}

  static DoubleDouble two_sum(double a, double b) {
    double s = a + b;
    double bv = s - a;
    double err = (a - (s - bv)) + (b - bv);
    return {s, err};
  }
  static DoubleDouble fast_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
  }
  static DoubleDouble two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
  }

  double to_double() const { return hi + lo; }
  bool finite() const { return std::isfinite(hi) && std::isfinite(lo); }

  DoubleDouble operator-() const { return {-hi, -lo}; }

  friend DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
    DoubleDouble s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return fast_two_sum(s.hi, s.lo);
  }
  friend DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) {
    DoubleDouble s = two_sum(a.hi, -b.hi);
    s.lo += a.lo - b.lo;
    return fast_two_sum(s.hi, s.lo);
  }
  friend DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
    DoubleDouble p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return fast_two_sum(p.hi, p.lo);
  }
  friend DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) {
    double q1 = a.hi / b.hi;
    DoubleDouble r = a - b * DoubleDouble(q1);
    double q2 = (r.hi + r.lo) / b.hi;
    DoubleDouble q = fast_two_sum(q1, q2);
    r = a - b * q;
    double q3 = (r.hi + r.lo) / b.hi;
    return fast_two_sum(q.hi, q.lo + q3);
  }

  DoubleDouble& operator+=(const DoubleDouble& o) { return *this = *this + o; }
  DoubleDouble& operator-=(const DoubleDouble& o) { return *this = *this - o; }
  DoubleDouble& operator*=(const DoubleDouble& o) { return *this = *this * o; }
  DoubleDouble& operator/=(const DoubleDouble& o) { return *this = *this / o; }

  friend bool operator==(const DoubleDouble& a, const DoubleDouble& b) {
    return a.hi == b.hi && a.lo == b.lo;
  }
  friend bool operator!=(const DoubleDouble& a, const DoubleDouble& b) { return !(a == b); }
  friend bool operator<(const DoubleDouble& a, const DoubleDouble& b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
  }
  friend bool operator>(const DoubleDouble& a, const DoubleDouble& b) { return b < a; }
  friend bool operator<=(const DoubleDouble& a, const DoubleDouble& b) { return !(b < a); }
  friend bool operator>=(const DoubleDouble& a, const DoubleDouble& b) { return !(a < b); }

  friend DoubleDouble abs(const DoubleDouble& a) {
    return (a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0)) ? -a : a;
  }
  friend DoubleDouble sqrt(const DoubleDouble& a) {
    if (a.hi < 0.0) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
    if (a.hi == 0.0) return {0.0, 0.0};
    DoubleDouble x(std::sqrt(a.hi));
    x = (x + a / x) * DoubleDouble(0.5);
    x = (x + a / x) * DoubleDouble(0.5);
    return x;
  }

  friend std::ostream& operator<<(std::ostream& os, const DoubleDouble& a) {
    return os << a.to_double();
  }
};

}  // namespace oweno
