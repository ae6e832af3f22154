#pragma once

#include <cmath>

#include "oweno/double_double.hpp"
#include "oweno/scalar.hpp"

namespace oweno {

inline double exp_scalar(double x) { return std::exp(x); }

/// exp for double-double: argument reduction by ln 2, scaled Taylor series,
/// repeated squaring. Good to ~1 ulp of double-double for |x| < 700.
inline DoubleDouble exp_scalar(DoubleDouble x) {
  static const DoubleDouble kLn2(6.931471805599452862e-01, 2.319046813846299558e-17);
  if (x.hi > 709.0) return DoubleDouble(std::numeric_limits<double>::infinity());
  if (x.hi < -709.0) return DoubleDouble(0.0);
  double kd = std::round(x.hi / kLn2.hi);
  DoubleDouble r = x - kLn2 * DoubleDouble(kd);
  // |r| <= ln2/2; the full-range Taylor sum avoids the error amplification
  // of repeated squaring
  DoubleDouble term(1.0), sum(1.0);
  for (int n = 1; n <= 32; ++n) {
    term = term * r / DoubleDouble(static_cast<double>(n));
    sum += term;
    if (std::abs(term.hi) < 1e-35 * std::abs(sum.hi)) break;
  }
  int k = static_cast<int>(kd);
  return DoubleDouble(std::ldexp(sum.hi, k), std::ldexp(sum.lo, k));
}

inline double sin_scalar(double x) { return std::sin(x); }
inline double cos_scalar(double x) { return std::cos(x); }

}  // namespace oweno
