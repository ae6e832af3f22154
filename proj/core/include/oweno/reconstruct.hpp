#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "oweno/scalar.hpp"
#include "oweno/tables.hpp"

namespace oweno {

enum class WeightVariant { JS, Z, YC, OWENO };

const char* to_string(WeightVariant v);
WeightVariant weight_variant_from_string(const std::string& s);

struct DimensionMismatch : std::invalid_argument {
  DimensionMismatch() : std::invalid_argument("stencil window does not match tables") {}
};

/// Weight-design parameters. s1 acts on the indicator/d ratios, s2 on the
/// outer amplification, eps guards every denominator.
template <ScalarField T>
struct WeightParams {
  WeightVariant variant = WeightVariant::OWENO;
  long s1 = 2;
  Rational s2 = Rational(1);
  T eps = ScalarTraits<T>::from_double(1e-100);

  /// Default exponents: s1 = 2*ceil(r/4) (even), s2 = 1 for OWENO and the
  /// JS/Z baselines; the YC baseline uses the squared outer form s2 = 2.
  static WeightParams defaults(WeightVariant v, int r) {
    WeightParams p;
    p.variant = v;
    p.s1 = 2 * ((r + 3) / 4);
    p.s2 = (v == WeightVariant::YC) ? Rational(2) : Rational(1);
    return p;
  }

  void validate(int r) const {
    if (s1 < 1) throw std::invalid_argument("weight params: s1 must be >= 1");
    if (s2.sign() <= 0) throw std::invalid_argument("weight params: s2 must be positive");
    if (Rational(2 * s1) * s2 < Rational(r))
      throw std::invalid_argument("weight params: 2*s1*s2 >= r required");
    if (variant == WeightVariant::OWENO && s1 % 2 != 0)
      throw std::invalid_argument("weight params: OWENO requires even s1");
    if (!(ScalarTraits<T>::from_double(0.0) < eps))
      throw std::invalid_argument("weight params: eps must be positive");
  }
};

/// SchemeTables converted once into the scalar field of the computation.
template <ScalarField T>
struct LoadedTables {
  int r = 0;
  DataMode mode = DataMode::PointValues;
  std::vector<std::vector<T>> sub_coeffs;   // r x r
  std::vector<T> ideal_weights;             // r
  std::vector<std::vector<T>> si_diag;      // r x r (LDL diagonal, >= 0)
  std::vector<std::vector<std::vector<T>>> si_rows;  // r x r x (r-j)
  std::vector<T> d1_coeffs;                 // 2r-1
  std::vector<T> d2_a, d2_b, d2_c;          // 2r-1 each
  std::vector<T> full_coeffs;               // 2r-1
  struct FaceDerivs {
    int order;
    std::vector<T> left, center, right;
  };
  std::vector<FaceDerivs> face_derivs;
  std::vector<T> h_series;

  // Flattened copies for the solver's hot loop: substencil coefficients
  // row-major, LDL diagonals per substencil, packed LDL rows (row j of
  // substencil i has r-j entries).
  std::vector<T> flat_sub, flat_diag, flat_rows;
};

template <ScalarField T>
LoadedTables<T> load_tables(const SchemeTables& t) {
  auto conv = [](const RationalVector& v) {
    std::vector<T> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(ScalarTraits<T>::from_rational(x));
    return out;
  };
  LoadedTables<T> lt;
  lt.r = t.r;
  lt.mode = t.mode;
  for (const auto& row : t.sub_coeffs) lt.sub_coeffs.push_back(conv(row));
  lt.ideal_weights = conv(t.ideal_weights);
  for (const auto& ldl : t.si_ldl) {
    lt.si_diag.push_back(conv(ldl.diag));
    std::vector<std::vector<T>> rows;
    for (const auto& row : ldl.rows) rows.push_back(conv(row));
    lt.si_rows.push_back(std::move(rows));
  }
  lt.d1_coeffs = conv(t.d1_coeffs);
  lt.d2_a = conv(t.d2_functionals[0]);
  lt.d2_b = conv(t.d2_functionals[1]);
  lt.d2_c = conv(t.d2_functionals[2]);
  lt.full_coeffs = conv(t.full_coeffs);
  for (const auto& fd : t.face_derivs)
    lt.face_derivs.push_back({fd.order, conv(fd.left), conv(fd.center), conv(fd.right)});
  lt.h_series = conv(t.h_series);
  for (int i = 0; i < t.r; ++i) {
    for (const auto& x : lt.sub_coeffs[i]) lt.flat_sub.push_back(x);
    for (const auto& x : lt.si_diag[i]) lt.flat_diag.push_back(x);
    for (const auto& row : lt.si_rows[i])
      for (const auto& x : row) lt.flat_rows.push_back(x);
  }
  return lt;
}

/// A 2r-1 window of data values tagged with its width and data mode.
template <ScalarField T>
struct StencilValues {
  std::vector<T> values;
  int r = 0;
  DataMode mode = DataMode::PointValues;

  void check_against(const LoadedTables<T>& lt) const {
    if (r != lt.r || mode != lt.mode ||
        values.size() != static_cast<std::size_t>(2 * lt.r - 1))
      throw DimensionMismatch();
    for (const auto& v : values)
      if (!ScalarTraits<T>::finite(v)) throw std::domain_error("stencil holds non-finite data");
  }
};

/// One reconstruction with all intermediates kept for diagnostics.
template <ScalarField T>
struct ReconstructionResult {
  T value{};
  std::vector<T> weights;
  std::vector<T> indicators;
  T d1{};
  T d2{};
  T d{};
};

namespace detail {
template <ScalarField T>
inline T dot(std::span<const T> c, const T* f) {
  T acc = ScalarTraits<T>::from_double(0.0);
  for (std::size_t i = 0; i < c.size(); ++i) acc = acc + c[i] * f[i];
  return acc;
}

/// Every indicator functional annihilates constants; evaluating on data
/// with the center value subtracted makes that exact in floating point
/// (constant windows give exactly zero indicators and ideal weights).
template <ScalarField T>
inline void center_window(std::span<const T> window, T* out) {
  const T c = window[window.size() / 2];
  for (std::size_t i = 0; i < window.size(); ++i) out[i] = window[i] - c;
}
}  // namespace detail

/// Jiang-Shu indicators I_i = f^T Q_i f evaluated through the exact LDL
/// factorization (sum of nonnegative terms), clamped at zero from below.
template <ScalarField T>
void smoothness_indicators(const LoadedTables<T>& lt, std::span<const T> window, T* out) {
  if (window.size() != static_cast<std::size_t>(2 * lt.r - 1)) throw DimensionMismatch();
  const T zero = ScalarTraits<T>::from_double(0.0);
  T centered[11];
  detail::center_window(window, centered);
  for (int i = 0; i < lt.r; ++i) {
    const T* f = centered + i;
    T acc = zero;
    for (int j = 0; j < lt.r; ++j) {
      const auto& row = lt.si_rows[i][j];
      T s = zero;
      for (std::size_t m = 0; m < row.size(); ++m) s = s + row[m] * f[j + static_cast<int>(m)];
      acc = acc + lt.si_diag[i][j] * s * s;
    }
    out[i] = acc < zero ? zero : acc;
  }
}

template <ScalarField T>
std::vector<T> smoothness_indicators(const LoadedTables<T>& lt, std::span<const T> window) {
  std::vector<T> out(lt.r);
  smoothness_indicators(lt, window, out.data());
  return out;
}

/// Squared undivided difference of order 2r-2 over the full window.
template <ScalarField T>
T d1_indicator(const LoadedTables<T>& lt, std::span<const T> window) {
  if (window.size() != lt.d1_coeffs.size()) throw DimensionMismatch();
  T centered[11];
  detail::center_window(window, centered);
  T u = detail::dot<T>(lt.d1_coeffs, centered);
  return u * u;
}

/// Discriminant B^2 - 4AC of the (2r-4)-th derivative parabola of the
/// full-stencil interpolant.
template <ScalarField T>
T d2_indicator(const LoadedTables<T>& lt, std::span<const T> window) {
  if (window.size() != lt.d2_a.size()) throw DimensionMismatch();
  T centered[11];
  detail::center_window(window, centered);
  T a = detail::dot<T>(lt.d2_a, centered);
  T b = detail::dot<T>(lt.d2_b, centered);
  T c = detail::dot<T>(lt.d2_c, centered);
  return b * b - ScalarTraits<T>::from_double(4.0) * a * c;
}

/// Harmonic-mean-style combination D of d1 and d2. With even s1 the
/// absolute value is a no-op and is not applied.
template <ScalarField T>
T combined_d(const T& d1, const T& d2, const WeightParams<T>& params) {
  T p1 = pow_int(d1, params.s1);
  T p2 = params.s1 % 2 == 0 ? pow_int(d2, params.s1) : pow_int(abs(d2), params.s1);
  return p1 * p2 / (p1 + p2 + params.eps);
}

/// Normalized weights for every variant. `d` is the combined indicator
/// (OWENO: combined_d of d1/d2; YC: d1 passed straight through).
template <ScalarField T>
void weights(const LoadedTables<T>& lt, const T* indicators, const T& d,
             const WeightParams<T>& params, T* out) {
  const T one = ScalarTraits<T>::from_double(1.0);
  const int r = lt.r;
  switch (params.variant) {
    case WeightVariant::JS:
      for (int i = 0; i < r; ++i) {
        T g = params.eps + indicators[i];
        out[i] = lt.ideal_weights[i] / (g * g);
      }
      break;
    case WeightVariant::Z: {
      T tau = abs(indicators[0] - indicators[r - 1]);
      for (int i = 0; i < r; ++i) {
        T ratio = tau / (indicators[i] + params.eps);
        out[i] = lt.ideal_weights[i] * (one + pow_int(ratio, params.s1));
      }
      break;
    }
    case WeightVariant::YC:
    case WeightVariant::OWENO: {
      // alpha_i = c_i (1 + d / (I_i^s1 + eps))^s2 with d = d1^s1 for YC
      for (int i = 0; i < r; ++i) {
        T denom = pow_int(indicators[i], params.s1) + params.eps;
        T base = one + d / denom;
        T amp = params.s2 == Rational(1) ? base
                : params.s2.is_integer()
                    ? pow_int(base, params.s2.numerator().template convert_to<long>())
                    : pow_rational(base, params.s2);
        out[i] = lt.ideal_weights[i] * amp;
      }
      break;
    }
  }
  T sum = ScalarTraits<T>::from_double(0.0);
  for (int i = 0; i < r; ++i) sum = sum + out[i];
  for (int i = 0; i < r; ++i) out[i] = out[i] / sum;
}

template <ScalarField T>
std::vector<T> smoothness_indicators(const LoadedTables<T>& lt, const StencilValues<T>& s) {
  s.check_against(lt);
  return smoothness_indicators(lt, std::span<const T>(s.values.data(), s.values.size()));
}

template <ScalarField T>
T d1_indicator(const LoadedTables<T>& lt, const StencilValues<T>& s) {
  s.check_against(lt);
  return d1_indicator(lt, std::span<const T>(s.values.data(), s.values.size()));
}

template <ScalarField T>
T d2_indicator(const LoadedTables<T>& lt, const StencilValues<T>& s) {
  s.check_against(lt);
  return d2_indicator(lt, std::span<const T>(s.values.data(), s.values.size()));
}

/// Optional diagnostics sink; when set, reconstruct() appends one CSV row
/// (I_i, d1, d2, D, omega_i) per call.
std::ostream*& trace_stream();

/// Full reconstruction of q(x_{1/2}) from a 2r-1 window.
template <ScalarField T>
ReconstructionResult<T> reconstruct(const LoadedTables<T>& lt, std::span<const T> window,
                                    const WeightParams<T>& params) {
  if (window.size() != static_cast<std::size_t>(2 * lt.r - 1)) throw DimensionMismatch();
  ReconstructionResult<T> res;
  res.indicators.resize(lt.r);
  res.weights.resize(lt.r);
  smoothness_indicators(lt, window, res.indicators.data());
  res.d1 = d1_indicator(lt, window);
  res.d2 = d2_indicator(lt, window);
  switch (params.variant) {
    case WeightVariant::OWENO:
      res.d = combined_d(res.d1, res.d2, params);
      break;
    case WeightVariant::YC:
      res.d = pow_int(res.d1, params.s1);
      break;
    default:
      res.d = ScalarTraits<T>::from_double(0.0);
  }
  weights(lt, res.indicators.data(), res.d, params, res.weights.data());
  // value computed on centered data, center added back: a constant window
  // reproduces itself exactly and cancellation stays mild
  T centered[11];
  detail::center_window(window, centered);
  T acc = ScalarTraits<T>::from_double(0.0);
  for (int i = 0; i < lt.r; ++i) {
    T p = detail::dot<T>(lt.sub_coeffs[i], centered + i);
    acc = acc + res.weights[i] * p;
  }
  res.value = acc + window[window.size() / 2];
  if (trace_stream() != nullptr) {
    auto& os = *trace_stream();
    for (int i = 0; i < lt.r; ++i) os << ScalarTraits<T>::to_string(res.indicators[i]) << ',';
    os << ScalarTraits<T>::to_string(res.d1) << ',' << ScalarTraits<T>::to_string(res.d2) << ','
       << ScalarTraits<T>::to_string(res.d);
    for (int i = 0; i < lt.r; ++i) os << ',' << ScalarTraits<T>::to_string(res.weights[i]);
    os << '\n';
  }
  return res;
}

namespace detail {

/// Hot-path reconstruction with the substencil width fixed at compile time;
/// identical arithmetic to the generic path over the flattened tables.
template <int R, ScalarField T>
T reconstruct_value_fixed(const LoadedTables<T>& lt, const T* window,
                          const WeightParams<T>& params) {
  constexpr int W = 2 * R - 1;
  const T zero = ScalarTraits<T>::from_double(0.0);
  const T one = ScalarTraits<T>::from_double(1.0);
  T c[W];
  const T ctr = window[R - 1];
  for (int i = 0; i < W; ++i) c[i] = window[i] - ctr;

  T ind[R];
  {
    const T* rows = lt.flat_rows.data();
    const T* diag = lt.flat_diag.data();
    constexpr int kRowBlock = R * (R + 1) / 2;
    for (int i = 0; i < R; ++i) {
      T acc = zero;
      const T* rp = rows + i * kRowBlock;
      for (int j = 0; j < R; ++j) {
        T s = zero;
        for (int m2 = 0; m2 < R - j; ++m2) s = s + rp[m2] * c[i + j + m2];
        acc = acc + diag[i * R + j] * s * s;
        rp += R - j;
      }
      ind[i] = acc < zero ? zero : acc;
    }
  }

  T d = zero;
  if (params.variant == WeightVariant::OWENO || params.variant == WeightVariant::YC) {
    T du = zero;
    for (int i = 0; i < W; ++i) du = du + lt.d1_coeffs[i] * c[i];
    T d1 = du * du;
    if (params.variant == WeightVariant::OWENO) {
      T a = zero, b = zero, cc = zero;
      for (int i = 0; i < W; ++i) {
        a = a + lt.d2_a[i] * c[i];
        b = b + lt.d2_b[i] * c[i];
        cc = cc + lt.d2_c[i] * c[i];
      }
      T d2 = b * b - ScalarTraits<T>::from_double(4.0) * a * cc;
      T p1 = params.s1 == 2 ? d1 * d1 : pow_int(d1, params.s1);
      T p2 = params.s1 == 2 ? d2 * d2
             : params.s1 % 2 == 0 ? pow_int(d2, params.s1)
                                  : pow_int(abs(d2), params.s1);
      d = p1 * p2 / (p1 + p2 + params.eps);
    } else {
      d = params.s1 == 2 ? d1 * d1 : pow_int(d1, params.s1);
    }
  }

  T w[R];
  switch (params.variant) {
    case WeightVariant::JS:
      for (int i = 0; i < R; ++i) {
        T g = params.eps + ind[i];
        w[i] = lt.ideal_weights[i] / (g * g);
      }
      break;
    case WeightVariant::Z: {
      T tau = abs(ind[0] - ind[R - 1]);
      for (int i = 0; i < R; ++i) {
        T ratio = tau / (ind[i] + params.eps);
        w[i] = lt.ideal_weights[i] *
               (one + (params.s1 == 2 ? ratio * ratio : pow_int(ratio, params.s1)));
      }
      break;
    }
    default:
      for (int i = 0; i < R; ++i) {
        T denom = (params.s1 == 2 ? ind[i] * ind[i] : pow_int(ind[i], params.s1)) + params.eps;
        T base = one + d / denom;
        T amp = params.s2 == Rational(1)   ? base
                : params.s2 == Rational(2) ? base * base
                : params.s2.is_integer()
                    ? pow_int(base, params.s2.numerator().template convert_to<long>())
                    : pow_rational(base, params.s2);
        w[i] = lt.ideal_weights[i] * amp;
      }
  }
  T sum = zero;
  for (int i = 0; i < R; ++i) sum = sum + w[i];
  T inv = one / sum;
  T acc = zero;
  const T* sub = lt.flat_sub.data();
  for (int i = 0; i < R; ++i) {
    T p = zero;
    for (int j = 0; j < R; ++j) p = p + sub[i * R + j] * c[i + j];
    acc = acc + (w[i] * inv) * p;
  }
  return acc + ctr;
}

}  // namespace detail

template <ScalarField T>
ReconstructionResult<T> reconstruct(const LoadedTables<T>& lt, const StencilValues<T>& s,
                                    const WeightParams<T>& params) {
  s.check_against(lt);
  return reconstruct(lt, std::span<const T>(s.values.data(), s.values.size()), params);
}

/// Lean path for solver loops: value only, no allocation, no tracing.
template <ScalarField T>
T reconstruct_value(const LoadedTables<T>& lt, const T* window, const WeightParams<T>& params) {
  switch (lt.r) {
    case 3: return detail::reconstruct_value_fixed<3>(lt, window, params);
    case 4: return detail::reconstruct_value_fixed<4>(lt, window, params);
    case 5: return detail::reconstruct_value_fixed<5>(lt, window, params);
    case 6: return detail::reconstruct_value_fixed<6>(lt, window, params);
    default: throw DimensionMismatch();
  }
}

}  // namespace oweno
