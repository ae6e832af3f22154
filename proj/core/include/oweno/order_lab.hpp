#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "oweno/reconstruct.hpp"
#include "oweno/transcendental.hpp"

namespace oweno {

struct PrecisionInsufficient : std::runtime_error {
  int max_safe_j;
  explicit PrecisionInsufficient(int safe_j)
      : std::runtime_error("requested refinement exceeds the scalar field's precision floor"
                           " (largest safe level index: " + std::to_string(safe_j) + ")"),
        max_safe_j(safe_j) {}
};

struct DegenerateData : std::runtime_error {
  DegenerateData() : std::runtime_error("probe quantity underflowed to zero") {}
};

/// Analytic test data for the algebraic accuracy studies. PowExp is the
/// family x^{k+1} e^x with a critical point of order k at 0; JumpExp is
/// e^x for x <= 0 and e^{x+1} for x > 0.
template <ScalarField T>
struct TestFunction {
  enum class Family { PowExp, JumpExp };
  Family family = Family::PowExp;
  int k = 0;  // critical-point order (PowExp only)
  std::string id;

  static TestFunction pow_exp(int k) {
    return {Family::PowExp, k, "x^" + std::to_string(k + 1) + "*e^x"};
  }
  static TestFunction jump_exp() { return {Family::JumpExp, -1, "exp-jump"}; }

  T value(const T& x) const {
    if (family == Family::JumpExp) {
      const T zero = ScalarTraits<T>::from_double(0.0);
      const T one = ScalarTraits<T>::from_double(1.0);
      return x <= zero ? exp_scalar(x) : exp_scalar(x + one);
    }
    return pow_int(x, k + 1) * exp_scalar(x);
  }

  /// Exact cell average over [a, b] via the closed-form antiderivative
  /// int x^n e^x dx = e^x sum_m (-1)^{n-m} (n!/m!) x^m.
  T cell_average(const T& a, const T& b) const {
    if (family == Family::JumpExp) {
      const T zero = ScalarTraits<T>::from_double(0.0);
      const T one = ScalarTraits<T>::from_double(1.0);
      auto left = [](const T& x) { return exp_scalar(x); };    // antiderivative of e^x
      auto right = [&](const T& x) { return exp_scalar(x + one); };
      T total;
      if (b <= zero)
        total = left(b) - left(a);
      else if (a >= zero)
        total = right(b) - right(a);
      else
        total = (left(zero) - left(a)) + (right(b) - right(zero));
      return total / (b - a);
    }
    const int n = k + 1;
    auto anti = [&](const T& x) {
      T acc = ScalarTraits<T>::from_double(0.0);
      Rational coeff(1);  // n!/m! at m = n
      T xp = pow_int(x, n);
      for (int m = n; m >= 0; --m) {
        T term = ScalarTraits<T>::from_rational((n - m) % 2 == 0 ? coeff : -coeff) * xp;
        acc = acc + term;
        if (m > 0) {
          coeff *= Rational(m);
          xp = xp / x;  // safe: x never 0 at cell endpoints used here
        }
      }
      return acc * exp_scalar(x);
    };
    // Guard the xp/x path when an endpoint is exactly 0.
    const T zero = ScalarTraits<T>::from_double(0.0);
    auto anti_safe = [&](const T& x) {
      if (!(x == zero)) return anti(x);
      // antiderivative at 0: only the m=0 term survives: (-1)^n n!
      Rational f(1);
      for (int i = 2; i <= n; ++i) f *= Rational(i);
      return ScalarTraits<T>::from_rational(n % 2 == 0 ? f : -f);
    };
    return (anti_safe(b) - anti_safe(a)) / (b - a);
  }
};

/// Dyadic refinement window: grids N_j = 5 * 2^j for j_lo <= j <= j_hi.
/// The J = j_hi - j_lo reported levels are the refinement ratios, labeled
/// by their finer grid.
struct StudyWindow {
  int j_lo = 0;
  int j_hi = 6;
  int levels() const { return j_hi - j_lo; }
};

struct LevelEntry {
  long n = 0;
  double error = 0.0;
  double local_order = 0.0;
  bool in_average = true;
};

struct ConvergenceReport {
  WeightVariant variant{};
  int r = 0;
  DataMode mode{};
  std::string function_id;
  int k_or_theta = 0;
  std::vector<LevelEntry> levels;
  double averaged_order = 0.0;
  int level_count = 0;
};

namespace detail {

/// Trimmed mean: the single smallest and single largest ratio are excluded
/// (desk-scale runs hit superconvergence spikes that long refinement ladders
/// average away). Falls back to the plain mean below four ratios.
inline double averaged_order(std::vector<LevelEntry>& levels) {
  if (levels.size() >= 4) {
    auto lo = std::min_element(levels.begin(), levels.end(),
                               [](auto& a, auto& b) { return a.local_order < b.local_order; });
    lo->in_average = false;
    auto hi = std::max_element(levels.begin(), levels.end(),
                               [](auto& a, auto& b) { return a.local_order < b.local_order; });
    hi->in_average = false;
  }
  double sum = 0.0;
  int count = 0;
  for (const auto& l : levels)
    if (l.in_average) {
      sum += l.local_order;
      ++count;
    }
  return count > 0 ? sum / count : 0.0;
}

template <ScalarField T>
void check_precision(int r, const StudyWindow& w) {
  const double eps = ScalarTraits<T>::to_double(ScalarTraits<T>::epsilon());
  auto floor_ok = [&](int j) {
    double h = 1.0 / (5.0 * std::ldexp(1.0, j));
    return std::pow(h, 2 * r - 1) > 100.0 * eps;
  };
  if (!floor_ok(w.j_hi)) {
    int safe = w.j_hi;
    while (safe > 0 && !floor_ok(safe)) --safe;
    throw PrecisionInsufficient(safe);
  }
}

/// Window of 2r-1 samples on the grid x_i = (i - 1/2 + theta) h.
template <ScalarField T>
std::vector<T> sample_window(const TestFunction<T>& f, int r, DataMode mode, int theta,
                             const Rational& h_exact) {
  const T h = ScalarTraits<T>::from_rational(h_exact);
  std::vector<T> window;
  window.reserve(2 * r - 1);
  for (int i = -r + 1; i <= r - 1; ++i) {
    if (mode == DataMode::PointValues) {
      T x = ScalarTraits<T>::from_rational((Rational(2 * (i + theta) - 1) / Rational(2)) * h_exact);
      window.push_back(f.value(x));
    } else {
      T a = ScalarTraits<T>::from_rational(Rational(i + theta - 1) * h_exact);
      T b = ScalarTraits<T>::from_rational(Rational(i + theta) * h_exact);
      window.push_back(f.cell_average(a, b));
    }
  }
  (void)h;
  return window;
}

}  // namespace detail

template <ScalarField T>
ConvergenceReport run_order_study(const SchemeTables& st, const WeightParams<T>& params,
                                  const TestFunction<T>& f, int theta, const StudyWindow& w) {
  params.validate(st.r);
  if (w.levels() < 1 || w.j_lo < 0) throw std::invalid_argument("order study: bad window");
  detail::check_precision<T>(st.r, w);
  auto lt = load_tables<T>(st);

  ConvergenceReport rep;
  rep.variant = params.variant;
  rep.r = st.r;
  rep.mode = st.mode;
  rep.function_id = f.id;
  rep.k_or_theta = f.family == TestFunction<T>::Family::PowExp ? f.k : theta;
  rep.level_count = w.levels();

  std::vector<double> errors;
  std::vector<long> ns;
  for (int j = w.j_lo; j <= w.j_hi; ++j) {
    long n = 5L << j;
    Rational h = Rational(1) / Rational(n);
    auto window = detail::sample_window(f, st.r, st.mode, theta, h);
    auto res = reconstruct<T>(lt, window, params);
    T target = f.value(ScalarTraits<T>::from_rational(Rational(theta) * h));
    errors.push_back(ScalarTraits<T>::to_double(abs(res.value - target)));
    ns.push_back(n);
  }
  for (std::size_t j = 1; j < errors.size(); ++j) {
    LevelEntry e;
    e.n = ns[j];
    e.error = errors[j];
    e.local_order = std::log2(errors[j - 1] / errors[j]);
    rep.levels.push_back(e);
  }
  rep.averaged_order = detail::averaged_order(rep.levels);
  return rep;
}

/// Example-1 study: f_k on the grid x_i = (i-1/2)h, reconstruction at 0.
template <ScalarField T>
ConvergenceReport run_smooth_order_study(const SchemeTables& st, const WeightParams<T>& params,
                                         int k, const StudyWindow& w) {
  if (k < 0 || k > 2 * st.r - 3) throw std::invalid_argument("smooth study: k out of range");
  return run_order_study(st, params, TestFunction<T>::pow_exp(k), 0, w);
}

/// Example-2 study: the jump function on x_i = (i-1/2+theta)h, target theta*h.
template <ScalarField T>
ConvergenceReport run_discontinuous_order_study(const SchemeTables& st,
                                                const WeightParams<T>& params, int theta,
                                                const StudyWindow& w) {
  if (theta < -st.r + 2 || theta > st.r - 1)
    throw std::invalid_argument("discontinuous study: theta out of range");
  return run_order_study(st, params, TestFunction<T>::jump_exp(), theta, w);
}

struct ProbeQuantity {
  enum class Kind { Indicator, D1, D2, CombinedD };
  Kind kind = Kind::D1;
  int index = 0;  // substencil index for Kind::Indicator
};

/// Least-squares slope of log2(quantity) against log2(h) over the window.
template <ScalarField T>
double slope_probe(const SchemeTables& st, const WeightParams<T>& params, ProbeQuantity q,
                   const TestFunction<T>& f, int theta, const StudyWindow& w) {
  auto lt = load_tables<T>(st);
  std::vector<double> xs, ys;
  for (int j = w.j_lo; j <= w.j_hi; ++j) {
    long n = 5L << j;
    Rational h = Rational(1) / Rational(n);
    auto window = detail::sample_window(f, st.r, st.mode, theta, h);
    auto res = reconstruct<T>(lt, window, params);
    T v;
    switch (q.kind) {
      case ProbeQuantity::Kind::Indicator:
        v = res.indicators.at(static_cast<std::size_t>(q.index));
        break;
      case ProbeQuantity::Kind::D1:
        v = res.d1;
        break;
      case ProbeQuantity::Kind::D2:
        v = abs(res.d2);
        break;
      case ProbeQuantity::Kind::CombinedD:
        v = res.d;
        break;
    }
    double vd = ScalarTraits<T>::to_double(v);
    if (vd <= 0.0) throw DegenerateData();
    xs.push_back(std::log2(1.0 / static_cast<double>(n)));
    ys.push_back(std::log2(vd));
  }
  const double m = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace oweno
