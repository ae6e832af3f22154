#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "oweno/claw.hpp"

namespace oweno {

/// The 1D benchmark problems: linear advection, the two Burgers setups,
/// the customized flux with a third-order critical point, and the Mach-3
/// shock / sine-wave interaction for the Euler system.
template <ScalarField T>
struct ExampleProblem {
  Problem<T> problem;
  std::function<void(const T&, double, T*)> oracle;  // empty when no closed form
  T domain_a{};
  T domain_b{};
  std::string name;
};

template <ScalarField T>
ExampleProblem<T> make_example(const std::string& name, double cfl = -1.0,
                               double t_final = -1.0) {
  constexpr double kPi = std::numbers::pi;
  auto fd = [](double x) { return ScalarTraits<T>::from_double(x); };
  ExampleProblem<T> s;
  s.name = name;
  s.domain_a = fd(-1.0);
  s.domain_b = fd(1.0);
  auto sine_init = [fd](const T& x, T* u) {
    double xv = ScalarTraits<T>::to_double(x);
    u[0] = fd(0.25 + 0.5 * std::sin(kPi * xv));
  };
  auto sine_characteristics = [fd](std::function<T(T)> dflux, std::function<T(T)> d2flux) {
    Characteristics<T> ch;
    ch.u0 = [fd](T y) {
      return fd(0.25 + 0.5 * std::sin(kPi * ScalarTraits<T>::to_double(y)));
    };
    ch.du0 = [fd](T y) {
      return fd(0.5 * kPi * std::cos(kPi * ScalarTraits<T>::to_double(y)));
    };
    ch.dflux = std::move(dflux);
    ch.d2flux = std::move(d2flux);
    ch.umin = fd(-0.25);
    ch.umax = fd(0.75);
    return ch;
  };

  if (name == "advection") {
    s.problem.law = make_scalar_law<T>([](T u) { return u; }, [fd](T) { return fd(1.0); });
    s.problem.initial = sine_init;
    s.problem.final_time = t_final < 0 ? 1.0 : t_final;
    s.problem.scaled_dt = true;
    s.problem.cfl = cfl < 0 ? 1.0 : cfl;
    s.oracle = [fd](const T& x, double t, T* u) {
      double xv = ScalarTraits<T>::to_double(x);
      u[0] = fd(0.25 + 0.5 * std::sin(kPi * (xv - t)));
    };
  } else if (name == "burgers" || name == "burgers-shock") {
    s.problem.law =
        make_scalar_law<T>([fd](T u) { return fd(0.5) * u * u; }, [](T u) { return u; });
    s.problem.initial = sine_init;
    const bool shock = name == "burgers-shock";
    s.problem.final_time = t_final < 0 ? (shock ? 12.0 : 0.3) : t_final;
    s.problem.scaled_dt = !shock;
    s.problem.cfl = cfl < 0 ? (shock ? 0.4 : 1.0) : cfl;
    if (!shock) {
      auto ch = sine_characteristics([](T u) { return u; }, [fd](T) { return fd(1.0); });
      s.oracle = [ch](const T& x, double t, T* u) { u[0] = ch(x, t, 1e-14); };
    }
  } else if (name == "custom") {
    s.problem.law = make_scalar_law<T>(
        [fd](T u) { return fd(0.5) * u * u + fd(0.25) * u; },
        [fd](T u) { return u + fd(0.25); });
    s.problem.initial = sine_init;
    s.problem.final_time = t_final < 0 ? 0.3 : t_final;
    s.problem.scaled_dt = true;
    s.problem.cfl = cfl < 0 ? 1.0 : cfl;
    auto ch = sine_characteristics([fd](T u) { return u + fd(0.25); },
                                   [fd](T) { return fd(1.0); });
    s.oracle = [ch](const T& x, double t, T* u) { u[0] = ch(x, t, 1e-14); };
  } else if (name == "shu-osher") {
    s.domain_a = fd(-5.0);
    s.domain_b = fd(5.0);
    const double gamma = 1.4;
    s.problem.law = make_euler_law<T>(fd(gamma));
    const double rho_l = 27.0 / 7.0;
    const double v_l = 4.0 * std::sqrt(35.0) / 9.0;
    const double p_l = 31.0 / 3.0;
    s.problem.initial = [=](const T& x, T* u) {
      double xv = ScalarTraits<T>::to_double(x);
      double rho = xv <= -4.0 ? rho_l : 1.0 + std::sin(5.0 * xv) / 5.0;
      double v = xv <= -4.0 ? v_l : 0.0;
      double p = xv <= -4.0 ? p_l : 1.0;
      u[0] = fd(rho);
      u[1] = fd(rho * v);
      u[2] = fd(p / (gamma - 1.0) + 0.5 * rho * v * v);
    };
    s.problem.boundary = BoundaryKind::InflowOutflow;
    std::vector<T> left(3);
    s.problem.initial(fd(-5.0), left.data());
    s.problem.left_state = left;
    s.problem.final_time = t_final < 0 ? 1.8 : t_final;
    s.problem.scaled_dt = false;
    s.problem.cfl = cfl < 0 ? 0.4 : cfl;
  } else {
    throw std::invalid_argument("unknown example problem '" + name + "'");
  }
  if (name != "shu-osher") s.problem.boundary = BoundaryKind::Periodic;
  return s;
}

}  // namespace oweno
