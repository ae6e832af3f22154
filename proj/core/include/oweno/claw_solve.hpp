#pragma once

#include <chrono>
#include <cmath>

#include "oweno/claw.hpp"

namespace oweno {

template <ScalarField T>
SolveResult<T> solve(const Problem<T>& problem, const Grid1D<T>& grid, const SchemeTables& st,
                     const WeightParams<T>& params,
                     const std::function<void(const T&, double, T*)>& oracle) {
  params.validate(st.r);
  const bool afd = problem.flux_form == FluxForm::AfdPointInterpolation;
  if (afd && st.mode != DataMode::PointValues)
    throw std::invalid_argument("solve: the AFD flux form needs PointValues tables");
  if (!afd && st.mode != DataMode::CellAverages)
    throw std::invalid_argument("solve: the classic flux form needs CellAverages tables");
  if (grid.n < 2 * (st.r + 1)) throw std::invalid_argument("solve: grid too coarse (N >= 2(r+1))");
  if (problem.cfl <= 0.0 || problem.cfl > 1.5) throw std::invalid_argument("solve: bad CFL");
  auto lt = load_tables<T>(st);
  const int m = problem.law.ncomp;

  SolveResult<T> out;
  auto& state = out.state;
  state.n = grid.n;
  state.ncomp = m;
  state.u.resize(static_cast<std::size_t>(m) * grid.n);
  {
    std::vector<T> buf(m);
    for (long i = 0; i < grid.n; ++i) {
      problem.initial(grid.center(i), buf.data());
      for (int c = 0; c < m; ++c) state.comp(c)[i] = buf[c];
    }
  }

  const double hd = ScalarTraits<T>::to_double(grid.h());
  const double scaled = problem.cfl * std::pow(hd, (2.0 * st.r - 1.0) / 3.0);
  const double tfinal = problem.final_time;

  RhsWorkspace<T> ws;
  RkWorkspace<T> rk;
  auto rhs_op = [&](const std::vector<T>& u, std::vector<T>& k) {
    spatial_rhs<T>(std::span<const T>(u.data(), u.size()), state.n, state.time, grid, lt,
                   params, problem, ws, k);
  };

  auto t0 = std::chrono::steady_clock::now();
  while (state.time < tfinal - 1e-14) {
    double dt;
    if (problem.scaled_dt) {
      dt = scaled;
    } else {
      std::vector<T> cellstate(m);
      T amax = ScalarTraits<T>::from_double(0.0);
      for (long i = 0; i < state.n; ++i) {
        for (int c = 0; c < m; ++c) cellstate[c] = state.comp(c)[i];
        T s = problem.law.max_speed(cellstate.data());
        if (s > amax) amax = s;
      }
      double a = std::max(ScalarTraits<T>::to_double(amax), 1e-12);
      dt = problem.cfl * hd / a;
    }
    dt = std::min(dt, tfinal - state.time);
    ssp_rk_step(state, ScalarTraits<T>::from_double(dt), rhs_op, rk);
    state.time += dt;
    for (std::size_t i = 0; i < state.u.size(); ++i)
      if (!ScalarTraits<T>::finite(state.u[i]))
        throw BlowUp(state.time, static_cast<long>(i % static_cast<std::size_t>(state.n)));
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (oracle) {
    std::vector<T> exact(m);
    double l1 = 0.0, linf = 0.0;
    for (long i = 0; i < state.n; ++i) {
      oracle(grid.center(i), state.time, exact.data());
      for (int c = 0; c < m; ++c) {
        double e = std::abs(ScalarTraits<T>::to_double(state.comp(c)[i] - exact[c]));
        l1 += e;
        linf = std::max(linf, e);
      }
    }
    out.l1_error = l1 * hd / m;
    out.linf_error = linf;
  }
  return out;
}

}  // namespace oweno
