#include <cmath>

#include "doctest.h"
#include "oweno/order_lab.hpp"
#include "oweno/report.hpp"

using namespace oweno;
using DD = DoubleDouble;

TEST_CASE("test functions: cell averages agree with quadrature") {
  // composite Simpson on fine subdivisions as the independent check
  auto simpson = [](auto&& f, double a, double b) {
    const int n = 2000;
    double h = (b - a) / n, acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0 / (b - a);
  };
  for (int k : {0, 1, 3}) {
    auto tf = TestFunction<double>::pow_exp(k);
    auto direct = [&](double x) { return std::pow(x, k + 1) * std::exp(x); };
    for (auto [a, b] : {std::pair{0.1, 0.3}, {-0.5, -0.2}, {-0.05, 0.0}}) {
      CHECK(tf.cell_average(a, b) == doctest::Approx(simpson(direct, a, b)).epsilon(1e-10));
    }
  }
  auto jump = TestFunction<double>::jump_exp();
  CHECK(jump.cell_average(-0.2, 0.4) ==
        doctest::Approx(((1 - std::exp(-0.2)) + (std::exp(1.4) - std::exp(1.0))) / 0.6)
            .epsilon(1e-13));
  CHECK(jump.value(0.0) == 1.0);
  CHECK(jump.value(0.5) == doctest::Approx(std::exp(1.5)));
}

TEST_CASE("smooth study reproduces the reference orders at r=3") {
  auto stp = build_tables(3, DataMode::PointValues);
  auto stc = build_tables(3, DataMode::CellAverages);
  StudyWindow w{0, 6};

  auto ow = WeightParams<DD>::defaults(WeightVariant::OWENO, 3);
  auto rep = run_smooth_order_study<DD>(stp, ow, 3, w);
  CHECK(rep.averaged_order == doctest::Approx(5.0).epsilon(0.06));  // reference: 5.0056
  CHECK(rep.level_count == 6);
  CHECK(rep.levels.size() == 6);
  CHECK(rep.levels.front().n == 10);
  CHECK(rep.levels.back().n == 320);

  auto js = WeightParams<DD>::defaults(WeightVariant::JS, 3);
  auto repjs = run_smooth_order_study<DD>(stp, js, 2, w);
  CHECK(repjs.averaged_order == doctest::Approx(3.0).epsilon(0.11));  // reference: 3.0198

  auto repc = run_smooth_order_study<DD>(stc, ow, 0, w);
  CHECK(repc.averaged_order == doctest::Approx(5.0).epsilon(0.06));  // reference: 4.9983

  auto yc = WeightParams<DD>::defaults(WeightVariant::YC, 3);
  auto repyc = run_smooth_order_study<DD>(stp, yc, 3, w);
  CHECK(repyc.averaged_order < 4.5);
  CHECK(rep.averaged_order > repyc.averaged_order + 0.5);
}

TEST_CASE("local orders satisfy the log2-ratio identity") {
  auto st = build_tables(3, DataMode::PointValues);
  auto params = WeightParams<DD>::defaults(WeightVariant::OWENO, 3);
  auto rep = run_smooth_order_study<DD>(st, params, 1, {0, 5});
  double prev = -1.0;
  for (std::size_t j = 1; j < rep.levels.size(); ++j) {
    double ratio = rep.levels[j - 1].error / rep.levels[j].error;
    CHECK(rep.levels[j].local_order == doctest::Approx(std::log2(ratio)).epsilon(1e-9));
  }
  (void)prev;
}

TEST_CASE("discontinuous study: order ~ r for every variant and offset") {
  auto st = build_tables(3, DataMode::PointValues);
  StudyWindow w{0, 8};
  for (auto v : {WeightVariant::JS, WeightVariant::Z, WeightVariant::YC, WeightVariant::OWENO}) {
    auto params = WeightParams<DD>::defaults(v, 3);
    for (int theta : {-1, 0, 1}) {
      auto rep = run_discontinuous_order_study<DD>(st, params, theta, w);
      CHECK(rep.averaged_order > 3.0 - 0.3);
      CHECK(rep.averaged_order < 3.0 + 0.3);
      // structural consequence of J_r != empty: never below r - 0.3
      CHECK(rep.averaged_order > st.r - 0.3);
    }
  }
  auto params = WeightParams<DD>::defaults(WeightVariant::OWENO, 3);
  CHECK_THROWS_AS(run_discontinuous_order_study<DD>(st, params, 3, w), std::invalid_argument);
}

TEST_CASE("r=4 discontinuous study at theta=-2 stays near r") {
  auto st = build_tables(4, DataMode::CellAverages);
  auto params = WeightParams<DD>::defaults(WeightVariant::OWENO, 4);
  auto rep = run_discontinuous_order_study<DD>(st, params, -2, {0, 8});
  CHECK(rep.averaged_order == doctest::Approx(4.0).epsilon(0.1));  // reference: 4.0073 at theta=-2
}

TEST_CASE("slope probes recover the indicator asymptotics") {
  auto st = build_tables(3, DataMode::PointValues);
  auto params = WeightParams<DD>::defaults(WeightVariant::OWENO, 3);
  StudyWindow w{0, 8};
  // I_i ~ h^{2(k+1)} for a critical point of order k at the target
  for (int k : {0, 1}) {
    for (int i = 0; i < 3; ++i) {
      double s = slope_probe<DD>(st, params, {ProbeQuantity::Kind::Indicator, i},
                                 TestFunction<DD>::pow_exp(k), 0, w);
      CHECK(std::abs(s - 2.0 * (k + 1)) < 0.3);
    }
  }
  // d1 ~ h^{4r-4} on generic smooth data
  double sd1 = slope_probe<DD>(st, params, {ProbeQuantity::Kind::D1, 0},
                               TestFunction<DD>::pow_exp(0), 0, w);
  CHECK(std::abs(sd1 - 8.0) < 0.3);
  // d2 ~ h^{4r-3} at the corner case k = 2r-3
  double sd2 = slope_probe<DD>(st, params, {ProbeQuantity::Kind::D2, 0},
                               TestFunction<DD>::pow_exp(3), 0, w);
  CHECK(sd2 > 9.0 - 0.3);
}

TEST_CASE("precision guard trips with a useful level suggestion") {
  auto st = build_tables(3, DataMode::PointValues);
  auto params = WeightParams<double>::defaults(WeightVariant::OWENO, 3);
  // f64: h^5 > 100*eps requires h > ~1.9e-3, so N=640 (j=7) is unsafe
  CHECK_THROWS_AS(run_smooth_order_study<double>(st, params, 0, StudyWindow{0, 8}),
                  PrecisionInsufficient);
  try {
    run_smooth_order_study<double>(st, params, 0, StudyWindow{0, 8});
  } catch (const PrecisionInsufficient& e) {
    CHECK(e.max_safe_j == 6);
    auto rep = run_smooth_order_study<double>(st, params, 0, StudyWindow{0, e.max_safe_j});
    CHECK(rep.averaged_order > 4.0);
  }
}

TEST_CASE("csv and markdown report emission") {
  auto st = build_tables(3, DataMode::PointValues);
  std::vector<ConvergenceReport> reps;
  for (auto v : {WeightVariant::JS, WeightVariant::OWENO}) {
    auto params = WeightParams<DD>::defaults(v, 3);
    for (int k : {0, 1}) reps.push_back(run_smooth_order_study<DD>(st, params, k, {0, 4}));
  }
  auto csv = convergence_csv(reps);
  CHECK(csv.rfind("variant,r,mode,k_or_theta,N,error,local_order\n", 0) == 0);
  CHECK(csv.find("js,3,point,0,10,") != std::string::npos);
  CHECK(convergence_csv(reps) == csv);  // deterministic
  auto md = convergence_markdown(reps, "k");
  CHECK(md.find("| k |") != std::string::npos);
  CHECK(md.find("oweno") != std::string::npos);
}
