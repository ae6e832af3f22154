// Command-line front end: coefficient-table dumps, algebraic order studies,
// and the 1D conservation-law solver with its convergence harness.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <numbers>

#include "oweno/problems.hpp"
#include "oweno/order_lab.hpp"
#include "oweno/report.hpp"
#include "oweno/run_config.hpp"

namespace fs = std::filesystem;
using namespace oweno;

namespace {

constexpr double kPi = std::numbers::pi;

struct CliState {
  RunConfig cfg;
  std::string trace_path;
  std::ofstream trace_file;

  void enable_trace(int r) {
    if (trace_path.empty()) return;
    trace_file.open(trace_path);
    for (int i = 0; i < r; ++i) trace_file << 'I' << i << ',';
    trace_file << "d1,d2,d";
    for (int i = 0; i < r; ++i) trace_file << ",w" << i;
    trace_file << '\n';
    trace_stream() = &trace_file;
  }
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

int cmd_tables(const CliState& st) {
  auto t = build_tables(st.cfg.r, st.cfg.data_mode());
  fs::path out = fs::path(st.cfg.output_dir) /
                 ("tables-r" + std::to_string(st.cfg.r) + "-" + st.cfg.mode + ".txt");
  write_file(out, serialize_tables(t));
  std::cout << out.string() << '\n';
  return 0;
}

template <ScalarField T>
std::vector<ConvergenceReport> study_matrix(const RunConfig& cfg, bool discontinuous) {
  auto st = build_tables(cfg.r, cfg.data_mode());
  StudyWindow w{cfg.j_lo, cfg.j_hi};
  std::vector<ConvergenceReport> reports;
  for (auto v : cfg.weight_variants()) {
    auto params = cfg.params_for<T>(v);
    if (discontinuous) {
      for (int theta = -cfg.r + 2; theta <= cfg.r - 1; ++theta)
        reports.push_back(run_discontinuous_order_study<T>(st, params, theta, w));
    } else {
      for (int k = 0; k <= 2 * cfg.r - 3; ++k)
        reports.push_back(run_smooth_order_study<T>(st, params, k, w));
    }
  }
  return reports;
}

int cmd_study(CliState& st, bool discontinuous) {
  st.enable_trace(st.cfg.r);
  auto reports = st.cfg.backend == "dd" ? study_matrix<DoubleDouble>(st.cfg, discontinuous)
                                        : study_matrix<double>(st.cfg, discontinuous);
  const char* stem = discontinuous ? "disc-study" : "order-study";
  fs::path dir(st.cfg.output_dir);
  write_file(dir / (std::string(stem) + ".csv"), convergence_csv(reports));
  auto md = convergence_markdown(reports, discontinuous ? "theta" : "k");
  write_file(dir / (std::string(stem) + ".md"), md);
  std::cout << md;
  return 0;
}

template <ScalarField T>
void dump_solution(const fs::path& path, const ExampleProblem<T>& setup, const Grid1D<T>& grid,
                   const SolverState<T>& state) {
  std::ostringstream os;
  const bool euler = state.ncomp == 3;
  for (long i = 0; i < state.n; ++i) {
    double x = ScalarTraits<T>::to_double(grid.center(i));
    if (euler) {
      double rho = ScalarTraits<T>::to_double(state.comp(0)[i]);
      double mom = ScalarTraits<T>::to_double(state.comp(1)[i]);
      double e = ScalarTraits<T>::to_double(state.comp(2)[i]);
      double v = mom / rho;
      double p = 0.4 * (e - 0.5 * rho * v * v);
      os << format_sci(x) << ' ' << format_sci(rho) << ' ' << format_sci(v) << ' '
         << format_sci(p) << '\n';
    } else {
      os << format_sci(x) << ' ' << format_sci(ScalarTraits<T>::to_double(state.u[i])) << '\n';
    }
  }
  write_file(path, os.str());
}

template <ScalarField T>
int run_solve(CliState& st, const std::string& timing_csv, double alpha_safety,
              const std::string& flux_form) {
  st.enable_trace(st.cfg.r);
  // the data mode is tied to the flux formulation, not to --mode (which
  // steers the algebraic studies only)
  const bool afd = flux_form != "classic";
  auto tables =
      build_tables(st.cfg.r, afd ? DataMode::PointValues : DataMode::CellAverages);
  auto setup = make_example<T>(st.cfg.problem, st.cfg.cfl, st.cfg.final_time);
  if (alpha_safety > 0) setup.problem.alpha_safety = alpha_safety;
  if (!afd) setup.problem.flux_form = FluxForm::ClassicCellAverage;
  fs::path dir(st.cfg.output_dir);
  std::ostringstream timing;
  for (auto v : st.cfg.weight_variants()) {
    auto params = st.cfg.params_for<T>(v);
    for (long n : st.cfg.n_list) {
      Grid1D<T> grid{setup.domain_a, setup.domain_b, n};
      auto res = solve<T>(setup.problem, grid, tables, params, setup.oracle);
      fs::path out = dir / (setup.name + "-" + to_string(v) + "-N" + std::to_string(n) + ".dat");
      dump_solution(out, setup, grid, res.state);
      std::cout << out.string();
      if (res.l1_error >= 0)
        std::cout << "  L1=" << format_sci(res.l1_error)
                  << "  Linf=" << format_sci(res.linf_error);
      std::cout << '\n';
      timing << to_string(v) << ',' << n << ',' << format_sci(res.seconds) << '\n';
    }
  }
  if (!timing_csv.empty()) {
    bool fresh = !fs::exists(timing_csv) || fs::file_size(timing_csv) == 0;
    std::ofstream out(timing_csv, std::ios::app);
    if (fresh) out << "scheme,N,seconds\n";
    out << timing.str();
  }
  return 0;
}

template <ScalarField T>
int run_convergence(CliState& st) {
  auto tables = build_tables(st.cfg.r, DataMode::PointValues);
  auto setup = make_example<T>(st.cfg.problem, st.cfg.cfl, st.cfg.final_time);
  if (!setup.oracle)
    throw ConfigError("convergence requires a problem with an exact solution");
  struct Row {
    WeightVariant v;
    long n;
    double l1, linf;
  };
  std::vector<std::future<Row>> futures;
  std::vector<Row> rows;
  auto launch = [&](WeightVariant v, long n) {
    return std::async(st.cfg.jobs > 1 ? std::launch::async : std::launch::deferred,
                      [&, v, n]() -> Row {
                        auto params = st.cfg.params_for<T>(v);
                        Grid1D<T> grid{setup.domain_a, setup.domain_b, n};
                        auto res = solve<T>(setup.problem, grid, tables, params, setup.oracle);
                        return {v, n, res.l1_error, res.linf_error};
                      });
  };
  for (auto v : st.cfg.weight_variants())
    for (long n : st.cfg.n_list) futures.push_back(launch(v, n));
  for (auto& f : futures) rows.push_back(f.get());

  std::ostringstream csv;
  csv << "variant,N,l1_error,l1_rate,linf_error,linf_rate\n";
  std::ostringstream table;
  for (auto v : st.cfg.weight_variants()) {
    double prev1 = -1, previ = -1;
    table << "# " << setup.name << " " << to_string(v) << " (r=" << st.cfg.r << ")\n";
    for (long n : st.cfg.n_list) {
      const Row* row = nullptr;
      for (const auto& r2 : rows)
        if (r2.v == v && r2.n == n) row = &r2;
      double r1 = prev1 > 0 ? std::log2(prev1 / row->l1) : 0.0;
      double ri = previ > 0 ? std::log2(previ / row->linf) : 0.0;
      csv << to_string(v) << ',' << n << ',' << format_sci(row->l1) << ','
          << format_sci(r1) << ',' << format_sci(row->linf) << ',' << format_sci(ri) << '\n';
      char line[160];
      std::snprintf(line, sizeof line, "N=%5ld  L1=%.3e rate=%5.2f  Linf=%.3e rate=%5.2f\n",
                    n, row->l1, r1, row->linf, ri);
      table << line;
      prev1 = row->l1;
      previ = row->linf;
    }
  }
  write_file(fs::path(st.cfg.output_dir) / ("convergence-" + setup.name + ".csv"), csv.str());
  std::cout << table.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CliState st;
  CLI::App app{"WENO reconstruction laboratory and 1D conservation-law solver"};
  app.set_config("--config", "", "key = value configuration file");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  auto& cfg = st.cfg;
  app.add_option("--output-dir", cfg.output_dir, "directory for emitted files");
  app.add_option("--trace", st.trace_path, "append per-reconstruction diagnostics CSV");

  auto add_common = [&](CLI::App* sub, bool with_variants) {
    sub->add_option("--r", cfg.r, "substencil width (3..6)");
    sub->add_option("--mode", cfg.mode, "data mode: point|cell");
    if (with_variants) {
      sub->add_option("--variant", cfg.variants, "weight variants: js z yc oweno");
      sub->add_option("--s1", cfg.s1, "exponent s1 override");
      sub->add_option("--s2", cfg.s2, "exponent s2 override (rational)");
      sub->add_option("--eps", cfg.eps, "epsilon override");
      sub->add_option("--backend", cfg.backend, "scalar field: f64|dd");
    }
  };

  auto* tables_cmd = app.add_subcommand("tables", "dump exact coefficient tables");
  add_common(tables_cmd, false);

  auto* order_cmd = app.add_subcommand("order-study", "smooth accuracy study (Example 1)");
  add_common(order_cmd, true);
  order_cmd->add_option("--level-lo", cfg.j_lo, "coarsest level index (N = 5*2^j)");
  order_cmd->add_option("--level-hi", cfg.j_hi, "finest level index");

  auto* disc_cmd = app.add_subcommand("disc-study", "discontinuous accuracy study (Example 2)");
  add_common(disc_cmd, true);
  disc_cmd->add_option("--level-lo", cfg.j_lo, "coarsest level index");
  disc_cmd->add_option("--level-hi", cfg.j_hi, "finest level index");

  std::string timing_csv;
  auto* solve_cmd = app.add_subcommand("solve", "integrate one problem and dump snapshots");
  add_common(solve_cmd, true);
  solve_cmd->add_option("--problem", cfg.problem,
                        "advection|burgers|custom|burgers-shock|shu-osher");
  solve_cmd->add_option("--n", cfg.n_list, "grid resolutions");
  solve_cmd->add_option("--cfl", cfg.cfl, "CFL number");
  solve_cmd->add_option("--t-final", cfg.final_time, "final time override");
  solve_cmd->add_option("--timing-csv", timing_csv, "append wall-clock rows here");
  double alpha_safety = -1.0;
  std::string flux_form = "afd";
  solve_cmd->add_option("--alpha-safety", alpha_safety, "LLF speed safety factor");
  solve_cmd->add_option("--flux-form", flux_form, "afd|classic flux-difference formulation");

  auto* conv_cmd = app.add_subcommand("convergence", "grid-refinement rate study");
  add_common(conv_cmd, true);
  conv_cmd->add_option("--problem", cfg.problem, "problem with an exact solution");
  conv_cmd->add_option("--n", cfg.n_list, "grid resolutions (increasing)");
  conv_cmd->add_option("--cfl", cfg.cfl, "CFL number");
  conv_cmd->add_option("--t-final", cfg.final_time, "final time override");
  conv_cmd->add_option("--jobs", cfg.jobs, "parallel (variant, N) runs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  try {
    std::string name = app.get_subcommands().front()->get_name();
    cfg.validate(name);
    fs::create_directories(cfg.output_dir);
    if (name == "tables") return cmd_tables(st);
    if (name == "order-study") return cmd_study(st, false);
    if (name == "disc-study") return cmd_study(st, true);
    if (name == "solve")
      return cfg.backend == "dd"
                 ? run_solve<DoubleDouble>(st, timing_csv, alpha_safety, flux_form)
                 : run_solve<double>(st, timing_csv, alpha_safety, flux_form);
    if (name == "convergence")
      return cfg.backend == "dd" ? run_convergence<DoubleDouble>(st)
                                 : run_convergence<double>(st);
    std::cerr << "unknown subcommand\n";
    return 2;
  } catch (const UnsupportedOrder& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << '\n';
    return 1;
  }
}
