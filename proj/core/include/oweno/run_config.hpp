#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oweno/reconstruct.hpp"

namespace oweno {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Validated run configuration shared by every CLI subcommand. Field values
/// arrive from flags or a key = value config file; validate() enforces the
/// weight-parameter invariants before any run starts.
struct RunConfig {
  int r = 3;
  std::string mode = "cell";
  std::vector<std::string> variants{"js", "z", "yc", "oweno"};
  std::optional<long> s1;
  std::optional<std::string> s2;       // rational, e.g. "1" or "3/2"
  std::optional<double> eps;
  std::string backend = "dd";          // f64 | dd
  std::string output_dir = ".";
  int j_lo = 0;
  int j_hi = 6;
  std::string problem = "advection";   // advection|burgers|custom|burgers-shock|shu-osher
  std::vector<long> n_list{40, 80, 160, 320, 640};
  double cfl = -1.0;                   // <0: per-command default
  double final_time = -1.0;            // <0: per-problem default
  int jobs = 1;

  DataMode data_mode() const;
  std::vector<WeightVariant> weight_variants() const;

  /// Effective parameters for one variant in the requested scalar field.
  template <ScalarField T>
  WeightParams<T> params_for(WeightVariant v) const {
    auto p = WeightParams<T>::defaults(v, r);
    if (s1) p.s1 = *s1;
    if (s2) p.s2 = Rational::parse(*s2);
    if (eps) p.eps = ScalarTraits<T>::from_double(*eps);
    return p;
  }

  void validate(const std::string& command) const;
};

}  // namespace oweno
