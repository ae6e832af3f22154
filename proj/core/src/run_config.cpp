#include "oweno/run_config.hpp"

#include <algorithm>

#include "oweno/double_double.hpp"

namespace oweno {

DataMode RunConfig::data_mode() const { return data_mode_from_string(mode); }

std::vector<WeightVariant> RunConfig::weight_variants() const {
  std::vector<WeightVariant> out;
  out.reserve(variants.size());
  for (const auto& v : variants) out.push_back(weight_variant_from_string(v));
  return out;
}

void RunConfig::validate(const std::string& command) const {
  if (r < 3 || r > 6) throw UnsupportedOrder(r);
  data_mode();  // throws on bad mode string
  if (backend != "f64" && backend != "dd")
    throw ConfigError("backend must be f64 or dd, got '" + backend + "'");
  if (variants.empty()) throw ConfigError("variant list must not be empty");
  for (auto v : weight_variants()) {
    if (backend == "dd")
      params_for<DoubleDouble>(v).validate(r);
    else
      params_for<double>(v).validate(r);
  }
  if (command == "order-study" || command == "disc-study") {
    if (j_lo < 0 || j_hi <= j_lo) throw ConfigError("need 0 <= level-lo < level-hi");
  }
  if (command == "solve" || command == "convergence") {
    if (n_list.empty()) throw ConfigError("empty N list");
    for (long n : n_list)
      if (n < 2 * (r + 1)) throw ConfigError("N must be at least 2(r+1)");
    if (!std::is_sorted(n_list.begin(), n_list.end()))
      throw ConfigError("N list must be increasing");
    static const char* known[] = {"advection", "burgers", "custom", "burgers-shock",
                                  "shu-osher"};
    bool ok = false;
    for (auto* k : known) ok = ok || problem == k;
    if (!ok) throw ConfigError("unknown problem '" + problem + "'");
    if (cfl > 1.5) throw ConfigError("CFL must be at most 1.5");
  }
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
}

}  // namespace oweno
