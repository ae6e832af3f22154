#include "oweno/report.hpp"

#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "oweno/reconstruct.hpp"

namespace oweno {

const char* to_string(WeightVariant v) {
  switch (v) {
    case WeightVariant::JS: return "js";
    case WeightVariant::Z: return "z";
    case WeightVariant::YC: return "yc";
    case WeightVariant::OWENO: return "oweno";
  }
  return "?";
}

WeightVariant weight_variant_from_string(const std::string& s) {
  if (s == "js") return WeightVariant::JS;
  if (s == "z") return WeightVariant::Z;
  if (s == "yc") return WeightVariant::YC;
  if (s == "oweno") return WeightVariant::OWENO;
  throw std::invalid_argument("unknown weight variant '" + s + "' (expected js|z|yc|oweno)");
}

std::ostream*& trace_stream() {
  static std::ostream* sink = nullptr;
  return sink;
}

std::string format_sci(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

std::string convergence_csv(const std::vector<ConvergenceReport>& reports) {
  std::ostringstream os;
  os << "variant,r,mode,k_or_theta,N,error,local_order\n";
  for (const auto& rep : reports) {
    for (const auto& lvl : rep.levels) {
      os << to_string(rep.variant) << ',' << rep.r << ',' << to_string(rep.mode) << ','
         << rep.k_or_theta << ',' << lvl.n << ',' << format_sci(lvl.error) << ','
         << format_sci(lvl.local_order) << '\n';
    }
  }
  return os.str();
}

std::string convergence_markdown(const std::vector<ConvergenceReport>& reports,
                                 const std::string& key_label) {
  std::vector<WeightVariant> variants;
  std::set<int> keys;
  for (const auto& rep : reports) {
    bool seen = false;
    for (auto v : variants) seen = seen || v == rep.variant;
    if (!seen) variants.push_back(rep.variant);
    keys.insert(rep.k_or_theta);
  }
  std::map<std::pair<int, WeightVariant>, double> cell;
  for (const auto& rep : reports) cell[{rep.k_or_theta, rep.variant}] = rep.averaged_order;

  std::ostringstream os;
  os << "| " << key_label << " |";
  for (auto v : variants) os << ' ' << to_string(v) << " |";
  os << "\n|---|";
  for (std::size_t i = 0; i < variants.size(); ++i) os << "---|";
  os << '\n';
  for (int key : keys) {
    os << "| " << key << " |";
    for (auto v : variants) {
      char buf[32];
      auto it = cell.find({key, v});
      if (it == cell.end())
        std::snprintf(buf, sizeof buf, " -- |");
      else
        std::snprintf(buf, sizeof buf, " %.4f |", it->second);
      os << buf;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace oweno
