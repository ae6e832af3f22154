#pragma once

#include <string>
#include <vector>

#include "oweno/order_lab.hpp"

namespace oweno {

/// CSV rows "variant,r,mode,k_or_theta,N,error,local_order", deterministic
/// full-precision formatting, no timestamps.
std::string convergence_csv(const std::vector<ConvergenceReport>& reports);

/// Markdown summary: one row per k (or theta), one column per variant.
std::string convergence_markdown(const std::vector<ConvergenceReport>& reports,
                                 const std::string& key_label);

/// Deterministic scientific formatting used by every CSV writer.
std::string format_sci(double value);

}  // namespace oweno
