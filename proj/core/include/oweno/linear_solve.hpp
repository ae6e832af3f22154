#pragma once

#include <stdexcept>
#include <vector>

#include "oweno/rational.hpp"

namespace oweno {

using RationalMatrix = std::vector<std::vector<Rational>>;
using RationalVector = std::vector<Rational>;

struct SingularMatrix : std::runtime_error {
  SingularMatrix() : std::runtime_error("rational_solve: singular matrix") {}
};

/// Exact solution of matrix * x = rhs by fraction-free Gaussian elimination
/// with partial pivoting over the rationals. Throws SingularMatrix when a
/// pivot column is identically zero.
RationalVector rational_solve(RationalMatrix matrix, RationalVector rhs);

}  // namespace oweno
