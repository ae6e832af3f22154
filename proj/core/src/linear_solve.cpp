#include "oweno/linear_solve.hpp"

#include <cstddef>
#include <utility>

namespace oweno {

RationalVector rational_solve(RationalMatrix m, RationalVector rhs) {
  const std::size_t n = m.size();
  if (rhs.size() != n) throw std::invalid_argument("rational_solve: size mismatch");
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("rational_solve: matrix not square");

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) throw SingularMatrix();
    if (piv != col) {
      std::swap(m[piv], m[col]);
      std::swap(rhs[piv], rhs[col]);
    }
    for (std::size_t row = col + 1; row < n; ++row) {
      if (m[row][col].is_zero()) continue;
      Rational f = m[row][col] / m[col][col];
      m[row][col] = Rational();
      for (std::size_t j = col + 1; j < n; ++j) m[row][j] -= f * m[col][j];
      rhs[row] -= f * rhs[col];
    }
  }

  RationalVector x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational acc = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= m[i][j] * x[j];
    x[i] = acc / m[i][i];
  }
  return x;
}

}  // namespace oweno
