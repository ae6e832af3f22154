#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "oweno/linear_solve.hpp"
#include "oweno/rational.hpp"

namespace oweno {

enum class DataMode { PointValues, CellAverages };

const char* to_string(DataMode mode);
DataMode data_mode_from_string(const std::string& s);

struct UnsupportedOrder : std::invalid_argument {
  explicit UnsupportedOrder(int r)
      : std::invalid_argument("unsupported substencil width r=" + std::to_string(r) +
                              " (supported: 3..6)") {}
};

/// All exact-rational coefficient tables for one reconstruction family
/// of order 2r-1 on the stencil w = -r+1..r-1 with target w = 1/2.
struct SchemeTables {
  int r = 0;
  DataMode mode = DataMode::PointValues;

  std::vector<RationalVector> sub_coeffs;        // r x r: p_i(1/2) coefficients
  RationalVector ideal_weights;                  // r, positive, sums to 1
  std::vector<RationalMatrix> si_forms;          // r symmetric PSD matrices, r x r
  RationalVector d1_coeffs;                      // 2r-1 signed binomials
  std::array<RationalVector, 3> d2_functionals;  // A, B, C; each 2r-1
  RationalVector full_coeffs;                    // 2r-1: order-(2r-1) value at 1/2

  // Derived from si_forms (not serialized): Q_i = L D L^T, giving the
  // indicator as a sum of d_j * (row_j . f)^2 with nonnegative d_j.
  struct Ldl {
    RationalVector diag;                  // r entries, >= 0
    std::vector<RationalVector> rows;     // row j has r-j entries, leading 1
  };
  std::vector<Ldl> si_ldl;

  // Solver support: face-centered derivative functionals of even order 2k
  // (k = 1..r-1) on the three shifted 2r-point stencils around a face, plus
  // the series coefficients expressing a point value of the flux function in
  // terms of the sliding-average identity.
  struct FaceDerivs {
    int order = 0;                        // 2k
    RationalVector left, center, right;   // 2r coefficients each
  };
  std::vector<FaceDerivs> face_derivs;
  RationalVector h_series;  // r-1 coefficients, k = 1..r-1
};

/// Builds every table for the given width and data mode.
/// Throws UnsupportedOrder outside 3 <= r <= 6.
SchemeTables build_tables(int r, DataMode mode);

/// The smoothness-indicator quadratic forms alone (exact symbolic
/// integration of squared substencil-polynomial derivatives).
std::vector<RationalMatrix> si_forms_from_integration(int r, DataMode mode);

/// Versioned text round-trip: one "group index: value value ..." line per
/// coefficient group, rationals as num/den, LF line endings.
std::string serialize_tables(const SchemeTables& tables);
SchemeTables parse_tables(const std::string& text);

}  // namespace oweno
