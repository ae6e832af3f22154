#include "oweno/tables.hpp"

#include <sstream>

namespace oweno {

const char* to_string(DataMode mode) {
  return mode == DataMode::PointValues ? "point" : "cell";
}

DataMode data_mode_from_string(const std::string& s) {
  if (s == "point") return DataMode::PointValues;
  if (s == "cell") return DataMode::CellAverages;
  throw std::invalid_argument("unknown data mode '" + s + "' (expected point|cell)");
}

namespace {

// Polynomials in the stencil variable w, monomial coefficients, exact.
using Poly = RationalVector;

Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {Rational()};
  Poly d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = p[k] * Rational(static_cast<long long>(k));
  return d;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Rational poly_integral(const Poly& p, const Rational& lo, const Rational& hi) {
  Rational acc;
  for (std::size_t k = 0; k < p.size(); ++k) {
    Rational inv(1, static_cast<long long>(k + 1));
    acc += p[k] * inv * (pow_int(hi, static_cast<long>(k + 1)) - pow_int(lo, static_cast<long>(k + 1)));
  }
  return acc;
}

// Interpolation conditions matrix: row i holds the action of node a_i on the
// monomials w^k. Point values sample; cell averages integrate over the unit
// cell around the node.
RationalMatrix interp_matrix(const std::vector<Rational>& nodes, DataMode mode) {
  const std::size_t n = nodes.size();
  RationalMatrix m(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (mode == DataMode::PointValues) {
        m[i][k] = pow_int(nodes[i], static_cast<long>(k));
      } else {
        Rational half(1, 2);
        Rational up = pow_int(nodes[i] + half, static_cast<long>(k + 1));
        Rational dn = pow_int(nodes[i] - half, static_cast<long>(k + 1));
        m[i][k] = (up - dn) * Rational(1, static_cast<long long>(k + 1));
      }
    }
  }
  return m;
}

RationalMatrix transpose(const RationalMatrix& m) {
  RationalMatrix t(m[0].size(), RationalVector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

// Linear functional on the data vector returning the monomial coefficient
// alpha_k of the interpolant.
RationalVector coeff_functional(const RationalMatrix& m, std::size_t k) {
  RationalVector e(m.size());
  e[k] = Rational(1);
  return rational_solve(transpose(m), e);
}

// Linear functional on the data returning the s-th derivative of the
// interpolant evaluated at w.
RationalVector deriv_value_functional(const RationalMatrix& m, long s, const Rational& w) {
  RationalVector rhs(m.size());
  for (std::size_t k = 0; k < m.size(); ++k) {
    long kk = static_cast<long>(k);
    if (kk < s) continue;
    Rational falling(1);
    for (long t = 0; t < s; ++t) falling *= Rational(kk - t);
    rhs[k] = falling * pow_int(w, kk - s);
  }
  return rational_solve(transpose(m), rhs);
}

// Interpolant coefficients of the j-th Lagrange-type basis function.
Poly basis_poly(const RationalMatrix& m, std::size_t j) {
  RationalVector e(m.size());
  e[j] = Rational(1);
  return rational_solve(m, e);  // m * coeffs = data
}

std::vector<Rational> int_nodes(int lo, int hi) {
  std::vector<Rational> nodes;
  for (int i = lo; i <= hi; ++i) nodes.emplace_back(i);
  return nodes;
}

SchemeTables::Ldl ldl_decompose(const RationalMatrix& q) {
  const std::size_t n = q.size();
  SchemeTables::Ldl out;
  out.diag.assign(n, Rational());
  RationalMatrix l(n, RationalVector(n));
  for (std::size_t j = 0; j < n; ++j) {
    Rational d = q[j][j];
    for (std::size_t m2 = 0; m2 < j; ++m2) d -= out.diag[m2] * l[j][m2] * l[j][m2];
    out.diag[j] = d;
    if (d.is_zero()) {
      // PSD: a zero pivot forces the whole Schur row to vanish.
      for (std::size_t i = j + 1; i < n; ++i) {
        Rational off = q[i][j];
        for (std::size_t m2 = 0; m2 < j; ++m2) off -= out.diag[m2] * l[i][m2] * l[j][m2];
        if (!off.is_zero()) throw std::logic_error("si form not positive semidefinite");
        l[i][j] = Rational();
      }
      continue;
    }
    if (d.sign() < 0) throw std::logic_error("si form not positive semidefinite");
    for (std::size_t i = j + 1; i < n; ++i) {
      Rational off = q[i][j];
      for (std::size_t m2 = 0; m2 < j; ++m2) off -= out.diag[m2] * l[i][m2] * l[j][m2];
      l[i][j] = off / d;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector row;
    row.push_back(Rational(1));
    for (std::size_t i = j + 1; i < n; ++i) row.push_back(l[i][j]);
    out.rows.push_back(std::move(row));
  }
  return out;
}

void finalize_derived(SchemeTables& t) {
  t.si_ldl.clear();
  for (const auto& q : t.si_forms) t.si_ldl.push_back(ldl_decompose(q));
}

}  // namespace

std::vector<RationalMatrix> si_forms_from_integration(int r, DataMode mode) {
  if (r < 3 || r > 6) throw UnsupportedOrder(r);
  const Rational lo(-1, 2), hi(1, 2);
  std::vector<RationalMatrix> forms;
  for (int i = 0; i < r; ++i) {
    auto m = interp_matrix(int_nodes(-r + 1 + i, i), mode);
    // derivative polynomials of each basis function
    std::vector<std::vector<Poly>> dbasis(r);
    for (int j = 0; j < r; ++j) {
      Poly p = basis_poly(m, static_cast<std::size_t>(j));
      for (int l = 1; l <= r - 1; ++l) {
        p = poly_derivative(p);
        dbasis[j].push_back(p);
      }
    }
    RationalMatrix q(r, RationalVector(r));
    for (int a = 0; a < r; ++a)
      for (int b = a; b < r; ++b) {
        Rational acc;
        for (int l = 0; l < r - 1; ++l)
          acc += poly_integral(poly_mul(dbasis[a][l], dbasis[b][l]), lo, hi);
        q[a][b] = acc;
        q[b][a] = acc;
      }
    forms.push_back(std::move(q));
  }
  return forms;
}

SchemeTables build_tables(int r, DataMode mode) {
  if (r < 3 || r > 6) throw UnsupportedOrder(r);
  SchemeTables t;
  t.r = r;
  t.mode = mode;
  const Rational half(1, 2);
  const int n = 2 * r - 2;  // full-stencil polynomial degree

  for (int i = 0; i < r; ++i) {
    auto m = interp_matrix(int_nodes(-r + 1 + i, i), mode);
    t.sub_coeffs.push_back(deriv_value_functional(m, 0, half));
  }

  auto full_m = interp_matrix(int_nodes(-r + 1, r - 1), mode);
  t.full_coeffs = deriv_value_functional(full_m, 0, half);

  // Ideal weights from the banded system sum_i c_i sub_i = full, solved by
  // forward substitution on the first r rows, then verified exactly on every
  // remaining row.
  {
    RationalVector c(r);
    for (int row = 0; row < r; ++row) {
      Rational acc = t.full_coeffs[row];
      for (int i = 0; i < row; ++i) {
        int j = row - i;  // position inside substencil i
        if (j <= r - 1) acc -= c[i] * t.sub_coeffs[i][j];
      }
      c[row] = acc / t.sub_coeffs[row][0];
    }
    for (int row = r; row < 2 * r - 1; ++row) {
      Rational acc;
      for (int i = 0; i < r; ++i) {
        int j = row - i;
        if (j >= 0 && j <= r - 1) acc += c[i] * t.sub_coeffs[i][j];
      }
      if (acc != t.full_coeffs[row]) throw std::logic_error("ideal-weight system inconsistent");
    }
    Rational sum;
    for (const auto& ci : c) {
      if (ci.sign() <= 0) throw std::logic_error("ideal weight not positive");
      sum += ci;
    }
    if (sum != Rational(1)) throw std::logic_error("ideal weights do not sum to 1");
    t.ideal_weights = std::move(c);
  }

  t.si_forms = si_forms_from_integration(r, mode);

  t.d1_coeffs.resize(2 * r - 1);
  {
    // (-1)^(j+r-1) * binom(2r-2, j+r-1), index idx = j+r-1
    BigInt binom = 1;
    for (int idx = 0; idx < 2 * r - 1; ++idx) {
      if (idx > 0) binom = binom * (2 * r - 2 - (idx - 1)) / idx;
      t.d1_coeffs[idx] = Rational(idx % 2 == 0 ? binom : -binom);
    }
  }

  {
    // P^(n-2)(w) = A w^2 + B w + C via L^{s,j} = ((s+j)!/j!) L^{0,s+j}
    auto fact = [](int k) {
      Rational f(1);
      for (int i = 2; i <= k; ++i) f *= Rational(i);
      return f;
    };
    auto scale = [&](RationalVector v, const Rational& s) {
      for (auto& x : v) x *= s;
      return v;
    };
    t.d2_functionals[0] = scale(coeff_functional(full_m, n), fact(n) / Rational(2));
    t.d2_functionals[1] = scale(coeff_functional(full_m, n - 1), fact(n - 1));
    t.d2_functionals[2] = scale(coeff_functional(full_m, n - 2), fact(n - 2));
  }

  // Face-centered even-order derivative functionals on point values, three
  // shifted 2r-point stencils; plus the inverse sliding-average series.
  for (int k = 1; k <= r - 1; ++k) {
    SchemeTables::FaceDerivs fd;
    fd.order = 2 * k;
    auto make = [&](int lo) {
      auto m = interp_matrix(int_nodes(lo, lo + 2 * r - 1), DataMode::PointValues);
      return deriv_value_functional(m, 2 * k, half);
    };
    fd.left = make(-r);
    fd.center = make(-r + 1);
    fd.right = make(-r + 2);
    t.face_derivs.push_back(std::move(fd));
  }
  {
    // s_k = 1/(4^k (2k+1)!) ; c_k = -sum_{j=1..k} s_j c_{k-j}, c_0 = 1
    std::vector<Rational> s(r), c(r);
    c[0] = Rational(1);
    for (int k2 = 0; k2 < r; ++k2) {
      Rational fac(1);
      for (int i = 2; i <= 2 * k2 + 1; ++i) fac *= Rational(i);
      s[k2] = Rational(1) / (pow_int(Rational(4), k2) * fac);
    }
    for (int k2 = 1; k2 < r; ++k2) {
      Rational acc;
      for (int j = 1; j <= k2; ++j) acc += s[j] * c[k2 - j];
      c[k2] = -acc;
    }
    t.h_series.assign(c.begin() + 1, c.end());
  }

  finalize_derived(t);
  return t;
}

namespace {

void put_group(std::ostringstream& os, const std::string& name, const RationalVector& v) {
  os << name << ':';
  for (const auto& x : v) os << ' ' << x.to_string();
  os << '\n';
}

RationalVector parse_values(const std::string& rest) {
  RationalVector out;
  std::istringstream is(rest);
  std::string tok;
  while (is >> tok) out.push_back(Rational::parse(tok));
  return out;
}

}  // namespace

std::string serialize_tables(const SchemeTables& t) {
  std::ostringstream os;
  os << "oweno-tables v1\n";
  os << "r: " << t.r << '\n';
  os << "mode: " << to_string(t.mode) << '\n';
  for (int i = 0; i < t.r; ++i) put_group(os, "sub " + std::to_string(i), t.sub_coeffs[i]);
  put_group(os, "ideal", t.ideal_weights);
  for (int i = 0; i < t.r; ++i) {
    RationalVector flat;
    for (const auto& row : t.si_forms[i]) flat.insert(flat.end(), row.begin(), row.end());
    put_group(os, "si " + std::to_string(i), flat);
  }
  put_group(os, "d1", t.d1_coeffs);
  put_group(os, "d2.A", t.d2_functionals[0]);
  put_group(os, "d2.B", t.d2_functionals[1]);
  put_group(os, "d2.C", t.d2_functionals[2]);
  put_group(os, "full", t.full_coeffs);
  for (const auto& fd : t.face_derivs) {
    std::string k = std::to_string(fd.order / 2);
    put_group(os, "fdl " + k, fd.left);
    put_group(os, "fdc " + k, fd.center);
    put_group(os, "fdr " + k, fd.right);
  }
  put_group(os, "hser", t.h_series);
  return os.str();
}

SchemeTables parse_tables(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "oweno-tables v1")
    throw std::invalid_argument("tables: bad or missing version header");
  SchemeTables t;
  bool have_r = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("tables: malformed line '" + line + "'");
    std::string name = line.substr(0, colon);
    std::string rest = line.substr(colon + 1);
    if (name == "r") {
      t.r = std::stoi(rest);
      if (t.r < 3 || t.r > 6) throw UnsupportedOrder(t.r);
      have_r = true;
      t.sub_coeffs.assign(t.r, {});
      t.si_forms.assign(t.r, {});
      continue;
    }
    if (name == "mode") {
      std::istringstream ms(rest);
      std::string m;
      ms >> m;
      t.mode = data_mode_from_string(m);
      continue;
    }
    if (!have_r) throw std::invalid_argument("tables: group before r");
    auto vals = parse_values(rest);
    if (name.rfind("sub ", 0) == 0) {
      t.sub_coeffs.at(std::stoul(name.substr(4))) = vals;
    } else if (name == "ideal") {
      t.ideal_weights = vals;
    } else if (name.rfind("si ", 0) == 0) {
      RationalMatrix q(t.r, RationalVector(t.r));
      if (vals.size() != static_cast<std::size_t>(t.r * t.r))
        throw std::invalid_argument("tables: si group size");
      for (int a = 0; a < t.r; ++a)
        for (int b = 0; b < t.r; ++b) q[a][b] = vals[a * t.r + b];
      t.si_forms.at(std::stoul(name.substr(3))) = std::move(q);
    } else if (name == "d1") {
      t.d1_coeffs = vals;
    } else if (name == "d2.A") {
      t.d2_functionals[0] = vals;
    } else if (name == "d2.B") {
      t.d2_functionals[1] = vals;
    } else if (name == "d2.C") {
      t.d2_functionals[2] = vals;
    } else if (name == "full") {
      t.full_coeffs = vals;
    } else if (name.rfind("fdl ", 0) == 0 || name.rfind("fdc ", 0) == 0 ||
               name.rfind("fdr ", 0) == 0) {
      std::size_t k = std::stoul(name.substr(4));
      if (t.face_derivs.size() < k) t.face_derivs.resize(k);
      auto& fd = t.face_derivs[k - 1];
      fd.order = static_cast<int>(2 * k);
      if (name[2] == 'l')
        fd.left = vals;
      else if (name[2] == 'c')
        fd.center = vals;
      else
        fd.right = vals;
    } else if (name == "hser") {
      t.h_series = vals;
    } else {
      throw std::invalid_argument("tables: unknown group '" + name + "'");
    }
  }
  finalize_derived(t);
  return t;
}

}  // namespace oweno
