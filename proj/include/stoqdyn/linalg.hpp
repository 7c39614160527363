#ifndef STOQDYN_LINALG_HPP
#define STOQDYN_LINALG_HPP

#include <optional>
#include <vector>

#include "stoqdyn/rational.hpp"

namespace stoqdyn {

/// Dense rational matrix, row-major. General-purpose (not necessarily
/// stochastic): inverses, kernels and LP certificates live here.
struct RationalMatrix {
  std::vector<std::vector<Rational>> rows;

  RationalMatrix() = default;
  RationalMatrix(int r, int c) : rows(static_cast<size_t>(r), std::vector<Rational>(static_cast<size_t>(c), Rational(0))) {}

  int n_rows() const { return static_cast<int>(rows.size()); }
  int n_cols() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }
  Rational& at(int i, int j) { return rows[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
  const Rational& at(int i, int j) const { return rows[static_cast<size_t>(i)][static_cast<size_t>(j)]; }

  bool operator==(const RationalMatrix& o) const { return rows == o.rows; }

  static RationalMatrix identity(int n);
};

RationalMatrix mat_mul(const RationalMatrix& a, const RationalMatrix& b);
std::vector<Rational> mat_vec(const RationalMatrix& a, const std::vector<Rational>& v);

/// Exact inverse via Gauss-Jordan; nullopt when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& a);

/// Basis of the null space {v : a v = 0}, one vector per free column of the RREF.
std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& a);

int rank(RationalMatrix a);

/// Indices of a maximal set of linearly independent columns (lowest indices first).
std::vector<int> independent_columns(const RationalMatrix& a);

}  // namespace stoqdyn

#endif
