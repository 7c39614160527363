#include "stoqdyn/linalg.hpp"

namespace stoqdyn {

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RationalMatrix mat_mul(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.n_cols() != b.n_rows()) fail(Err::DimensionMismatch, "matrix product shapes");
  RationalMatrix out(a.n_rows(), b.n_cols());
  for (int i = 0; i < a.n_rows(); ++i)
    for (int k = 0; k < a.n_cols(); ++k) {
      if (a.at(i, k) == 0) continue;
      for (int j = 0; j < b.n_cols(); ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return out;
}

std::vector<Rational> mat_vec(const RationalMatrix& a, const std::vector<Rational>& v) {
  if (a.n_cols() != static_cast<int>(v.size())) fail(Err::DimensionMismatch, "matrix-vector shapes");
  std::vector<Rational> out(static_cast<size_t>(a.n_rows()), Rational(0));
  for (int i = 0; i < a.n_rows(); ++i)
    for (int j = 0; j < a.n_cols(); ++j)
      if (v[static_cast<size_t>(j)] != 0) out[static_cast<size_t>(i)] += a.at(i, j) * v[static_cast<size_t>(j)];
  return out;
}

namespace {

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<int> rref(RationalMatrix& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.n_cols() && row < m.n_rows(); ++col) {
    int p = -1;
    for (int r = row; r < m.n_rows(); ++r)
      if (m.at(r, col) != 0) { p = r; break; }
    if (p < 0) continue;
    std::swap(m.rows[static_cast<size_t>(p)], m.rows[static_cast<size_t>(row)]);
    const Rational inv = Rational(1) / m.at(row, col);
    for (int j = 0; j < m.n_cols(); ++j) m.at(row, j) *= inv;
    for (int r = 0; r < m.n_rows(); ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      const Rational f = m.at(r, col);
      for (int j = 0; j < m.n_cols(); ++j) m.at(r, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
  const int n = a.n_rows();
  if (n != a.n_cols()) fail(Err::DimensionMismatch, "inverse of non-square matrix");
  RationalMatrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto pivots = rref(aug);
  // Invertible iff all n pivots land in the left block.
  if (static_cast<int>(pivots.size()) < n || pivots[static_cast<size_t>(n - 1)] >= n) return std::nullopt;
  RationalMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& a) {
  RationalMatrix m = a;
  auto pivots = rref(m);
  const int n = a.n_cols();
  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[static_cast<size_t>(free)]) continue;
    std::vector<Rational> v(static_cast<size_t>(n), Rational(0));
    v[static_cast<size_t>(free)] = 1;
    for (int r = 0; r < static_cast<int>(pivots.size()); ++r)
      v[static_cast<size_t>(pivots[static_cast<size_t>(r)])] = -m.at(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

int rank(RationalMatrix a) { return static_cast<int>(rref(a).size()); }

std::vector<int> independent_columns(const RationalMatrix& a) {
  RationalMatrix m = a;
  return rref(m);
}

}  // namespace stoqdyn
