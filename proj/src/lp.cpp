#include "stoqdyn/lp.hpp"

namespace stoqdyn {

LpFeasibility solve_equality_feasibility(const RationalMatrix& a, const std::vector<Rational>& b) {
  const int m = a.n_rows();
  const int n = a.n_cols();
  if (static_cast<int>(b.size()) != m) fail(Err::DimensionMismatch, "rhs length");

  // Tableau rows: [A | I | b] with rows flipped so b >= 0; basis starts at the
  // artificial block. Objective: minimize the sum of artificials.
  const int total = n + m;
  RationalMatrix t(m, total + 1);
  std::vector<int> row_sign(static_cast<size_t>(m), 1);
  for (int i = 0; i < m; ++i) {
    const bool flip = b[static_cast<size_t>(i)] < 0;
    if (flip) row_sign[static_cast<size_t>(i)] = -1;
    for (int j = 0; j < n; ++j) t.at(i, j) = flip ? -a.at(i, j) : a.at(i, j);
    t.at(i, n + i) = 1;
    t.at(i, total) = flip ? -b[static_cast<size_t>(i)] : b[static_cast<size_t>(i)];
  }
  std::vector<int> basis(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) basis[static_cast<size_t>(i)] = n + i;

  // Objective row: reduced costs for min sum(artificials). c_j = 0 for
  // original, 1 for artificial; with the artificial basis, zrow_j = -sum_i A_ij
  // and the objective value is -sum_i b_i (stored negated so value = -zrow[total]).
  std::vector<Rational> zrow(static_cast<size_t>(total + 1), Rational(0));
  for (int j = 0; j < total; ++j) {
    Rational s = 0;
    for (int i = 0; i < m; ++i) s += t.at(i, j);
    zrow[static_cast<size_t>(j)] = (j >= n ? Rational(1) : Rational(0)) - s;
  }
  {
    Rational s = 0;
    for (int i = 0; i < m; ++i) s += t.at(i, total);
    zrow[static_cast<size_t>(total)] = -s;
  }

  auto pivot = [&](int prow, int pcol) {
    const Rational piv = t.at(prow, pcol);
    for (int j = 0; j <= total; ++j) t.at(prow, j) /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == prow || t.at(i, pcol) == 0) continue;
      const Rational f = t.at(i, pcol);
      for (int j = 0; j <= total; ++j) t.at(i, j) -= f * t.at(prow, j);
    }
    if (zrow[static_cast<size_t>(pcol)] != 0) {
      const Rational f = zrow[static_cast<size_t>(pcol)];
      for (int j = 0; j <= total; ++j) zrow[static_cast<size_t>(j)] -= f * t.at(prow, j);
    }
    basis[static_cast<size_t>(prow)] = pcol;
  };

  while (true) {
    int enter = -1;
    for (int j = 0; j < total; ++j) {
      if (zrow[static_cast<size_t>(j)] < 0) { enter = j; break; }
    }
    if (enter < 0) break;
    int leave = -1;
    Rational best;
    for (int i = 0; i < m; ++i) {
      if (t.at(i, enter) <= 0) continue;
      Rational ratio = t.at(i, total) / t.at(i, enter);
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) fail(Err::InvalidDynamics, "phase-1 objective unbounded (cannot happen)");
    pivot(leave, enter);
  }

  LpFeasibility out;
  const Rational objective = -zrow[static_cast<size_t>(total)];
  if (objective == 0) {
    out.feasible = true;
    out.solution.assign(static_cast<size_t>(n), Rational(0));
    for (int i = 0; i < m; ++i) {
      const int bv = basis[static_cast<size_t>(i)];
      if (bv < n) out.solution[static_cast<size_t>(bv)] = t.at(i, total);
    }
  } else {
    // Dual values from the artificial columns: y_i = 1 - zrow[artificial_i],
    // corrected for the row flips applied up front.
    out.feasible = false;
    out.farkas.assign(static_cast<size_t>(m), Rational(0));
    for (int i = 0; i < m; ++i) {
      Rational yi = Rational(1) - zrow[static_cast<size_t>(n + i)];
      out.farkas[static_cast<size_t>(i)] = Rational(row_sign[static_cast<size_t>(i)]) * yi;
    }
  }
  return out;
}

bool check_solution(const RationalMatrix& a, const std::vector<Rational>& b, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != a.n_cols()) return false;
  for (const auto& xi : x)
    if (xi < 0) return false;
  auto ax = mat_vec(a, x);
  return ax == b;
}

bool check_farkas(const RationalMatrix& a, const std::vector<Rational>& b, const std::vector<Rational>& y) {
  if (static_cast<int>(y.size()) != a.n_rows()) return false;
  for (int j = 0; j < a.n_cols(); ++j) {
    Rational s = 0;
    for (int i = 0; i < a.n_rows(); ++i) s += y[static_cast<size_t>(i)] * a.at(i, j);
    if (s > 0) return false;
  }
  Rational yb = 0;
  for (int i = 0; i < a.n_rows(); ++i) yb += y[static_cast<size_t>(i)] * b[static_cast<size_t>(i)];
  return yb > 0;
}

}  // namespace stoqdyn
