#ifndef STOQDYN_LP_HPP
#define STOQDYN_LP_HPP

#include <vector>

#include "stoqdyn/linalg.hpp"

namespace stoqdyn {

/// Outcome of an exact feasibility run over {x : A x = b, x >= 0}.
/// When infeasible, `farkas` is a vector y with yᵀA <= 0 (componentwise)
/// and yᵀb > 0, certifying that no feasible point exists.
struct LpFeasibility {
  bool feasible = false;
  std::vector<Rational> solution;
  std::vector<Rational> farkas;
};

/// Phase-1 simplex over exact rationals. Entering variable chosen by
/// Bland's rule (lowest index with negative reduced cost); leaving variable
/// by minimum ratio with ties broken by lowest basis index. Terminates on
/// every input.
LpFeasibility solve_equality_feasibility(const RationalMatrix& a, const std::vector<Rational>& b);

/// Exact verification helpers used by the divisibility report tests.
bool check_solution(const RationalMatrix& a, const std::vector<Rational>& b, const std::vector<Rational>& x);
bool check_farkas(const RationalMatrix& a, const std::vector<Rational>& b, const std::vector<Rational>& y);

}  // namespace stoqdyn

#endif
