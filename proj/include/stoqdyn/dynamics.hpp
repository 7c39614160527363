#ifndef STOQDYN_DYNAMICS_HPP
#define STOQDYN_DYNAMICS_HPP

#include <functional>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "stoqdyn/linalg.hpp"
#include "stoqdyn/lp.hpp"
#include "stoqdyn/trajectory.hpp"

namespace stoqdyn {

/// Matrices of a linear probability dynamics: one column-stochastic matrix
/// per grid time, identity at time 0.
class MatrixFamily {
 public:
  MatrixFamily(TimeGrid grid, std::map<int, StochasticMatrix> matrices);

  const TimeGrid& grid() const { return grid_; }
  int n() const { return n_; }
  const StochasticMatrix& at(int t) const;

  bool operator==(const MatrixFamily& o) const { return grid_ == o.grid_ && matrices_ == o.matrices_; }

  RationalMatrix as_rational(int t) const;

 private:
  TimeGrid grid_;
  int n_ = 0;
  std::map<int, StochasticMatrix> matrices_;
};

/// Extensionally given dynamics: finitely many initial points, each with its
/// full trajectory of distributions.
struct TabulatedDynamics {
  TimeGrid grid;
  int n = 0;
  std::vector<std::pair<ProbVector, std::vector<ProbVector>>> points;
};

using BlackBoxDynamics = std::function<ProbVector(int, const ProbVector&)>;

/// A map (t, p0) -> p(t) with identity at time 0, in one of three
/// representations. All evaluation is exact.
class ProbabilityDynamics {
 public:
  static ProbabilityDynamics from_matrices(MatrixFamily fam);
  static ProbabilityDynamics from_table(TabulatedDynamics table);
  static ProbabilityDynamics from_black_box(TimeGrid grid, int n, BlackBoxDynamics box);

  const TimeGrid& grid() const { return grid_; }
  int n() const { return n_; }

  ProbVector evaluate(int t, const ProbVector& p0) const;
  /// The solution trajectory from p0, one vector per grid time.
  std::vector<ProbVector> solution(const ProbVector& p0) const;

  bool has_matrices() const { return std::holds_alternative<MatrixFamily>(repr_); }
  bool is_tabulated() const { return std::holds_alternative<TabulatedDynamics>(repr_); }
  bool is_black_box() const { return std::holds_alternative<BlackBoxDynamics>(repr_); }
  const MatrixFamily& matrices() const { return std::get<MatrixFamily>(repr_); }
  const TabulatedDynamics& table() const { return std::get<TabulatedDynamics>(repr_); }

  /// The points is_linear and the grid-based checks evaluate on: the full
  /// denominator-<= G simplex grid, or the tabulated points for tabulated
  /// dynamics.
  std::vector<ProbVector> evaluation_points(int grid_denominator) const;

 private:
  ProbabilityDynamics(TimeGrid grid, int n, std::variant<MatrixFamily, TabulatedDynamics, BlackBoxDynamics> repr)
      : grid_(std::move(grid)), n_(n), repr_(std::move(repr)) {}

  TimeGrid grid_;
  int n_;
  std::variant<MatrixFamily, TabulatedDynamics, BlackBoxDynamics> repr_;
};

inline constexpr int kDefaultGridDenominator = 6;

enum class LinearityStatus { Linear, LinearOnGrid, Nonlinear };

/// A violated convex combination: evaluate(t, lam*p + (1-lam)*q) differs from
/// lam*evaluate(t,p) + (1-lam)*evaluate(t,q). For tabulated dynamics, where
/// the decomposition points may not be evaluable, only the mismatch pair is
/// reported (p = q = the offending point, lambda = 1).
struct LinearityWitness {
  int t = 0;
  ProbVector p;
  ProbVector q;
  Rational lambda;
  ProbVector combined_image;
  ProbVector mixture_of_images;
};

struct LinearityVerdict {
  LinearityStatus status = LinearityStatus::Nonlinear;
  std::optional<MatrixFamily> matrices;
  std::optional<LinearityWitness> witness;
  bool linear() const { return status != LinearityStatus::Nonlinear; }
};

/// Builds candidate matrices from the vertex images and verifies them on the
/// evaluation points. Black-box verdicts are labeled on-grid.
LinearityVerdict is_linear(const ProbabilityDynamics& dyn, int grid_denominator = kDefaultGridDenominator);

struct DecomposabilityWitness {
  int t = 0;
  int t_prime = 0;
  ProbVector p0;
  ProbVector q0;
};

/// Graph of one decomposing map: pairs (point in Ran P_{t'}, its image).
struct DecomposingMapRecord {
  int t = 0;
  int t_prime = 0;
  std::vector<std::pair<ProbVector, ProbVector>> graph;
};

struct DecomposabilityVerdict {
  bool decomposable = false;
  std::optional<DecomposabilityWitness> witness;
  std::vector<DecomposingMapRecord> maps;
};

/// Kernel criterion for a matrix family: the dynamics is decomposable iff
/// ker P(t') is contained in ker P(t) for every pair t' <= t.
DecomposabilityVerdict kernel_decomposable(const MatrixFamily& fam);

/// Direct test of the collision criterion on the evaluation points: equal
/// images at t' must have equal images at t.
DecomposabilityVerdict decomposable_by_grid(const ProbabilityDynamics& dyn,
                                            int grid_denominator = kDefaultGridDenominator);

/// Kernel route for matrix-backed dynamics, grid route otherwise.
DecomposabilityVerdict is_decomposable(const ProbabilityDynamics& dyn,
                                       int grid_denominator = kDefaultGridDenominator);

/// Matrix form of the decomposing map P_{t <- t'}. When P(t') is invertible
/// this is exactly P(t) P(t')^{-1} (possibly non-stochastic). When singular
/// there is no canonical matrix; the map is returned as its action on a basis
/// of the range of P(t').
struct DecomposingMapMatrix {
  bool has_matrix = false;
  RationalMatrix matrix;
  std::vector<std::pair<std::vector<Rational>, std::vector<Rational>>> restricted;
};

DecomposingMapMatrix decomposing_map_matrix(const MatrixFamily& fam, int t, int t_prime);

enum class DivisibilityStatus { Divisible, NotDivisible, NotApplicable };

struct PairDivisibility {
  int t_prime = 0;
  int t = 0;
  DivisibilityStatus status = DivisibilityStatus::NotApplicable;
  std::optional<StochasticMatrix> factor;    // feasible stochastic X with X P(t') = P(t)
  std::vector<Rational> farkas;              // infeasibility certificate
  std::optional<RationalMatrix> candidate;   // unique P(t) P(t')^{-1} when invertible
};

struct DivisibilityReport {
  bool divisible = false;
  std::vector<PairDivisibility> pairs;
};

/// Exact feasibility of X P(t') = P(t) over column-stochastic X, decided per
/// pair by phase-1 simplex over rationals.
DivisibilityReport is_divisible(const MatrixFamily& fam);

struct TimeHomogeneityDynWitness {
  int t = 0;
  int t_prime = 0;
  std::optional<ProbVector> p0;
};

struct TimeHomogeneityDynVerdict {
  bool time_homogeneous = false;
  std::optional<TimeHomogeneityDynWitness> witness;
};

/// P_t = P_{t-t'} o P_{t'} for all pairs; exact matrix identity for linear
/// representations, evaluation-point check otherwise. Requires a
/// difference-closed grid.
TimeHomogeneityDynVerdict is_time_homogeneous_dynamics(const ProbabilityDynamics& dyn,
                                                       int grid_denominator = kDefaultGridDenominator);

}  // namespace stoqdyn

#endif
