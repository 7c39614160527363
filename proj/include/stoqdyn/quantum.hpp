#ifndef STOQDYN_QUANTUM_HPP
#define STOQDYN_QUANTUM_HPP

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "stoqdyn/rational.hpp"
#include "stoqdyn/trajectory.hpp"

namespace stoqdyn {

// This module works in doubles: the states of interest have irrational
// amplitudes. Comparisons use kFloatTol; everything else in the toolkit
// stays rational.

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;
using CMat = std::vector<std::vector<Complex>>;  // row-major
using DVec = std::vector<double>;
using DMat = std::vector<std::vector<double>>;

CMat cmat_identity(int d);
CMat cmat_mul(const CMat& a, const CMat& b);
CMat cmat_adjoint(const CMat& a);
CVec cmat_vec(const CMat& a, const CVec& v);
bool is_unitary(const CMat& u, double tol = kFloatTol);

/// Unit-norm state vector.
class PureState {
 public:
  explicit PureState(CVec amplitudes);
  int dim() const { return static_cast<int>(amps_.size()); }
  const CVec& amplitudes() const { return amps_; }
  const Complex& operator[](int i) const { return amps_[static_cast<size_t>(i)]; }

 private:
  CVec amps_;
};

/// Unitary per grid time, identity at time 0.
class UnitaryFamily {
 public:
  UnitaryFamily(TimeGrid grid, std::map<int, CMat> matrices);
  const TimeGrid& grid() const { return grid_; }
  int dim() const { return d_; }
  const CMat& at(int t) const;
  /// U(t <- t') = U(t) U(t')^{-1} (adjoint inverse; unitary again).
  CMat relative(int t, int t_prime) const;

 private:
  TimeGrid grid_;
  int d_ = 0;
  std::map<int, CMat> matrices_;
};

/// Hermitian, unit-trace, positive semidefinite (within tolerance).
class DensityMatrix {
 public:
  explicit DensityMatrix(CMat m);
  static DensityMatrix pure(const PureState& psi);
  int dim() const { return static_cast<int>(m_.size()); }
  const CMat& matrix() const { return m_; }

 private:
  CMat m_;
};

/// Born probabilities of psi in the given orthonormal basis (rows of `basis`
/// are the basis vectors); defaults to the standard basis.
DVec born_vector(const PureState& psi, const CMat& basis);
DVec born_vector(const PureState& psi);

/// t -> born probabilities of U(t) psi in the standard basis.
std::vector<DVec> born_trajectory(const PureState& psi, const UnitaryFamily& u);

/// Per-time violation of convex-combination preservation for Born
/// probabilities, together with the interference cross terms
/// 2 sqrt(lam(1-lam)) Re(conj(<i|U|phi>) <i|U|chi>). When psi is the
/// amplitude-level combination sqrt(lam) phi + sqrt(1-lam) chi the two
/// columns agree entrywise; `identity_holds` records that check.
struct LinearityViolationReport {
  std::vector<double> sup_norm;               // per grid time
  std::vector<DVec> violation;                // p_psi - lam p_phi - (1-lam) p_chi
  std::vector<DVec> cross_terms;
  bool identity_holds = false;
};

LinearityViolationReport quantum_linearity_violation(const UnitaryFamily& u, double lambda,
                                                     const PureState& phi, const PureState& chi,
                                                     const PureState& psi);

/// rho(t) = U(t) rho0 U(t)^dagger and its diagonal Born probabilities.
std::pair<DensityMatrix, DVec> density_evolution(const DensityMatrix& rho0, const UnitaryFamily& u, int t);

/// Born statistics of the three Pauli measurements: (z+, z-, x+, x-, y+, y-).
/// Qubits only; injective on density matrices.
std::array<double, 6> tomographic_vector(const DensityMatrix& rho);

/// Entrywise |U_ij|^2; column-stochastic within tolerance.
DMat unistochastic_of(const CMat& u);

/// Discrepancy D = P(t) - SH(U(t<-t')) P(t') between the actual evolution
/// matrix and its would-be division, plus the interference cross-term form of
/// the same quantity, and the (non-)commutation check of the Schur-Hadamard
/// square against P(t) P(t')^{-1}.
struct InterferenceReport {
  DMat discrepancy;
  DMat cross_terms;
  bool identity_holds = false;  // discrepancy == cross_terms entrywise
  bool intermediate_invertible = false;
  DMat sh_of_relative;             // SH(U(t) U(t')^{-1})
  DMat p_ratio;                    // P(t) P(t')^{-1}, when invertible
  bool diagram_commutes = false;   // sh_of_relative == p_ratio, when invertible
};

InterferenceReport interference_discrepancy(const UnitaryFamily& u, int t, int t_prime);

/// p_{psi}(t) computed directly equals the two-step route through
/// U(t') psi and U(t <- t'), within tolerance.
bool quantum_decomposition_check(const UnitaryFamily& u, const PureState& psi, int t, int t_prime);

/// Divisibility of the unistochastic matrix family on the float path: with
/// P(t') invertible the unique candidate is P(t) P(t')^{-1}, and the family
/// is divisible at (t', t) iff that candidate is stochastic within tolerance.
struct FloatDivisibility {
  bool divisible = false;
  DMat candidate;
};

FloatDivisibility divisibility_from_unitaries(const UnitaryFamily& u, int t, int t_prime);

/// Rotation by angle theta: [[cos, -sin], [sin, cos]].
CMat rotation(double theta);

}  // namespace stoqdyn

#endif
