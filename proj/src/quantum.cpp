#include "stoqdyn/quantum.hpp"

#include <cmath>

namespace stoqdyn {

namespace {

void require_square(const CMat& m, const char* what) {
  const size_t d = m.size();
  if (d == 0) fail(Err::DimensionMismatch, std::string(what) + ": empty matrix");
  for (const auto& row : m)
    if (row.size() != d) fail(Err::DimensionMismatch, std::string(what) + ": not square");
}

// Determinant of a complex matrix by fraction-free-ish elimination; small d.
Complex det(CMat m) {
  const int d = static_cast<int>(m.size());
  Complex result(1.0, 0.0);
  for (int c = 0; c < d; ++c) {
    int p = -1;
    double best = 0;
    for (int r = c; r < d; ++r) {
      const double mag = std::abs(m[static_cast<size_t>(r)][static_cast<size_t>(c)]);
      if (mag > best) { best = mag; p = r; }
    }
    if (p < 0 || best == 0.0) return Complex(0.0, 0.0);
    if (p != c) {
      std::swap(m[static_cast<size_t>(p)], m[static_cast<size_t>(c)]);
      result = -result;
    }
    const Complex piv = m[static_cast<size_t>(c)][static_cast<size_t>(c)];
    result *= piv;
    for (int r = c + 1; r < d; ++r) {
      const Complex f = m[static_cast<size_t>(r)][static_cast<size_t>(c)] / piv;
      for (int j = c; j < d; ++j)
        m[static_cast<size_t>(r)][static_cast<size_t>(j)] -= f * m[static_cast<size_t>(c)][static_cast<size_t>(j)];
    }
  }
  return result;
}

std::optional<DMat> real_inverse(const DMat& a) {
  const int d = static_cast<int>(a.size());
  DMat aug(static_cast<size_t>(d), DVec(static_cast<size_t>(2 * d), 0.0));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) aug[static_cast<size_t>(i)][static_cast<size_t>(j)] = a[static_cast<size_t>(i)][static_cast<size_t>(j)];
    aug[static_cast<size_t>(i)][static_cast<size_t>(d + i)] = 1.0;
  }
  for (int c = 0; c < d; ++c) {
    int p = -1;
    double best = 1e-300;
    for (int r = c; r < d; ++r) {
      const double mag = std::fabs(aug[static_cast<size_t>(r)][static_cast<size_t>(c)]);
      if (mag > best) { best = mag; p = r; }
    }
    if (p < 0 || best < 1e-12) return std::nullopt;
    std::swap(aug[static_cast<size_t>(p)], aug[static_cast<size_t>(c)]);
    const double piv = aug[static_cast<size_t>(c)][static_cast<size_t>(c)];
    for (int j = 0; j < 2 * d; ++j) aug[static_cast<size_t>(c)][static_cast<size_t>(j)] /= piv;
    for (int r = 0; r < d; ++r) {
      if (r == c) continue;
      const double f = aug[static_cast<size_t>(r)][static_cast<size_t>(c)];
      if (f == 0.0) continue;
      for (int j = 0; j < 2 * d; ++j)
        aug[static_cast<size_t>(r)][static_cast<size_t>(j)] -= f * aug[static_cast<size_t>(c)][static_cast<size_t>(j)];
    }
  }
  DMat inv(static_cast<size_t>(d), DVec(static_cast<size_t>(d), 0.0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) inv[static_cast<size_t>(i)][static_cast<size_t>(j)] = aug[static_cast<size_t>(i)][static_cast<size_t>(d + j)];
  return inv;
}

DMat dmat_mul(const DMat& a, const DMat& b) {
  const int d = static_cast<int>(a.size());
  DMat out(static_cast<size_t>(d), DVec(static_cast<size_t>(d), 0.0));
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j)
        out[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
            a[static_cast<size_t>(i)][static_cast<size_t>(k)] * b[static_cast<size_t>(k)][static_cast<size_t>(j)];
  return out;
}

bool dmat_close(const DMat& a, const DMat& b, double tol) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j)
      if (std::fabs(a[i][j] - b[i][j]) > tol) return false;
  return true;
}

}  // namespace

CMat cmat_identity(int d) {
  CMat m(static_cast<size_t>(d), CVec(static_cast<size_t>(d), Complex(0, 0)));
  for (int i = 0; i < d; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = Complex(1, 0);
  return m;
}

CMat cmat_mul(const CMat& a, const CMat& b) {
  require_square(a, "product");
  require_square(b, "product");
  if (a.size() != b.size()) fail(Err::DimensionMismatch, "product of different sizes");
  const int d = static_cast<int>(a.size());
  CMat out(static_cast<size_t>(d), CVec(static_cast<size_t>(d), Complex(0, 0)));
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j)
        out[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
            a[static_cast<size_t>(i)][static_cast<size_t>(k)] * b[static_cast<size_t>(k)][static_cast<size_t>(j)];
  return out;
}

CMat cmat_adjoint(const CMat& a) {
  require_square(a, "adjoint");
  const int d = static_cast<int>(a.size());
  CMat out(static_cast<size_t>(d), CVec(static_cast<size_t>(d)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::conj(a[static_cast<size_t>(j)][static_cast<size_t>(i)]);
  return out;
}

CVec cmat_vec(const CMat& a, const CVec& v) {
  if (a.size() != v.size()) fail(Err::DimensionMismatch, "matrix-vector sizes differ");
  const int d = static_cast<int>(a.size());
  CVec out(static_cast<size_t>(d), Complex(0, 0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out[static_cast<size_t>(i)] += a[static_cast<size_t>(i)][static_cast<size_t>(j)] * v[static_cast<size_t>(j)];
  return out;
}

bool is_unitary(const CMat& u, double tol) {
  require_square(u, "unitarity check");
  const CMat prod = cmat_mul(cmat_adjoint(u), u);
  const int d = static_cast<int>(u.size());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Complex expect = (i == j) ? Complex(1, 0) : Complex(0, 0);
      if (std::abs(prod[static_cast<size_t>(i)][static_cast<size_t>(j)] - expect) > tol) return false;
    }
  return true;
}

PureState::PureState(CVec amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.empty()) fail(Err::DimensionMismatch, "empty state");
  double norm2 = 0;
  for (const auto& a : amps_) norm2 += std::norm(a);
  if (std::fabs(norm2 - 1.0) > kFloatTol) fail(Err::NotNormalized, "state norm^2 = " + std::to_string(norm2));
}

UnitaryFamily::UnitaryFamily(TimeGrid grid, std::map<int, CMat> matrices)
    : grid_(std::move(grid)), matrices_(std::move(matrices)) {
  if (matrices_.empty()) fail(Err::InvalidDynamics, "empty unitary family");
  d_ = static_cast<int>(matrices_.begin()->second.size());
  for (int k = 0; k < grid_.size(); ++k) {
    auto it = matrices_.find(grid_.at(k));
    if (it == matrices_.end()) fail(Err::InvalidDynamics, "missing unitary for a grid time");
    require_square(it->second, "unitary family");
    if (static_cast<int>(it->second.size()) != d_) fail(Err::DimensionMismatch, "inconsistent dimensions");
    if (!is_unitary(it->second)) fail(Err::NotUnitary, "matrix at time " + std::to_string(grid_.at(k)));
  }
  if (static_cast<int>(matrices_.size()) != grid_.size())
    fail(Err::InvalidDynamics, "unitary for a time outside the grid");
  const CMat& u0 = matrices_.at(0);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) {
      const Complex expect = (i == j) ? Complex(1, 0) : Complex(0, 0);
      if (std::abs(u0[static_cast<size_t>(i)][static_cast<size_t>(j)] - expect) > kFloatTol)
        fail(Err::InvalidDynamics, "unitary at time 0 must be the identity");
    }
}

const CMat& UnitaryFamily::at(int t) const {
  auto it = matrices_.find(t);
  if (it == matrices_.end()) fail(Err::InvalidTime, "no unitary at time " + std::to_string(t));
  return it->second;
}

CMat UnitaryFamily::relative(int t, int t_prime) const {
  return cmat_mul(at(t), cmat_adjoint(at(t_prime)));
}

DensityMatrix::DensityMatrix(CMat m) : m_(std::move(m)) {
  require_square(m_, "density matrix");
  const int d = static_cast<int>(m_.size());
  double trace = 0;
  for (int i = 0; i < d; ++i) {
    trace += m_[static_cast<size_t>(i)][static_cast<size_t>(i)].real();
    if (std::fabs(m_[static_cast<size_t>(i)][static_cast<size_t>(i)].imag()) > kFloatTol)
      fail(Err::NotDensityMatrix, "complex diagonal");
    for (int j = 0; j < d; ++j)
      if (std::abs(m_[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                   std::conj(m_[static_cast<size_t>(j)][static_cast<size_t>(i)])) > kFloatTol)
        fail(Err::NotDensityMatrix, "not Hermitian");
  }
  if (std::fabs(trace - 1.0) > kFloatTol) fail(Err::NotDensityMatrix, "trace = " + std::to_string(trace));
  // Positive semidefiniteness via principal minors (desk-scale dimensions).
  for (int mask = 1; mask < (1 << d); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < d; ++i)
      if (mask & (1 << i)) idx.push_back(i);
    CMat sub(idx.size(), CVec(idx.size()));
    for (size_t a = 0; a < idx.size(); ++a)
      for (size_t b = 0; b < idx.size(); ++b)
        sub[a][b] = m_[static_cast<size_t>(idx[a])][static_cast<size_t>(idx[b])];
    if (det(std::move(sub)).real() < -kFloatTol) fail(Err::NotDensityMatrix, "negative principal minor");
  }
}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
  const int d = psi.dim();
  CMat m(static_cast<size_t>(d), CVec(static_cast<size_t>(d)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = psi[i] * std::conj(psi[j]);
  return DensityMatrix(std::move(m));
}

DVec born_vector(const PureState& psi, const CMat& basis) {
  require_square(basis, "measurement basis");
  if (static_cast<int>(basis.size()) != psi.dim()) fail(Err::DimensionMismatch, "basis/state dimensions");
  if (!is_unitary(basis)) fail(Err::NotUnitary, "measurement basis is not orthonormal");
  DVec out(basis.size(), 0.0);
  for (size_t i = 0; i < basis.size(); ++i) {
    Complex amp(0, 0);
    for (size_t j = 0; j < basis.size(); ++j) amp += std::conj(basis[i][j]) * psi[static_cast<int>(j)];
    out[i] = std::norm(amp);
  }
  return out;
}

DVec born_vector(const PureState& psi) { return born_vector(psi, cmat_identity(psi.dim())); }

std::vector<DVec> born_trajectory(const PureState& psi, const UnitaryFamily& u) {
  if (u.dim() != psi.dim()) fail(Err::DimensionMismatch, "family/state dimensions");
  std::vector<DVec> out;
  for (int k = 0; k < u.grid().size(); ++k) {
    const CVec evolved = cmat_vec(u.at(u.grid().at(k)), psi.amplitudes());
    out.push_back(born_vector(PureState(evolved)));
  }
  return out;
}

LinearityViolationReport quantum_linearity_violation(const UnitaryFamily& u, double lambda,
                                                     const PureState& phi, const PureState& chi,
                                                     const PureState& psi) {
  if (lambda < 0.0 || lambda > 1.0) fail(Err::LambdaOutOfRange, "lambda = " + std::to_string(lambda));
  const int d = u.dim();
  if (phi.dim() != d || chi.dim() != d || psi.dim() != d) fail(Err::DimensionMismatch, "state dimensions");

  const DVec p_psi0 = born_vector(psi);
  const DVec p_phi0 = born_vector(phi);
  const DVec p_chi0 = born_vector(chi);
  for (int i = 0; i < d; ++i)
    if (std::fabs(p_psi0[static_cast<size_t>(i)] - lambda * p_phi0[static_cast<size_t>(i)] -
                  (1 - lambda) * p_chi0[static_cast<size_t>(i)]) > kFloatTol)
      fail(Err::PreconditionFailed, "initial Born vectors are not in the required convex relation");

  LinearityViolationReport report;
  report.identity_holds = true;
  const double cross_coeff = 2.0 * std::sqrt(lambda * (1.0 - lambda));
  for (int k = 0; k < u.grid().size(); ++k) {
    const CMat& ut = u.at(u.grid().at(k));
    const DVec p_psi = born_vector(PureState(cmat_vec(ut, psi.amplitudes())));
    const CVec a = cmat_vec(ut, phi.amplitudes());
    const CVec b = cmat_vec(ut, chi.amplitudes());
    DVec viol(static_cast<size_t>(d), 0.0);
    DVec cross(static_cast<size_t>(d), 0.0);
    double sup = 0.0;
    for (int i = 0; i < d; ++i) {
      viol[static_cast<size_t>(i)] = p_psi[static_cast<size_t>(i)] -
                                     lambda * std::norm(a[static_cast<size_t>(i)]) -
                                     (1 - lambda) * std::norm(b[static_cast<size_t>(i)]);
      cross[static_cast<size_t>(i)] =
          cross_coeff * (std::conj(a[static_cast<size_t>(i)]) * b[static_cast<size_t>(i)]).real();
      sup = std::max(sup, std::fabs(viol[static_cast<size_t>(i)]));
      if (std::fabs(viol[static_cast<size_t>(i)] - cross[static_cast<size_t>(i)]) > kFloatTol)
        report.identity_holds = false;
    }
    report.sup_norm.push_back(sup);
    report.violation.push_back(std::move(viol));
    report.cross_terms.push_back(std::move(cross));
  }
  return report;
}

std::pair<DensityMatrix, DVec> density_evolution(const DensityMatrix& rho0, const UnitaryFamily& u, int t) {
  if (rho0.dim() != u.dim()) fail(Err::DimensionMismatch, "density/family dimensions");
  const CMat& ut = u.at(t);
  CMat evolved = cmat_mul(cmat_mul(ut, rho0.matrix()), cmat_adjoint(ut));
  DensityMatrix rho_t(std::move(evolved));
  DVec probs(static_cast<size_t>(rho_t.dim()), 0.0);
  for (int i = 0; i < rho_t.dim(); ++i)
    probs[static_cast<size_t>(i)] = rho_t.matrix()[static_cast<size_t>(i)][static_cast<size_t>(i)].real();
  return {std::move(rho_t), std::move(probs)};
}

std::array<double, 6> tomographic_vector(const DensityMatrix& rho) {
  if (rho.dim() != 2) fail(Err::WrongDimension, "tomographic vector is defined for qubits");
  const double s = 1.0 / std::sqrt(2.0);
  const CVec zp = {Complex(1, 0), Complex(0, 0)};
  const CVec zm = {Complex(0, 0), Complex(1, 0)};
  const CVec xp = {Complex(s, 0), Complex(s, 0)};
  const CVec xm = {Complex(s, 0), Complex(-s, 0)};
  const CVec yp = {Complex(s, 0), Complex(0, s)};
  const CVec ym = {Complex(s, 0), Complex(0, -s)};
  auto expectation = [&](const CVec& v) {
    Complex acc(0, 0);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        acc += std::conj(v[static_cast<size_t>(i)]) * rho.matrix()[static_cast<size_t>(i)][static_cast<size_t>(j)] * v[static_cast<size_t>(j)];
    return acc.real();
  };
  return {expectation(zp), expectation(zm), expectation(xp), expectation(xm), expectation(yp), expectation(ym)};
}

DMat unistochastic_of(const CMat& u) {
  if (!is_unitary(u)) fail(Err::NotUnitary, "Schur-Hadamard square of a non-unitary");
  const int d = static_cast<int>(u.size());
  DMat out(static_cast<size_t>(d), DVec(static_cast<size_t>(d), 0.0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::norm(u[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  return out;
}

InterferenceReport interference_discrepancy(const UnitaryFamily& u, int t, int t_prime) {
  if (t_prime > t) fail(Err::InvalidTime, "need t' <= t");
  const int d = u.dim();
  const CMat rel = u.relative(t, t_prime);
  const DMat p_t = unistochastic_of(u.at(t));
  const DMat p_tp = unistochastic_of(u.at(t_prime));
  const DMat sh_rel = unistochastic_of(rel);

  InterferenceReport report;
  report.sh_of_relative = sh_rel;
  report.discrepancy = DMat(static_cast<size_t>(d), DVec(static_cast<size_t>(d), 0.0));
  report.cross_terms = DMat(static_cast<size_t>(d), DVec(static_cast<size_t>(d), 0.0));

  const DMat division = dmat_mul(sh_rel, p_tp);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      report.discrepancy[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          p_t[static_cast<size_t>(i)][static_cast<size_t>(j)] - division[static_cast<size_t>(i)][static_cast<size_t>(j)];

  // Cross-term form: sum over k != l of conj(R_ik v_k) R_il v_l, v = U(t') e_j.
  const CMat& utp = u.at(t_prime);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      Complex acc(0, 0);
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          if (k == l) continue;
          const Complex vk = utp[static_cast<size_t>(k)][static_cast<size_t>(j)];
          const Complex vl = utp[static_cast<size_t>(l)][static_cast<size_t>(j)];
          acc += std::conj(rel[static_cast<size_t>(i)][static_cast<size_t>(k)] * vk) *
                 rel[static_cast<size_t>(i)][static_cast<size_t>(l)] * vl;
        }
      report.cross_terms[static_cast<size_t>(i)][static_cast<size_t>(j)] = acc.real();
    }
  }
  report.identity_holds = dmat_close(report.discrepancy, report.cross_terms, kFloatTol);

  auto inv = real_inverse(p_tp);
  report.intermediate_invertible = inv.has_value();
  if (inv.has_value()) {
    report.p_ratio = dmat_mul(p_t, *inv);
    report.diagram_commutes = dmat_close(report.sh_of_relative, report.p_ratio, kFloatTol);
  }
  return report;
}

bool quantum_decomposition_check(const UnitaryFamily& u, const PureState& psi, int t, int t_prime) {
  if (t_prime > t) fail(Err::InvalidTime, "need t' <= t");
  const DVec direct = born_vector(PureState(cmat_vec(u.at(t), psi.amplitudes())));
  const CVec mid = cmat_vec(u.at(t_prime), psi.amplitudes());
  const DVec stepped = born_vector(PureState(cmat_vec(u.relative(t, t_prime), mid)));
  for (size_t i = 0; i < direct.size(); ++i)
    if (std::fabs(direct[i] - stepped[i]) > kFloatTol) return false;
  return true;
}

FloatDivisibility divisibility_from_unitaries(const UnitaryFamily& u, int t, int t_prime) {
  if (t_prime > t) fail(Err::InvalidTime, "need t' <= t");
  const DMat p_t = unistochastic_of(u.at(t));
  const DMat p_tp = unistochastic_of(u.at(t_prime));
  auto inv = real_inverse(p_tp);
  if (!inv.has_value()) fail(Err::SingularIntermediate, "P(t') is not invertible");
  FloatDivisibility out;
  out.candidate = dmat_mul(p_t, *inv);
  out.divisible = true;
  const int d = static_cast<int>(out.candidate.size());
  for (int j = 0; j < d; ++j) {
    double colsum = 0;
    for (int i = 0; i < d; ++i) {
      const double x = out.candidate[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (x < -kFloatTol || x > 1.0 + kFloatTol) out.divisible = false;
      colsum += x;
    }
    if (std::fabs(colsum - 1.0) > kFloatTol) out.divisible = false;
  }
  return out;
}

CMat rotation(double theta) {
  return {{Complex(std::cos(theta), 0), Complex(-std::sin(theta), 0)},
          {Complex(std::sin(theta), 0), Complex(std::cos(theta), 0)}};
}

}  // namespace stoqdyn
