#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "stoqdyn/fixtures.hpp"
#include "support/gen.hpp"

using namespace stoqdyn;

namespace {

const double kPi = std::acos(-1.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

PureState basis_state(int d, int i) {
  CVec v(static_cast<size_t>(d), Complex(0, 0));
  v[static_cast<size_t>(i - 1)] = Complex(1, 0);
  return PureState(std::move(v));
}

PureState plus_state() { return PureState({Complex(kInvSqrt2, 0), Complex(kInvSqrt2, 0)}); }

bool close(double a, double b, double tol = kFloatTol) { return std::fabs(a - b) <= tol; }

}  // namespace

TEST_CASE("born vectors") {
  auto p = born_vector(plus_state());
  CHECK(close(p[0], 0.5));
  CHECK(close(p[1], 0.5));

  auto e1 = born_vector(basis_state(2, 1));
  CHECK(close(e1[0], 1.0));
  CHECK(close(e1[1], 0.0));

  const double c = std::cos(kPi / 8), s = std::sin(kPi / 8);
  auto rotated = born_vector(PureState({Complex(c, 0), Complex(s, 0)}));
  CHECK(close(rotated[0], c * c));
  CHECK(close(rotated[1], s * s));

  CHECK_THROWS_AS(PureState({Complex(1, 0), Complex(1, 0)}), Error);
}

TEST_CASE("born trajectories") {
  std::map<int, CMat> mats;
  mats.emplace(0, cmat_identity(2));
  mats.emplace(1, rotation(kPi / 4));
  UnitaryFamily u(TimeGrid::range(1), std::move(mats));
  auto traj = born_trajectory(plus_state(), u);
  CHECK(close(traj[1][0], 0.0));
  CHECK(close(traj[1][1], 1.0));

  std::map<int, CMat> ids;
  ids.emplace(0, cmat_identity(2));
  ids.emplace(1, cmat_identity(2));
  UnitaryFamily trivial(TimeGrid::range(1), std::move(ids));
  auto constant = born_trajectory(plus_state(), trivial);
  CHECK(close(constant[0][0], constant[1][0]));

  auto appc = born_trajectory(basis_state(2, 1), rotation_family_pi8());
  CHECK(close(appc[1][0], std::cos(kPi / 8) * std::cos(kPi / 8)));
  CHECK(close(appc[1][1], std::sin(kPi / 8) * std::sin(kPi / 8)));
}

TEST_CASE("linearity violation at the quarter rotation") {
  std::map<int, CMat> mats;
  mats.emplace(0, cmat_identity(2));
  mats.emplace(1, rotation(kPi / 4));
  UnitaryFamily u(TimeGrid::range(1), std::move(mats));

  auto report = quantum_linearity_violation(u, 0.5, basis_state(2, 1), basis_state(2, 2), plus_state());
  CHECK(close(report.sup_norm[0], 0.0));
  CHECK(close(report.sup_norm[1], 0.5));
  CHECK(close(report.violation[1][0], -0.5));
  CHECK(close(report.violation[1][1], 0.5));
  CHECK(report.identity_holds);
}

TEST_CASE("violation vanishes without evolution or without overlap") {
  std::map<int, CMat> ids;
  ids.emplace(0, cmat_identity(2));
  ids.emplace(1, cmat_identity(2));
  UnitaryFamily trivial(TimeGrid::range(1), std::move(ids));
  auto no_evolution =
      quantum_linearity_violation(trivial, 0.5, basis_state(2, 1), basis_state(2, 2), plus_state());
  CHECK(close(no_evolution.sup_norm[1], 0.0));

  // Phase evolution keeps the supports of the two branches disjoint.
  std::map<int, CMat> phases;
  phases.emplace(0, cmat_identity(2));
  phases.emplace(1, CMat{{std::polar(1.0, 0.7), Complex(0, 0)}, {Complex(0, 0), std::polar(1.0, -1.1)}});
  UnitaryFamily phase_family(TimeGrid::range(1), std::move(phases));
  auto no_overlap =
      quantum_linearity_violation(phase_family, 0.5, basis_state(2, 1), basis_state(2, 2), plus_state());
  CHECK(close(no_overlap.sup_norm[1], 0.0));
  CHECK(no_overlap.identity_holds);

  // Violating the initial convex relation is a precondition failure.
  CHECK_THROWS_AS(
      quantum_linearity_violation(trivial, 0.25, basis_state(2, 1), basis_state(2, 2), plus_state()), Error);
}

TEST_CASE("density evolution") {
  auto rho_plus = DensityMatrix::pure(plus_state());
  CHECK(close(rho_plus.matrix()[0][0].real(), 0.5));
  CHECK(close(rho_plus.matrix()[0][1].real(), 0.5));
  CHECK(close(rho_plus.matrix()[1][0].real(), 0.5));

  std::map<int, CMat> mats;
  mats.emplace(0, cmat_identity(2));
  mats.emplace(1, rotation(kPi / 4));
  UnitaryFamily u(TimeGrid::range(1), std::move(mats));

  DensityMatrix mixed(CMat{{Complex(0.5, 0), Complex(0, 0)}, {Complex(0, 0), Complex(0.5, 0)}});
  auto [rho_t, probs] = density_evolution(mixed, u, 1);
  CHECK(close(probs[0], 0.5));
  CHECK(close(probs[1], 0.5));

  auto rho_e1 = DensityMatrix::pure(basis_state(2, 1));
  CHECK(close(rho_e1.matrix()[0][0].real(), 1.0));
  CHECK(close(rho_e1.matrix()[1][1].real(), 0.0));

  // Diagonal of the evolved pure density equals the Born trajectory.
  auto [evolved, diag] = density_evolution(DensityMatrix::pure(plus_state()), u, 1);
  auto traj = born_trajectory(plus_state(), u);
  CHECK(close(diag[0], traj[1][0]));
  CHECK(close(diag[1], traj[1][1]));

  CHECK_THROWS_AS(DensityMatrix(CMat{{Complex(2, 0), Complex(0, 0)}, {Complex(0, 0), Complex(-1, 0)}}), Error);
}

TEST_CASE("tomographic vectors") {
  auto v1 = tomographic_vector(DensityMatrix::pure(basis_state(2, 1)));
  const std::array<double, 6> expect1 = {1, 0, 0.5, 0.5, 0.5, 0.5};
  for (size_t i = 0; i < 6; ++i) CHECK(close(v1[i], expect1[i], 1e-12));

  auto vp = tomographic_vector(DensityMatrix::pure(plus_state()));
  const std::array<double, 6> expectp = {0.5, 0.5, 1, 0, 0.5, 0.5};
  for (size_t i = 0; i < 6; ++i) CHECK(close(vp[i], expectp[i], 1e-12));

  DensityMatrix mixed(CMat{{Complex(0.5, 0), Complex(0, 0)}, {Complex(0, 0), Complex(0.5, 0)}});
  for (double x : tomographic_vector(mixed)) CHECK(close(x, 0.5, 1e-12));

  DensityMatrix qutrit(CMat{{Complex(1, 0), Complex(0, 0), Complex(0, 0)},
                            {Complex(0, 0), Complex(0, 0), Complex(0, 0)},
                            {Complex(0, 0), Complex(0, 0), Complex(0, 0)}});
  CHECK_THROWS_AS(tomographic_vector(qutrit), Error);
}

TEST_CASE("tomographic evolution preserves convex combinations") {
  auto rng = testgen::make_rng(61);
  for (int iter = 0; iter < 30; ++iter) {
    const auto u = testgen::random_unitary(rng, 2);
    std::map<int, CMat> mats;
    mats.emplace(0, cmat_identity(2));
    mats.emplace(1, u);
    UnitaryFamily fam(TimeGrid::range(1), std::move(mats));
    const auto rho1 = DensityMatrix::pure(testgen::random_state(rng, 2));
    const auto rho2 = DensityMatrix::pure(testgen::random_state(rng, 2));
    const double lam = testgen::uniform_int(rng, 0, 10) / 10.0;
    CMat mixed(2, CVec(2));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        mixed[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            lam * rho1.matrix()[static_cast<size_t>(i)][static_cast<size_t>(j)] +
            (1 - lam) * rho2.matrix()[static_cast<size_t>(i)][static_cast<size_t>(j)];
    auto v_mixed = tomographic_vector(density_evolution(DensityMatrix(mixed), fam, 1).first);
    auto va = tomographic_vector(density_evolution(rho1, fam, 1).first);
    auto vb = tomographic_vector(density_evolution(rho2, fam, 1).first);
    for (size_t i = 0; i < 6; ++i) CHECK(close(v_mixed[i], lam * va[i] + (1 - lam) * vb[i]));
  }
}

TEST_CASE("upper block can mix while the whole vector does not") {
  auto v1 = tomographic_vector(DensityMatrix::pure(basis_state(2, 1)));
  auto v2 = tomographic_vector(DensityMatrix::pure(basis_state(2, 2)));
  auto vp = tomographic_vector(DensityMatrix::pure(plus_state()));
  CHECK(close(vp[0], 0.5 * v1[0] + 0.5 * v2[0]));
  CHECK(close(vp[1], 0.5 * v1[1] + 0.5 * v2[1]));
  bool equal_everywhere = true;
  for (size_t i = 0; i < 6; ++i)
    if (!close(vp[i], 0.5 * v1[i] + 0.5 * v2[i])) equal_everywhere = false;
  CHECK(!equal_everywhere);
}

TEST_CASE("unistochastic matrices") {
  auto p = unistochastic_of(rotation(kPi / 8));
  const double c2 = std::cos(kPi / 8) * std::cos(kPi / 8);
  CHECK(close(p[0][0], c2));
  CHECK(close(p[0][1], 1 - c2));
  CHECK(close(p[1][0], 1 - c2));
  CHECK(close(p[1][1], c2));

  auto id = unistochastic_of(cmat_identity(3));
  CHECK(close(id[0][0], 1.0));
  CHECK(close(id[1][0], 0.0));

  auto quarter = unistochastic_of(rotation(kPi / 4));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(close(quarter[i][j], 0.5));

  CHECK_THROWS_AS(unistochastic_of(CMat{{Complex(1, 0), Complex(1, 0)}, {Complex(0, 0), Complex(1, 0)}}),
                  Error);
}

TEST_CASE("interference discrepancy on the rotation family") {
  const auto u = rotation_family_pi8();
  auto report = interference_discrepancy(u, 2, 1);
  const double s2 = std::sin(kPi / 8) * std::sin(kPi / 8);
  CHECK(close(report.discrepancy[0][0], s2 - 0.5));
  CHECK(report.identity_holds);
  REQUIRE(report.intermediate_invertible);
  CHECK(!report.diagram_commutes);
  // SH of the relative unitary is the uniform matrix, unlike P(2) P(1)^{-1}.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(close(report.sh_of_relative[i][j], 0.5));
  CHECK(close(report.p_ratio[0][0], 0.0));
  CHECK(close(report.p_ratio[0][1], 1.0));
}

TEST_CASE("repeated unitary gives zero discrepancy") {
  std::map<int, CMat> mats;
  mats.emplace(0, cmat_identity(2));
  mats.emplace(1, rotation(0.3));
  mats.emplace(2, rotation(0.3));
  UnitaryFamily u(TimeGrid::range(2), std::move(mats));
  auto report = interference_discrepancy(u, 2, 1);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(close(report.discrepancy[i][j], 0.0));
  CHECK(report.identity_holds);
}

TEST_CASE("discrepancy identity on random families") {
  auto rng = testgen::make_rng(62);
  for (int d = 2; d <= 3; ++d)
    for (int iter = 0; iter < 20; ++iter) {
      const auto u = testgen::random_unitary_family(rng, d, 2);
      auto report = interference_discrepancy(u, 2, 1);
      CHECK(report.identity_holds);
    }
}

TEST_CASE("relative unitaries remain unitary") {
  auto rng = testgen::make_rng(63);
  for (int iter = 0; iter < 20; ++iter) {
    const auto u = testgen::random_unitary_family(rng, 3, 3);
    for (int a = 0; a <= 3; ++a)
      for (int b = a; b <= 3; ++b) CHECK(is_unitary(u.relative(b, a)));
  }
}

TEST_CASE("quantum decomposition check") {
  const auto u = rotation_family_pi8();
  CHECK(quantum_decomposition_check(u, basis_state(2, 1), 2, 1));
  CHECK(quantum_decomposition_check(u, basis_state(2, 1), 1, 1));

  auto rng = testgen::make_rng(64);
  for (int iter = 0; iter < 30; ++iter) {
    const auto fam = testgen::random_unitary_family(rng, 2, 2);
    const auto psi = testgen::random_state(rng, 2);
    CHECK(quantum_decomposition_check(fam, psi, 2, 1));
  }
}

TEST_CASE("divisibility on the float path") {
  auto divis = divisibility_from_unitaries(rotation_family_pi8(), 2, 1);
  CHECK(divis.divisible);
  CHECK(close(divis.candidate[0][1], 1.0));

  // 60-degree rotation after 30 degrees: candidate has negative entries.
  std::map<int, CMat> mats;
  mats.emplace(0, cmat_identity(2));
  mats.emplace(1, rotation(kPi / 6));
  mats.emplace(2, rotation(kPi / 2.5));
  UnitaryFamily u(TimeGrid::range(2), std::move(mats));
  auto verdict = divisibility_from_unitaries(u, 2, 1);
  CHECK(!verdict.divisible);
}

TEST_CASE("float product processes reproduce the unistochastic matrices") {
  // Double-precision mirror of the vertex-product realization: processes
  // mu_i(omega) = prod_t P(t)[omega_t, i] have marginals P(t) e_i.
  const auto u = rotation_family_pi8();
  std::vector<DMat> p = {unistochastic_of(u.at(0)), unistochastic_of(u.at(1)), unistochastic_of(u.at(2))};
  for (int i = 0; i < 2; ++i) {
    double table[2][2][2];
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) table[a][b][c] = p[0][a][i] * p[1][b][i] * p[2][c][i];
    for (int t = 1; t <= 2; ++t)
      for (int cfg = 0; cfg < 2; ++cfg) {
        double marg = 0;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
              if ((t == 1 ? b : c) == cfg) marg += table[a][b][c];
        CHECK(close(marg, p[static_cast<size_t>(t)][cfg][i]));
      }
  }
}

TEST_CASE("diagonal states evolve linearly on the diagonal; coherences break it") {
  std::map<int, CMat> mats;
  mats.emplace(0, cmat_identity(2));
  mats.emplace(1, rotation(kPi / 4));
  UnitaryFamily u(TimeGrid::range(1), std::move(mats));
  const auto p_matrix = unistochastic_of(u.at(1));

  // diag(U rho U^dagger) = P * diag(rho) for every diagonal rho.
  for (double top : {0.0, 0.25, 0.5, 1.0}) {
    DensityMatrix rho(CMat{{Complex(top, 0), Complex(0, 0)}, {Complex(0, 0), Complex(1 - top, 0)}});
    auto [rho_t, probs] = density_evolution(rho, u, 1);
    CHECK(close(probs[0], p_matrix[0][0] * top + p_matrix[0][1] * (1 - top)));
    CHECK(close(probs[1], p_matrix[1][0] * top + p_matrix[1][1] * (1 - top)));
  }

  // The superposition has the same diagonal as the balanced mixture but a
  // different evolved diagonal: the dashed arrow is not a function of the
  // diagonal alone.
  auto [rho_sup, probs_sup] = density_evolution(DensityMatrix::pure(plus_state()), u, 1);
  DensityMatrix balanced(CMat{{Complex(0.5, 0), Complex(0, 0)}, {Complex(0, 0), Complex(0.5, 0)}});
  auto [rho_mix, probs_mix] = density_evolution(balanced, u, 1);
  CHECK(!close(probs_sup[0], probs_mix[0]));
}
