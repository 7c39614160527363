#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "stoqdyn/fixtures.hpp"
#include "support/gen.hpp"

using namespace stoqdyn;

namespace {
Rational r(long num, long den = 1) { return Rational(num, den); }

std::vector<ProbVector> intro_trajectory_at_half() {
  return {ProbVector({r(1, 2), r(1, 2)}), ProbVector({r(1, 4), r(3, 4)}), ProbVector({r(1, 2), r(1, 2)})};
}
}  // namespace

TEST_CASE("implements compares marginals exactly") {
  const auto traj = intro_trajectory_at_half();
  const auto mu = markov_implementation(TimeGrid::range(2), traj);
  CHECK(implements(mu, traj));

  auto flipped = traj;
  flipped[1] = ProbVector({r(3, 4), r(1, 4)});
  CHECK(!implements(mu, flipped));

  CHECK_THROWS_AS(implements(mu, {traj[0], traj[1]}), Error);
}

TEST_CASE("family_implements on fixed families") {
  const auto flip_dyn = ProbabilityDynamics::from_matrices(flip_family());
  const auto product_family = markov_family(flip_dyn);
  CHECK(family_implements(product_family, flip_dyn));

  std::map<int, StochasticMatrix> id_mats;
  id_mats.emplace(0, StochasticMatrix::identity(2));
  id_mats.emplace(1, StochasticMatrix::identity(2));
  const auto identity_dyn = ProbabilityDynamics::from_matrices(MatrixFamily(TimeGrid::range(1), std::move(id_mats)));
  CHECK(!family_implements(product_family, identity_dyn));

  const auto intro = intro_coin_dynamics(true);
  CHECK(family_implements(markov_family(intro), intro));
}

TEST_CASE("transition constancy verdicts") {
  const auto flip_dyn = ProbabilityDynamics::from_matrices(flip_family());
  auto product_verdict = is_transition_constant(markov_family(flip_dyn));
  REQUIRE(!product_verdict.transition_constant);
  REQUIRE(product_verdict.witness.has_value());
  // The witness names a genuine disagreement between two members.
  const auto& w = *product_verdict.witness;
  CHECK(w.value_p0 != w.value_q0);

  auto constant_verdict = is_transition_constant(transition_constant_family(flip_family()));
  CHECK(constant_verdict.transition_constant);
  REQUIRE(constant_verdict.common.has_value());
  CHECK(constant_verdict.common->at(1) == flip_family().at(1));

  // Family of point masses: conditionals are 0/1 and identical across members.
  DeterministicSystem d(TimeGrid::range(2), 2, {{1, 2}, {2, 1}, {2, 1}});
  auto det_verdict = is_transition_constant(deterministic_family(d));
  CHECK(det_verdict.transition_constant);
}

TEST_CASE("markov_implementation fixed values") {
  const auto mu = markov_implementation(TimeGrid::range(1),
                                        {ProbVector({r(1, 2), r(1, 2)}), ProbVector({r(1, 4), r(3, 4)})});
  CHECK(mu.weight(Trajectory{{1, 2}}) == r(3, 8));

  const auto dirac = markov_implementation(
      TimeGrid::range(2), {ProbVector::vertex(2, 1), ProbVector::vertex(2, 2), ProbVector::vertex(2, 1)});
  CHECK(dirac.weight(Trajectory{{1, 2, 1}}) == r(1));

  const auto intro = markov_implementation(TimeGrid::range(2), intro_trajectory_at_half());
  CHECK(intro.weight(Trajectory{{1, 1, 1}}) == r(1, 16));
}

TEST_CASE("non_markov_implementation on the interior trajectory") {
  const auto traj = intro_trajectory_at_half();
  const auto mu = non_markov_implementation(TimeGrid::range(2), traj);
  CHECK(implements(mu, traj));
  CHECK(!is_markovian(mu).markovian);

  // Perturbation size is half the smallest slack (1/16 here), and the two
  // conditionals from the constructed table separate accordingly.
  auto with_history = conditional(mu, EventSpec({{2, 1}}), EventSpec({{1, 1}, {0, 1}}));
  auto last_only = conditional(mu, EventSpec({{2, 1}}), EventSpec({{1, 1}}));
  REQUIRE(with_history.has_value());
  REQUIRE(last_only.has_value());
  CHECK(*with_history == r(3, 4));
  CHECK(*last_only == r(1, 2));
}

TEST_CASE("non_markov_implementation with a vertex middle time") {
  const std::vector<ProbVector> traj = {ProbVector({r(1, 2), r(1, 2)}), ProbVector::vertex(2, 1),
                                        ProbVector({r(1, 2), r(1, 2)})};
  const auto mu = non_markov_implementation(TimeGrid::range(2), traj);
  CHECK(implements(mu, traj));
  // Table: only middle value 1 can occur; perturbed by eps = 1/8.
  CHECK(mu.weight(Trajectory{{1, 1, 1}}) == r(3, 8));
  CHECK(mu.weight(Trajectory{{1, 1, 2}}) == r(1, 8));
  CHECK(mu.weight(Trajectory{{2, 1, 1}}) == r(1, 8));
  CHECK(mu.weight(Trajectory{{2, 1, 2}}) == r(3, 8));
  CHECK(mu.weight(Trajectory{{1, 2, 1}}) == r(0));

  auto verdict = is_markovian(mu);
  REQUIRE(!verdict.markovian);
  CHECK(verdict.witness->times == std::vector<int>{0, 1, 2});
}

TEST_CASE("degenerate trajectories only have Markovian implementations") {
  const std::vector<ProbVector> vertices = {ProbVector::vertex(2, 1), ProbVector::vertex(2, 2),
                                            ProbVector::vertex(2, 1)};
  CHECK_THROWS_AS(non_markov_implementation(TimeGrid::range(2), vertices), Error);
  try {
    non_markov_implementation(TimeGrid::range(2), vertices);
  } catch (const Error& e) {
    CHECK(e.code() == Err::DegenerateTrajectory);
  }
}

TEST_CASE("transition_constant_family fixed values") {
  const auto flip = transition_constant_family(flip_family());
  CHECK(flip.member(ProbVector({r(1, 2), r(1, 2)})).weight(Trajectory{{1, 2}}) == r(1, 2));
  CHECK(family_implements(flip, ProbabilityDynamics::from_matrices(flip_family())));

  // Identity dynamics: each member is the p0-mixture of constant point masses.
  std::map<int, StochasticMatrix> id_mats;
  id_mats.emplace(0, StochasticMatrix::identity(2));
  id_mats.emplace(1, StochasticMatrix::identity(2));
  const auto id_family = transition_constant_family(MatrixFamily(TimeGrid::range(1), std::move(id_mats)));
  const auto& mu = id_family.member(ProbVector({r(1, 3), r(2, 3)}));
  CHECK(mu.weight(Trajectory{{1, 1}}) == r(1, 3));
  CHECK(mu.weight(Trajectory{{2, 2}}) == r(2, 3));
  CHECK(mu.weight(Trajectory{{1, 2}}) == r(0));

  // Conditionally independent two-step member at a vertex start.
  const auto ex2 = transition_constant_family(example2_family());
  const auto& vertex_member = ex2.member(ProbVector::vertex(2, 2));
  CHECK(vertex_member.weight(Trajectory{{2, 1, 1}}) == r(1, 2));
  CHECK(marginal_vector(vertex_member, 1) == ProbVector({r(1, 2), r(1, 2)}));
  CHECK(marginal_vector(vertex_member, 2) == ProbVector::vertex(2, 1));
}

TEST_CASE("family extension requires a generator") {
  const auto fam = transition_constant_family(flip_family(), 2);
  const ProbVector off_grid({r(1, 7), r(6, 7)});
  CHECK(fam.find(off_grid) == nullptr);
  const auto extended = fam.member_or_generate(off_grid);
  CHECK(marginal_vector(extended, 0) == off_grid);

  // Extensionally given family: no rule, extension rejected.
  ProcessFamily bare(fam.grid(), fam.n(), {fam.members().front()}, GeneratorKind::None, nullptr);
  CHECK_THROWS_AS(bare.member_or_generate(off_grid), Error);
}

TEST_CASE("product family implements every dynamics it is built from") {
  auto rng = testgen::make_rng(41);
  for (int iter = 0; iter < 20; ++iter) {
    const int n = testgen::uniform_int(rng, 2, 3);
    const int tau = testgen::uniform_int(rng, 1, 3);
    const auto fam = testgen::random_matrix_family(rng, n, tau, iter);
    const auto dyn = ProbabilityDynamics::from_matrices(fam);
    const auto family = markov_family(dyn, 3);
    CHECK(family_implements(family, dyn));
    for (const auto& [p0, mu] : family.members()) {
      (void)p0;
      CHECK(is_markovian(mu).markovian);
    }
  }
}

TEST_CASE("transition-constant families induce linear dynamics") {
  auto rng = testgen::make_rng(42);
  for (int iter = 0; iter < 15; ++iter) {
    const int n = testgen::uniform_int(rng, 2, 3);
    const int tau = testgen::uniform_int(rng, 1, 2);
    const auto fam = testgen::random_matrix_family(rng, n, tau, iter);
    const auto family = transition_constant_family(fam, 3);
    auto verdict = is_transition_constant(family);
    REQUIRE(verdict.transition_constant);
    for (int k = 0; k <= tau; ++k) CHECK(verdict.common->at(k) == fam.at(k));
    auto lin = is_linear(induced_dynamics(family));
    CHECK(lin.linear());
    REQUIRE(lin.matrices.has_value());
    for (int k = 0; k <= tau; ++k) CHECK(lin.matrices->at(k) == fam.at(k));
  }
}

TEST_CASE("both constructors implement, with different tables") {
  auto rng = testgen::make_rng(43);
  for (int iter = 0; iter < 25; ++iter) {
    const int n = testgen::uniform_int(rng, 2, 3);
    const int tau = testgen::uniform_int(rng, 2, 4);
    const auto traj = testgen::random_nondegenerate_trajectory(rng, n, tau);
    REQUIRE(is_non_degenerate(traj));
    const auto grid = TimeGrid::range(tau);
    const auto markov = markov_implementation(grid, traj);
    const auto non_markov = non_markov_implementation(grid, traj);
    CHECK(implements(markov, traj));
    CHECK(implements(non_markov, traj));
    CHECK(markov != non_markov);
    CHECK(is_markovian(markov).markovian);
    CHECK(!is_markovian(non_markov).markovian);
  }
}

TEST_CASE("inner representation recovers members by conditioning") {
  const auto fam = markov_family(ProbabilityDynamics::from_matrices(flip_family()));
  const ProbVector e1 = ProbVector::vertex(2, 1);
  const ProbVector e2 = ProbVector::vertex(2, 2);

  auto single = finite_inner_representation(fam, {{e1, r(1)}});
  CHECK(single.condition_on(0) == fam.member(e1));

  auto uniform = finite_inner_representation(fam, {{e1, r(1, 2)}, {e2, r(1, 2)}});
  CHECK(uniform.condition_on(0) == fam.member(e1));
  CHECK(uniform.condition_on(1) == fam.member(e2));

  // The unconditional trajectory marginal is the weight-mixture of members.
  const auto intro_fam = markov_family(intro_coin_dynamics(true));
  const ProbVector half({r(1, 2), r(1, 2)});
  auto rep = finite_inner_representation(intro_fam, {{half, r(1, 2)}, {e1, r(1, 2)}});
  const auto mixed = rep.trajectory_marginal();
  CHECK(marginal_vector(mixed, 1) == ProbVector({r(5, 8), r(3, 8)}));
  CHECK(marginal_vector(mixed, 2) == ProbVector({r(3, 4), r(1, 4)}));

  CHECK_THROWS_AS(finite_inner_representation(fam, {{e1, r(1, 2)}, {e2, r(1, 3)}}), Error);
  CHECK_THROWS_AS(finite_inner_representation(fam, {{ProbVector({r(1, 7), r(6, 7)}), r(1)}}), Error);
}
