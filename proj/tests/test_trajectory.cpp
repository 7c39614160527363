#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "stoqdyn/process_family.hpp"
#include "support/gen.hpp"

using namespace stoqdyn;

namespace {

Rational r(long num, long den = 1) { return Rational(num, den); }

// Independent reference: marginal by direct enumeration of the dense table.
ProbVector reference_marginal(const TrajectoryMeasure& mu, int t) {
  const int pos = mu.grid().index_of(t);
  std::vector<Rational> out(static_cast<size_t>(mu.n_configs()), Rational(0));
  for (size_t idx = 0; idx < mu.table_size(); ++idx) {
    const auto traj = mu.trajectory_at(idx);
    out[static_cast<size_t>(traj.configs[static_cast<size_t>(pos)] - 1)] += mu.table()[idx];
  }
  return ProbVector(std::move(out));
}

// Mixture of the two branch processes of the two-value-ancilla scenario at a
// balanced start: trajectories (1,1,1), (1,1,2), (2,1,1), (2,2,1), each 1/4.
TrajectoryMeasure balanced_ancilla_member() {
  std::map<Trajectory, Rational> w;
  w[Trajectory{{1, 1, 1}}] = r(1, 4);
  w[Trajectory{{1, 1, 2}}] = r(1, 4);
  w[Trajectory{{2, 1, 1}}] = r(1, 4);
  w[Trajectory{{2, 2, 1}}] = r(1, 4);
  return TrajectoryMeasure::from_sparse(TimeGrid::range(2), 2, w);
}

TrajectoryMeasure intro_product_measure() {
  // Balanced start, squared bias at the middle time, return at the end.
  std::vector<ProbVector> traj = {ProbVector({r(1, 2), r(1, 2)}), ProbVector({r(1, 4), r(3, 4)}),
                                  ProbVector({r(1, 2), r(1, 2)})};
  return markov_implementation(TimeGrid::range(2), traj);
}

}  // namespace

TEST_CASE("time grid validation") {
  CHECK_THROWS_AS(TimeGrid({1, 2}), Error);
  CHECK_THROWS_AS(TimeGrid({0, 2, 2}), Error);
  CHECK(TimeGrid::range(3).size() == 4);
  CHECK(TimeGrid({0, 1, 3}).difference_closed() == false);
  CHECK(TimeGrid::range(3).difference_closed());
}

TEST_CASE("joint probability on fixed measures") {
  const auto mu = intro_product_measure();
  CHECK(joint_probability(mu, EventSpec({{0, 1}, {1, 1}, {2, 1}})) == r(1, 16));
  CHECK(joint_probability(mu, EventSpec({})) == r(1));

  const auto member = balanced_ancilla_member();
  CHECK(joint_probability(member, EventSpec({{0, 1}, {1, 1}, {2, 1}})) == r(1, 4));
  // branch process of the same scenario started at configuration 1
  std::map<Trajectory, Rational> w;
  w[Trajectory{{1, 1, 1}}] = r(1, 2);
  w[Trajectory{{1, 1, 2}}] = r(1, 2);
  const auto mu1 = TrajectoryMeasure::from_sparse(TimeGrid::range(2), 2, w);
  CHECK(joint_probability(mu1, EventSpec({{0, 1}, {1, 1}, {2, 1}})) == r(1, 2));
}

TEST_CASE("invalid events are rejected, contradictory ones evaluate to zero") {
  const auto mu = intro_product_measure();
  CHECK_THROWS_AS(joint_probability(mu, EventSpec({{7, 1}})), Error);
  CHECK_THROWS_AS(joint_probability(mu, EventSpec({{0, 3}})), Error);
  const EventSpec contradictory({{0, 1}, {0, 2}});
  CHECK(contradictory.contradictory());
  CHECK(joint_probability(mu, contradictory) == r(0));
  // Duplicated identical constraints collapse.
  CHECK(joint_probability(mu, EventSpec({{0, 1}, {0, 1}})) == r(1, 2));
}

TEST_CASE("marginals of fixed measures") {
  const auto mu = intro_product_measure();
  CHECK(marginal_vector(mu, 1) == ProbVector({r(1, 4), r(3, 4)}));
  CHECK(marginal_vector(mu, 2) == ProbVector({r(1, 2), r(1, 2)}));

  const auto dirac = TrajectoryMeasure::dirac(TimeGrid::range(2), 3, Trajectory{{2, 1, 3}});
  CHECK(marginal_vector(dirac, 0) == ProbVector::vertex(3, 2));
  CHECK(marginal_vector(dirac, 2) == ProbVector::vertex(3, 3));

  const auto prod = markov_implementation(
      TimeGrid::range(1), {ProbVector({r(1, 2), r(1, 2)}), ProbVector({r(1, 3), r(2, 3)})});
  CHECK(marginal_vector(prod, 1) == ProbVector({r(1, 3), r(2, 3)}));
}

TEST_CASE("conditionals on fixed measures") {
  const auto member = balanced_ancilla_member();
  auto c1 = conditional(member, EventSpec({{2, 1}}), EventSpec({{1, 1}, {0, 1}}));
  REQUIRE(c1.has_value());
  CHECK(*c1 == r(1, 2));
  auto c2 = conditional(member, EventSpec({{2, 1}}), EventSpec({{1, 1}, {0, 2}}));
  REQUIRE(c2.has_value());
  CHECK(*c2 == r(1));

  const auto dirac = TrajectoryMeasure::dirac(TimeGrid::range(1), 2, Trajectory{{1, 1}});
  CHECK(!conditional(dirac, EventSpec({{1, 1}}), EventSpec({{0, 2}})).has_value());

  // Contradictory conjunction has probability zero rather than erroring.
  auto c3 = conditional(member, EventSpec({{1, 2}}), EventSpec({{1, 1}}));
  REQUIRE(c3.has_value());
  CHECK(*c3 == r(0));
}

TEST_CASE("transition matrices") {
  // Product family member: columns both equal the later marginal.
  const ProbVector p0({r(1, 3), r(2, 3)});
  const auto mu = markov_implementation(TimeGrid::range(1), {p0, ProbVector({r(2, 3), r(1, 3)})});
  auto m = transition_matrix(mu, 1, 0);
  REQUIRE(m.as_total().has_value());
  CHECK(*m.as_total() == StochasticMatrix({{r(2, 3), r(1, 3)}, {r(2, 3), r(1, 3)}}));

  // Dirac: the only defined column is the vertex the start maps to.
  const auto dirac = TrajectoryMeasure::dirac(TimeGrid::range(1), 2, Trajectory{{1, 2}});
  auto dm = transition_matrix(dirac, 1, 0);
  CHECK(dm.column_defined(0));
  CHECK(*dm.at(1, 0) == r(1));
  CHECK(!dm.defined(0, 1));

  // Independence: across distinct times, every defined column equals the
  // later marginal.
  const auto prod = markov_implementation(
      TimeGrid::range(2),
      {ProbVector({r(1, 2), r(1, 2)}), ProbVector({r(1, 3), r(2, 3)}), ProbVector({r(1, 5), r(4, 5)})});
  const std::vector<std::pair<int, int>> time_pairs = {{1, 0}, {2, 0}, {2, 1}};
  for (const auto& [t, tp] : time_pairs) {
    auto tm = transition_matrix(prod, t, tp);
    const auto marg = marginal_vector(prod, t);
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i) CHECK(*tm.at(i, j) == marg[i]);
  }
}

TEST_CASE("markov verdicts on fixed measures") {
  CHECK(is_markovian(intro_product_measure()).markovian);
  CHECK(is_markovian(TrajectoryMeasure::dirac(TimeGrid::range(3), 2, Trajectory{{1, 2, 1, 2}})).markovian);

  auto verdict = is_markovian(balanced_ancilla_member());
  REQUIRE(!verdict.markovian);
  REQUIRE(verdict.witness.has_value());
  CHECK(verdict.witness->times == std::vector<int>{0, 1, 2});
  CHECK(verdict.witness->configs == std::vector<int>{1, 1, 1});
  CHECK(verdict.witness->conditional_full_history == r(1, 2));
  CHECK(verdict.witness->conditional_last_only == r(2, 3));
}

TEST_CASE("markov check cap") {
  CHECK_THROWS_AS(is_markovian(TrajectoryMeasure::dirac(TimeGrid::range(7), 2, Trajectory{{1, 1, 1, 1, 1, 1, 1, 1}})),
                  Error);
}

TEST_CASE("time homogeneity of measures") {
  // Constant Dirac: all transitions are the identity on defined entries.
  const auto constant = TrajectoryMeasure::dirac(TimeGrid::range(2), 2, Trajectory{{1, 1, 1}});
  CHECK(is_time_homogeneous(constant).time_homogeneous);

  // Product measure with distinct marginals at the two later times.
  const auto prod = markov_implementation(
      TimeGrid::range(2),
      {ProbVector({r(1, 2), r(1, 2)}), ProbVector({r(1, 3), r(2, 3)}), ProbVector({r(1, 5), r(4, 5)})});
  CHECK(!is_time_homogeneous(prod).time_homogeneous);

  // Dirac through 1 -> 2 -> 1: the one-sided comparisons are all skipped, so
  // the quantified condition holds vacuously.
  const auto zigzag = TrajectoryMeasure::dirac(TimeGrid::range(2), 2, Trajectory{{1, 2, 1}});
  CHECK(is_time_homogeneous(zigzag).time_homogeneous);

  CHECK_THROWS_AS(is_time_homogeneous(balanced_ancilla_member()), Error);
}

TEST_CASE("chapman-kolmogorov on fixed measures") {
  const auto member = balanced_ancilla_member();
  CHECK(!check_chapman_kolmogorov(member, 2, 1).holds);
  CHECK(check_chapman_kolmogorov(member, 2, 2).holds);
  CHECK(check_chapman_kolmogorov(member, 1, 1).holds);
}

TEST_CASE("non-degeneracy") {
  const std::vector<ProbVector> intro = {ProbVector({r(1, 2), r(1, 2)}), ProbVector({r(1, 4), r(3, 4)}),
                                         ProbVector({r(1, 2), r(1, 2)})};
  CHECK(is_non_degenerate(intro));

  const std::vector<ProbVector> vertices = {ProbVector::vertex(2, 1), ProbVector::vertex(2, 2),
                                            ProbVector::vertex(2, 1)};
  CHECK(!is_non_degenerate(vertices));

  const std::vector<ProbVector> two_times = {ProbVector({r(1, 2), r(1, 2)}), ProbVector::vertex(2, 1)};
  CHECK(!is_non_degenerate(two_times));

  // Interior only at the two ends still qualifies.
  const std::vector<ProbVector> ends = {ProbVector({r(1, 2), r(1, 2)}), ProbVector::vertex(2, 1),
                                        ProbVector({r(1, 3), r(2, 3)})};
  CHECK(is_non_degenerate(ends));
}

TEST_CASE("law of total probability and the two-step identity") {
  auto rng = testgen::make_rng(21);
  for (int iter = 0; iter < 30; ++iter) {
    const int n = testgen::uniform_int(rng, 2, 3);
    const int tau = testgen::uniform_int(rng, 1, 3);
    const auto mu = testgen::random_measure(rng, n, tau);
    const auto m0 = marginal_vector(mu, 0);
    bool positive = true;
    for (int i = 0; i < n; ++i) positive = positive && m0[i] > 0;
    if (!positive) continue;
    for (int k = 1; k <= tau; ++k) {
      // marginal(t) = M(t<-0) marginal(0)
      auto tm = transition_matrix(mu, k, 0).as_total();
      REQUIRE(tm.has_value());
      CHECK(apply_matrix(*tm, m0) == marginal_vector(mu, k));
      // two-step identity through every intermediate time
      for (int mid = 0; mid <= k; ++mid) {
        auto a = transition_matrix(mu, k, mid);
        auto b = transition_matrix(mu, mid, 0).as_total();
        REQUIRE(b.has_value());
        const auto v = marginal_vector(mu, mid);
        std::vector<Rational> out(static_cast<size_t>(n), Rational(0));
        for (int j = 0; j < n; ++j) {
          if (v[j] == 0) continue;
          for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] += *a.at(i, j) * v[j];
        }
        CHECK(ProbVector(out) == marginal_vector(mu, k));
      }
    }
  }
}

TEST_CASE("markov chains satisfy chapman-kolmogorov") {
  auto rng = testgen::make_rng(22);
  for (int iter = 0; iter < 25; ++iter) {
    const int n = testgen::uniform_int(rng, 2, 3);
    const int tau = testgen::uniform_int(rng, 2, 3);
    const auto mu = testgen::random_chain_measure(rng, n, tau);
    CHECK(is_markovian(mu).markovian);
    for (int a = 0; a <= tau; ++a)
      for (int b = a; b <= tau; ++b) CHECK(check_chapman_kolmogorov(mu, b, a).holds);
  }
}

TEST_CASE("0/1 conditionals are stable under extra conditioning") {
  auto rng = testgen::make_rng(23);
  int exercised = 0;
  for (int iter = 0; iter < 60; ++iter) {
    const int n = 2;
    const int tau = 2;
    const auto mu = testgen::random_measure(rng, n, tau);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int c = 1; c <= n; ++c) {
          const EventSpec a({{2, i}});
          const EventSpec b({{1, j}});
          const EventSpec bc({{1, j}, {0, c}});
          auto base = conditional(mu, a, b);
          if (!base.has_value() || (*base != 0 && *base != 1)) continue;
          auto refined = conditional(mu, a, bc);
          if (!refined.has_value()) continue;
          CHECK(*refined == *base);
          ++exercised;
        }
  }
  CHECK(exercised > 0);
}

TEST_CASE("marginal consistency against the reference enumeration") {
  auto rng = testgen::make_rng(24);
  for (int iter = 0; iter < 40; ++iter) {
    const int n = testgen::uniform_int(rng, 2, 3);
    const int tau = testgen::uniform_int(rng, 1, 3);
    const auto mu = testgen::random_measure(rng, n, tau);
    for (int k = 0; k <= tau; ++k) CHECK(marginal_vector(mu, k) == reference_marginal(mu, k));
  }
}

TEST_CASE("measure serialization invariants") {
  // Negative weights and bad sums are rejected at construction.
  CHECK_THROWS_AS(TrajectoryMeasure(TimeGrid::range(1), 2, {r(1, 2), r(1, 2), r(1, 2), r(-1, 2)}), Error);
  CHECK_THROWS_AS(TrajectoryMeasure(TimeGrid::range(1), 2, {r(1, 2), r(1, 2), r(1, 2), r(1, 2)}), Error);
}
