#include "stoqdyn/fixtures.hpp"

#include <cmath>

namespace stoqdyn {

namespace {

Rational r(long num, long den = 1) { return Rational(num, den); }

ProbVector pv(std::vector<Rational> xs) { return ProbVector(std::move(xs)); }

struct Checker {
  Json checks = Json::array();
  bool all = true;

  void add(const std::string& name, bool ok, Json expected, Json actual) {
    checks.push_back(Json{{"name", name}, {"pass", ok}, {"expected", std::move(expected)}, {"actual", std::move(actual)}});
    all = all && ok;
  }
  void add(const std::string& name, bool ok) {
    checks.push_back(Json{{"name", name}, {"pass", ok}});
    all = all && ok;
  }
};

bool close(double a, double b) { return std::fabs(a - b) <= kFloatTol; }

}  // namespace

ProbabilityDynamics intro_coin_dynamics(bool square_bias) {
  // Two configurations; the bias moves at the middle time and returns.
  return ProbabilityDynamics::from_black_box(
      TimeGrid::range(2), 2, [square_bias](int t, const ProbVector& p0) {
        if (t != 1) return p0;
        const Rational moved = square_bias ? p0[0] * p0[0] : p0[0];
        return ProbVector({moved, Rational(1) - moved});
      });
}

MatrixFamily flip_family() {
  std::map<int, StochasticMatrix> mats;
  mats.emplace(0, StochasticMatrix::identity(2));
  mats.emplace(1, StochasticMatrix({{r(0), r(1)}, {r(1), r(0)}}));
  return MatrixFamily(TimeGrid::range(1), std::move(mats));
}

MatrixFamily merge_then_split_family() {
  std::map<int, StochasticMatrix> mats;
  mats.emplace(0, StochasticMatrix::identity(2));
  mats.emplace(1, StochasticMatrix({{r(1), r(0)}, {r(1), r(0)}}));
  mats.emplace(2, StochasticMatrix::identity(2));
  return MatrixFamily(TimeGrid::range(2), std::move(mats));
}

MatrixFamily example2_family() {
  std::map<int, StochasticMatrix> mats;
  mats.emplace(0, StochasticMatrix::identity(2));
  mats.emplace(1, StochasticMatrix({{r(1), r(0)}, {r(1, 2), r(1, 2)}}));
  mats.emplace(2, StochasticMatrix({{r(1, 2), r(1, 2)}, {r(1), r(0)}}));
  return MatrixFamily(TimeGrid::range(2), std::move(mats));
}

SystemAncilla sec54_system_ancilla() {
  // table[k][i-1][alpha-1]
  std::vector<std::vector<std::vector<int>>> table = {
      {{1, 1}, {2, 2}},  // t = 0: identity for both ancilla values
      {{1, 1}, {1, 2}},  // t = 1
      {{1, 2}, {1, 1}},  // t = 2
  };
  return SystemAncilla(TimeGrid::range(2), 2, 2, std::move(table));
}

UnitaryFamily rotation_family_pi8() {
  const double pi = std::acos(-1.0);
  std::map<int, CMat> mats;
  mats.emplace(0, cmat_identity(2));
  mats.emplace(1, rotation(pi / 8));
  mats.emplace(2, rotation(3 * pi / 8));
  return UnitaryFamily(TimeGrid::range(2), std::move(mats));
}

namespace {

FixtureResult run_intro_coin() {
  Checker ck;
  const auto nonlinear = intro_coin_dynamics(true);
  const auto linear = intro_coin_dynamics(false);
  const ProbVector half = pv({r(1, 2), r(1, 2)});

  auto lv = is_linear(nonlinear);
  ck.add("square-bias dynamics is nonlinear", lv.status == LinearityStatus::Nonlinear);
  Json witness_json = lv.witness.has_value() ? linearity_to_json(lv).at("witness") : Json();
  const bool witness_values =
      lv.witness.has_value() && lv.witness->t == 1 &&
      lv.witness->combined_image == pv({r(1, 4), r(3, 4)}) &&
      lv.witness->mixture_of_images == half;
  ck.add("nonlinearity witness: middle-time image (1/4,3/4) vs mixture (1/2,1/2)", witness_values,
         Json{{"combined_image", Json::array({"1/4", "3/4"})}, {"mixture_of_images", Json::array({"1/2", "1/2"})}},
         witness_json);

  auto lv2 = is_linear(linear);
  ck.add("identity-bias dynamics is linear", lv2.linear());

  const auto solution = nonlinear.solution(half);
  const auto mu = markov_implementation(nonlinear.grid(), solution);
  const Rational hhh = mu.weight(Trajectory{{1, 1, 1}});
  ck.add("product measure weight of the all-1 trajectory", hhh == r(1, 16), "1/16", to_string(hhh));
  ck.add("product measure implements the trajectory", implements(mu, solution));
  ck.add("product measure is Markovian", is_markovian(mu).markovian);

  const auto nm = non_markov_implementation(nonlinear.grid(), solution);
  ck.add("perturbed measure implements the trajectory", implements(nm, solution));
  ck.add("perturbed measure is non-Markovian", !is_markovian(nm).markovian);
  ck.add("the two implementations differ", nm != mu);

  FixtureResult out;
  out.id = "intro-coin";
  out.pass = ck.all;
  out.report = Json{{"fixture", out.id},
                    {"description", "nonlinear two-configuration bias dynamics with Markovian and "
                                    "non-Markovian implementations of the same trajectory"},
                    {"checks", std::move(ck.checks)},
                    {"pass", out.pass}};
  return out;
}

FixtureResult run_example1_flip() {
  Checker ck;
  const auto fam = flip_family();
  const auto dyn = ProbabilityDynamics::from_matrices(fam);
  const ProbVector half = pv({r(1, 2), r(1, 2)});

  const auto family = markov_family(dyn);
  ck.add("product family implements the flip dynamics", family_implements(family, dyn));

  const auto tm = transition_matrix(family.member(half), 1, 0);
  const auto tm_total = tm.as_total();
  const StochasticMatrix expected({{r(1, 2), r(1, 2)}, {r(1, 2), r(1, 2)}});
  ck.add("conditional matrix at the balanced start has equal columns",
         tm_total.has_value() && *tm_total == expected,
         stochastic_matrix_to_json(expected),
         partial_matrix_to_json(tm));

  auto tc = is_transition_constant(family);
  ck.add("product family is not transition-constant", !tc.transition_constant);

  const auto constant_family = transition_constant_family(fam);
  auto tc2 = is_transition_constant(constant_family);
  ck.add("conditionally-independent family is transition-constant", tc2.transition_constant);
  ck.add("its common matrices equal the dynamics matrices",
         tc2.common.has_value() && tc2.common->at(1) == fam.at(1));
  const Rational w12 = constant_family.member(half).weight(Trajectory{{1, 2}});
  ck.add("member weight of trajectory (1,2) at the balanced start", w12 == r(1, 2), "1/2", to_string(w12));
  ck.add("family implements the flip dynamics", family_implements(constant_family, dyn));

  FixtureResult out;
  out.id = "example-1-flip";
  out.pass = ck.all;
  out.report = Json{{"fixture", out.id},
                    {"description", "flip dynamics: conditional matrices depend on the initial vector "
                                    "for the product family but not for the conditionally independent one"},
                    {"checks", std::move(ck.checks)},
                    {"pass", out.pass}};
  return out;
}

FixtureResult run_example2() {
  Checker ck;
  const auto fam = example2_family();

  auto dec = kernel_decomposable(fam);
  ck.add("decomposable", dec.decomposable);

  auto div = is_divisible(fam);
  ck.add("not divisible", !div.divisible);

  const RationalMatrix expected_candidate = [] {
    RationalMatrix m(2, 2);
    m.at(0, 0) = r(1, 2);
    m.at(0, 1) = r(3, 2);
    m.at(1, 0) = r(1, 2);
    m.at(1, 1) = r(-1, 2);
    return m;
  }();
  bool pair_found = false;
  Json pair_json;
  for (const auto& p : div.pairs) {
    if (p.t_prime == 1 && p.t == 2) {
      pair_found = p.status == DivisibilityStatus::NotDivisible && p.candidate.has_value() &&
                   *p.candidate == expected_candidate;
      pair_json = Json{{"status", p.status == DivisibilityStatus::NotDivisible ? "NOT_DIVISIBLE" : "other"},
                       {"candidate", p.candidate.has_value() ? rational_matrix_to_json(*p.candidate) : Json()}};
    }
  }
  ck.add("unique candidate at (1,2) is ((1/2,3/2),(1/2,-1/2)) and rejected", pair_found,
         Json{{"status", "NOT_DIVISIBLE"},
              {"candidate", Json::array({Json::array({"1/2", "1/2"}), Json::array({"3/2", "-1/2"})})}},
         pair_json);

  auto th = is_time_homogeneous_dynamics(ProbabilityDynamics::from_matrices(fam));
  ck.add("not time-homogeneous", !th.time_homogeneous);

  FixtureResult out;
  out.id = "example-2-nondivisible";
  out.pass = ck.all;
  out.report = Json{{"fixture", out.id},
                    {"description", "two-step matrix dynamics that is decomposable but not divisible"},
                    {"divisibility", divisibility_to_json(div)},
                    {"checks", std::move(ck.checks)},
                    {"pass", out.pass}};
  return out;
}

FixtureResult run_appendix_c() {
  Checker ck;
  const auto u = rotation_family_pi8();
  const double pi = std::acos(-1.0);

  auto divis = divisibility_from_unitaries(u, 2, 1);
  const bool candidate_is_flip = close(divis.candidate[0][0], 0.0) && close(divis.candidate[0][1], 1.0) &&
                                 close(divis.candidate[1][0], 1.0) && close(divis.candidate[1][1], 0.0);
  ck.add("P(2) P(1)^{-1} equals the flip matrix", candidate_is_flip,
         Json::array({Json::array({0, 1}), Json::array({1, 0})}), Json(divis.candidate));
  ck.add("divisible", divis.divisible);

  auto report = interference_discrepancy(u, 2, 1);
  const bool sh_uniform = close(report.sh_of_relative[0][0], 0.5) && close(report.sh_of_relative[0][1], 0.5) &&
                          close(report.sh_of_relative[1][0], 0.5) && close(report.sh_of_relative[1][1], 0.5);
  ck.add("Schur-Hadamard square of the relative unitary is uniform", sh_uniform);
  const double expected_d11 = std::sin(pi / 8) * std::sin(pi / 8) - 0.5;
  ck.add("discrepancy entry (1,1)", close(report.discrepancy[0][0], expected_d11),
         Json(expected_d11), Json(report.discrepancy[0][0]));
  ck.add("discrepancy equals the cross-term form entrywise", report.identity_holds);
  ck.add("Schur-Hadamard square differs from P(2) P(1)^{-1}",
         report.intermediate_invertible && !report.diagram_commutes);

  FixtureResult out;
  out.id = "appendix-c-rotation";
  out.pass = ck.all;
  out.report = Json{{"fixture", out.id},
                    {"description", "rotation family: divisible dynamics whose relative-unitary "
                                    "Schur-Hadamard square is not the dividing stochastic matrix"},
                    {"discrepancy", Json(report.discrepancy)},
                    {"checks", std::move(ck.checks)},
                    {"pass", out.pass}};
  return out;
}

FixtureResult run_sec54() {
  Checker ck;
  const auto sa = sec54_system_ancilla();
  const ProbVector uniform_anc = pv({r(1, 2), r(1, 2)});
  const ProbVector half = pv({r(1, 2), r(1, 2)});
  const auto expected = example2_family();

  const auto family = ancilla_family_independent(sa, uniform_anc);
  auto tc = is_transition_constant(family);
  ck.add("family is transition-constant", tc.transition_constant);
  ck.add("common matrices equal the two-step example matrices",
         tc.common.has_value() && tc.common->at(1) == expected.at(1) && tc.common->at(2) == expected.at(2));

  const auto s = derive_stochastic_from_ancilla(sa, uniform_anc);
  const auto s_family = stochastic_family(s);
  bool same_tables = s_family.members().size() == family.members().size();
  for (size_t k = 0; same_tables && k < family.members().size(); ++k)
    same_tables = family.members()[k].first == s_family.members()[k].first &&
                  family.members()[k].second == s_family.members()[k].second;
  ck.add("induced stochastic system reproduces the ancilla family table-exactly", same_tables);

  auto dec = kernel_decomposable(expected);
  auto div = is_divisible(expected);
  ck.add("induced dynamics decomposable", dec.decomposable);
  ck.add("induced dynamics not divisible", !div.divisible);

  const auto& mu = family.member(half);
  auto c1 = conditional(mu, EventSpec({{2, 1}}), EventSpec({{1, 1}, {0, 1}}));
  auto c2 = conditional(mu, EventSpec({{2, 1}}), EventSpec({{1, 1}, {0, 2}}));
  ck.add("conditional on the 1->1 history is 1/2", c1.has_value() && *c1 == r(1, 2), "1/2",
         c1.has_value() ? to_string(*c1) : "undefined");
  ck.add("conditional on the 2->1 history is 1", c2.has_value() && *c2 == r(1), "1",
         c2.has_value() ? to_string(*c2) : "undefined");
  ck.add("member at the balanced start is non-Markovian", !is_markovian(mu).markovian);

  FixtureResult out;
  out.id = "sec54-ancilla";
  out.pass = ck.all;
  out.report = Json{{"fixture", out.id},
                    {"description", "two-value ancilla with uniform initial distribution: "
                                    "transition-constant family, decomposable non-divisible dynamics, "
                                    "non-Markovian members"},
                    {"checks", std::move(ck.checks)},
                    {"pass", out.pass}};
  return out;
}

FixtureResult run_qubit_interference() {
  Checker ck;
  const double pi = std::acos(-1.0);
  const double s = 1.0 / std::sqrt(2.0);

  std::map<int, CMat> mats;
  mats.emplace(0, cmat_identity(2));
  mats.emplace(1, rotation(pi / 4));
  UnitaryFamily u(TimeGrid::range(1), std::move(mats));

  const PureState plus({Complex(s, 0), Complex(s, 0)});
  const PureState e1({Complex(1, 0), Complex(0, 0)});
  const PureState e2({Complex(0, 0), Complex(1, 0)});

  auto viol = quantum_linearity_violation(u, 0.5, e1, e2, plus);
  ck.add("violation at the rotated time has sup-norm 1/2", close(viol.sup_norm[1], 0.5), Json(0.5),
         Json(viol.sup_norm[1]));
  ck.add("violation equals the interference cross terms", viol.identity_holds);

  const auto v1 = tomographic_vector(DensityMatrix::pure(e1));
  const auto v2 = tomographic_vector(DensityMatrix::pure(e2));
  const auto vp = tomographic_vector(DensityMatrix::pure(plus));
  auto nearly = [](const std::array<double, 6>& got, const std::array<double, 6>& want) {
    for (size_t i = 0; i < 6; ++i)
      if (std::fabs(got[i] - want[i]) > 1e-12) return false;
    return true;
  };
  ck.add("tomographic vector of the first basis state", nearly(v1, {1, 0, 0.5, 0.5, 0.5, 0.5}),
         Json::array({1, 0, 0.5, 0.5, 0.5, 0.5}), Json(v1));
  ck.add("tomographic vector of the second basis state", nearly(v2, {0, 1, 0.5, 0.5, 0.5, 0.5}),
         Json::array({0, 1, 0.5, 0.5, 0.5, 0.5}), Json(v2));
  ck.add("tomographic vector of the balanced superposition", nearly(vp, {0.5, 0.5, 1, 0, 0.5, 0.5}),
         Json::array({0.5, 0.5, 1, 0, 0.5, 0.5}), Json(vp));

  bool upper_block_matches = close(vp[0], 0.5 * v1[0] + 0.5 * v2[0]) && close(vp[1], 0.5 * v1[1] + 0.5 * v2[1]);
  bool whole_differs = false;
  for (size_t i = 0; i < 6; ++i)
    if (!close(vp[i], 0.5 * v1[i] + 0.5 * v2[i])) whole_differs = true;
  ck.add("upper block mixes while the whole vector does not", upper_block_matches && whole_differs);

  const auto rot_family = rotation_family_pi8();
  ck.add("two-step probability route agrees with the direct route",
         quantum_decomposition_check(rot_family, e1, 2, 1));

  FixtureResult out;
  out.id = "qubit-interference";
  out.pass = ck.all;
  out.report = Json{{"fixture", out.id},
                    {"description", "Born-probability nonlinearity of a rotated superposition, its "
                                    "tomographic completion, and state-level decomposability"},
                    {"checks", std::move(ck.checks)},
                    {"pass", out.pass}};
  return out;
}

FixtureResult run_example3() {
  Checker ck;
  // Coins that keep their maximal bias forever.
  DeterministicSystem d(TimeGrid::range(2), 2, {{1, 2}, {1, 2}, {1, 2}});
  const ProbVector half = pv({r(1, 2), r(1, 2)});

  const auto family = deterministic_family(d);
  const auto& mu = family.member(half);
  bool constant_marginals = true;
  for (int t = 0; t <= 2; ++t) constant_marginals = constant_marginals && marginal_vector(mu, t) == half;
  ck.add("ensemble marginals stay balanced", constant_marginals);

  auto dec = is_decomposable_deterministic(d);
  ck.add("deterministic system decomposable", dec.decomposable);
  auto tc = is_transition_constant(family);
  ck.add("family transition-constant with identity matrices",
         tc.transition_constant && tc.common.has_value() &&
             tc.common->at(1) == StochasticMatrix::identity(2) &&
             tc.common->at(2) == StochasticMatrix::identity(2));
  ck.add("every member is Markovian", [&] {
    for (const auto& [p0, m] : family.members()) {
      (void)p0;
      if (!is_markovian(m).markovian) return false;
    }
    return true;
  }());

  // The individual-coin dynamics with the same initial vector moves away from
  // the ensemble mixture.
  const auto individual = intro_coin_dynamics(true);
  const ProbVector moved = individual.evaluate(1, half);
  ck.add("individual-coin image at the middle time is (1/4,3/4)", moved == pv({r(1, 4), r(3, 4)}),
         Json::array({"1/4", "3/4"}), prob_vector_to_json(moved));
  const ProbVector mixture = convex_combine(r(1, 2), individual.evaluate(1, pv({r(1), r(0)})),
                                            individual.evaluate(1, pv({r(0), r(1)})));
  ck.add("ensemble mixture stays balanced", mixture == half);
  ck.add("the two evolutions disagree", moved != mixture);

  FixtureResult out;
  out.id = "example-3-mixing";
  out.pass = ck.all;
  out.report = Json{{"fixture", out.id},
                    {"description", "statistical mixture of biased coins versus a single coin with "
                                    "moving bias: same initial vector, different evolutions"},
                    {"checks", std::move(ck.checks)},
                    {"pass", out.pass}};
  return out;
}

}  // namespace

const std::vector<std::string>& fixture_ids() {
  static const std::vector<std::string> ids = {
      "intro-coin",     "example-1-flip",     "example-2-nondivisible", "appendix-c-rotation",
      "sec54-ancilla",  "qubit-interference", "example-3-mixing",
  };
  return ids;
}

FixtureResult run_fixture(const std::string& id) {
  if (id == "intro-coin") return run_intro_coin();
  if (id == "example-1-flip") return run_example1_flip();
  if (id == "example-2-nondivisible") return run_example2();
  if (id == "appendix-c-rotation") return run_appendix_c();
  if (id == "sec54-ancilla") return run_sec54();
  if (id == "qubit-interference") return run_qubit_interference();
  if (id == "example-3-mixing") return run_example3();
  fail(Err::SchemaError, "unknown fixture '" + id + "'");
}

}  // namespace stoqdyn
