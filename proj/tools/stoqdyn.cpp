#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "stoqdyn/fixtures.hpp"

namespace {

using namespace stoqdyn;

int exit_input_error(const Error& e) {
  std::cerr << "error: " << e.what() << "\n";
  return 1;
}

void write_output(const Json& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) fail(Err::ParseError, "cannot write " + out_path);
  out << report.dump(2) << "\n";
}

std::vector<Rational> parse_rational_list(const std::string& csv) {
  std::vector<Rational> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

void render_table(const Json& report, std::ostream& os) {
  // Flat key: value rendering for quick reading; the JSON is the contract.
  std::function<void(const Json&, const std::string&)> walk = [&](const Json& j, const std::string& prefix) {
    if (j.is_object()) {
      for (const auto& [k, v] : j.items()) walk(v, prefix.empty() ? k : prefix + "." + k);
    } else if (j.is_array() && !j.empty() && j.front().is_object()) {
      for (size_t i = 0; i < j.size(); ++i) walk(j[i], prefix + "[" + std::to_string(i) + "]");
    } else {
      os << prefix << ": " << j.dump() << "\n";
    }
  };
  walk(report, "");
}

Json analyze_dynamics(const ProbabilityDynamics& dyn, int grid_denominator) {
  Json report;
  report["scenario"] = "dynamics-analysis";
  report["n"] = dyn.n();
  report["grid"] = dyn.grid().times();

  auto lin = is_linear(dyn, grid_denominator);
  report["linearity"] = linearity_to_json(lin);

  auto dec = is_decomposable(dyn, grid_denominator);
  report["decomposability"] = decomposability_to_json(dec);

  if (lin.linear() && lin.matrices.has_value()) {
    report["divisibility"] = divisibility_to_json(is_divisible(*lin.matrices));
  } else {
    report["divisibility"] = Json{{"status", "NOT_APPLICABLE"}, {"reason", "dynamics is nonlinear"}};
  }

  try {
    auto th = is_time_homogeneous_dynamics(dyn, grid_denominator);
    Json tj;
    tj["time_homogeneous"] = th.time_homogeneous;
    if (th.witness.has_value()) {
      tj["witness"] = Json{{"t", th.witness->t}, {"t_prime", th.witness->t_prime}};
      if (th.witness->p0.has_value()) tj["witness"]["p0"] = prob_vector_to_json(*th.witness->p0);
    }
    report["time_homogeneity"] = std::move(tj);
  } catch (const Error& e) {
    if (e.code() != Err::GridNotDifferenceClosed) throw;
    report["time_homogeneity"] = Json{{"error", e.what()}};
  }
  return report;
}

Json check_measure(const TrajectoryMeasure& mu) {
  Json report;
  report["scenario"] = "process-check";
  report["n"] = mu.n_configs();
  report["grid"] = mu.grid().times();

  Json marginals = Json::array();
  for (int k = 0; k < mu.grid().size(); ++k) {
    marginals.push_back(Json{{"t", mu.grid().at(k)},
                             {"distribution", prob_vector_to_json(marginal_vector(mu, mu.grid().at(k)))}});
  }
  report["marginals"] = std::move(marginals);

  auto mk = is_markovian(mu);
  report["markov"] = markov_to_json(mk);

  Json ck = Json::array();
  for (int a = 0; a < mu.grid().size(); ++a)
    for (int b = a; b < mu.grid().size(); ++b) {
      auto v = check_chapman_kolmogorov(mu, mu.grid().at(b), mu.grid().at(a));
      Json e{{"t_prime", mu.grid().at(a)}, {"t", mu.grid().at(b)}, {"holds", v.holds}};
      if (v.witness.has_value())
        e["witness"] = Json{{"i", v.witness->i},
                            {"k", v.witness->k},
                            {"lhs", rational_to_json(v.witness->lhs)},
                            {"rhs", rational_to_json(v.witness->rhs)}};
      ck.push_back(std::move(e));
    }
  report["chapman_kolmogorov"] = std::move(ck);

  if (mk.markovian) {
    auto th = is_time_homogeneous(mu);
    Json tj{{"time_homogeneous", th.time_homogeneous}};
    if (th.witness.has_value())
      tj["witness"] = Json{{"t", th.witness->t},
                           {"t_prime", th.witness->t_prime},
                           {"i", th.witness->i},
                           {"j", th.witness->j},
                           {"lhs", rational_to_json(th.witness->lhs)},
                           {"rhs", rational_to_json(th.witness->rhs)}};
    report["time_homogeneity"] = std::move(tj);
  } else {
    report["time_homogeneity"] = Json{{"status", "not-applicable"}, {"reason", "measure is not Markovian"}};
  }
  return report;
}

Json quantum_demo(const std::string& name) {
  Json report;
  report["scenario"] = "quantum-demo";
  report["demo"] = name;
  if (name == "appendix-c") {
    const auto u = rotation_family_pi8();
    report["p1"] = Json(unistochastic_of(u.at(1)));
    report["p2"] = Json(unistochastic_of(u.at(2)));
    auto divis = divisibility_from_unitaries(u, 2, 1);
    report["p2_p1_inverse"] = Json(divis.candidate);
    report["divisible"] = divis.divisible;
    auto rep = interference_discrepancy(u, 2, 1);
    report["sh_of_relative_unitary"] = Json(rep.sh_of_relative);
    report["discrepancy"] = Json(rep.discrepancy);
    report["cross_terms"] = Json(rep.cross_terms);
    report["discrepancy_matches_cross_terms"] = rep.identity_holds;
    report["sh_square_equals_matrix_ratio"] = rep.diagram_commutes;
    return report;
  }
  if (name == "tomography") {
    const double s = 1.0 / std::sqrt(2.0);
    const PureState e1({Complex(1, 0), Complex(0, 0)});
    const PureState e2({Complex(0, 0), Complex(1, 0)});
    const PureState plus({Complex(s, 0), Complex(s, 0)});
    report["basis_state_1"] = Json(tomographic_vector(DensityMatrix::pure(e1)));
    report["basis_state_2"] = Json(tomographic_vector(DensityMatrix::pure(e2)));
    report["balanced_superposition"] = Json(tomographic_vector(DensityMatrix::pure(plus)));
    return report;
  }
  if (name == "nonlinearity") {
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
    report["sup_norm_per_time"] = Json(viol.sup_norm);
    report["violation"] = Json(viol.violation);
    report["cross_terms"] = Json(viol.cross_terms);
    report["violation_matches_cross_terms"] = viol.identity_holds;
    return report;
  }
  fail(Err::SchemaError, "unknown demo '" + name + "' (expected appendix-c, tomography, nonlinearity)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stoqdyn: exact toolkit for probability dynamics and canonical stochastic processes"};
  app.require_subcommand(1);

  std::string out_path;
  bool table_render = false;
  bool timing = false;
  app.add_option("-o,--out", out_path, "write the JSON report to a file")->capture_default_str();
  app.add_flag("--table", table_render, "also print a flat human-readable rendering to stderr");
  app.add_flag("--timing", timing, "include wall-clock timing in the report");

  // analyze
  std::string analyze_path;
  int grid_denominator = kDefaultGridDenominator;
  auto* analyze = app.add_subcommand("analyze", "linearity / decomposability / divisibility / "
                                                "time-homogeneity of a dynamics file");
  analyze->add_option("dynamics", analyze_path, "dynamics JSON file")->required();
  analyze->add_option("--grid-denominator", grid_denominator,
                      "denominator bound of the rational evaluation grid");

  // check
  std::string check_path;
  auto* check = app.add_subcommand("check", "Markov / Chapman-Kolmogorov / time-homogeneity checks of "
                                            "a measure file");
  check->add_option("measure", check_path, "measure JSON file")->required();

  // implement
  std::string implement_path, p0_csv;
  bool mode_markov = false, mode_non_markov = false, mode_transition_constant = false;
  auto* implement = app.add_subcommand("implement", "construct implementing measures/families for a "
                                                    "dynamics file");
  implement->add_option("dynamics", implement_path, "dynamics JSON file")->required();
  implement->add_flag("--markov", mode_markov, "product implementation of one solution (needs --p0)");
  implement->add_flag("--non-markov", mode_non_markov,
                      "perturbed implementation of one solution (needs --p0)");
  implement->add_flag("--transition-constant", mode_transition_constant,
                      "conditionally independent family for a matrix dynamics");
  implement->add_option("--p0", p0_csv, "initial distribution, e.g. 1/2,1/2");

  // realize
  std::string realize_path;
  bool realize_ancilla = false, realize_stochastic = false, realize_blocks = false;
  auto* realize = app.add_subcommand("realize", "system-ancilla and stochastic-system realizations");
  realize->add_option("input", realize_path, "family JSON (--ancilla) or dynamics JSON (--stochastic)")
      ->required();
  realize->add_flag("--ancilla", realize_ancilla, "realize a family through a trajectory-encoding ancilla");
  realize->add_flag("--blocks", realize_blocks,
                    "with --ancilla: treat the family's vertex members as a stochastic system and use "
                    "the block encoding");
  realize->add_flag("--stochastic", realize_stochastic,
                    "realize a linear matrix dynamics as a stochastic system (vertex product processes)");

  // quantum
  std::string demo_name;
  auto* quantum = app.add_subcommand("quantum", "quantum probability-evolution demos");
  quantum->add_option("--demo", demo_name, "one of: appendix-c, tomography, nonlinearity")->required();

  // reproduce
  std::string fixture_id;
  bool reproduce_all = false;
  auto* reproduce = app.add_subcommand("reproduce", "run registry scenarios and verify their expected "
                                                    "outputs");
  reproduce->add_option("id", fixture_id, "fixture id");
  reproduce->add_flag("--all", reproduce_all, "run every fixture");

  // schema
  std::string schema_name;
  auto* schema = app.add_subcommand("schema", "print the JSON schema for a file format");
  schema->add_option("name", schema_name, "dynamics | measure | family | detsystem | ancilla | unitary")
      ->required();

  // Let --out / --table / --timing appear after the subcommand name too.
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  const auto started = std::chrono::steady_clock::now();
  try {
    Json report;
    int exit_code = 0;

    if (*analyze) {
      report = analyze_dynamics(dynamics_from_json(load_json_file(analyze_path)), grid_denominator);
    } else if (*check) {
      report = check_measure(measure_from_json(load_json_file(check_path)));
    } else if (*implement) {
      if (mode_markov + mode_non_markov + mode_transition_constant != 1)
        fail(Err::SchemaError, "choose exactly one of --markov, --non-markov, --transition-constant");
      auto dyn = dynamics_from_json(load_json_file(implement_path));
      if (mode_transition_constant) {
        if (!dyn.has_matrices()) fail(Err::SchemaError, "--transition-constant needs a matrix_family file");
        report = family_to_json(transition_constant_family(dyn.matrices()));
      } else {
        if (p0_csv.empty()) fail(Err::SchemaError, "--markov/--non-markov need --p0");
        ProbVector p0(parse_rational_list(p0_csv));
        auto traj = dyn.solution(p0);
        auto mu = mode_markov ? markov_implementation(dyn.grid(), traj)
                              : non_markov_implementation(dyn.grid(), traj);
        report = measure_to_json(mu);
      }
    } else if (*realize) {
      if (realize_ancilla == realize_stochastic)
        fail(Err::SchemaError, "choose exactly one of --ancilla, --stochastic");
      if (realize_ancilla) {
        auto fam = family_from_json(load_json_file(realize_path));
        if (realize_blocks) {
          // Vertex members form a stochastic system.
          std::vector<TrajectoryMeasure> processes;
          for (int i = 1; i <= fam.n(); ++i) processes.push_back(fam.member(ProbVector::vertex(fam.n(), i)));
          auto realization = realize_stochastic_as_ancilla(StochasticSystem(fam.grid(), fam.n(), std::move(processes)));
          report["scenario"] = "realize-ancilla";
          report["encoding"] = "blocks";
          report["ancilla"] = ancilla_to_json(realization.sa);
          report["lambda0"] = prob_vector_to_json(realization.lambda0);
        } else {
          auto realization = realize_family_as_ancilla(fam);
          report["scenario"] = "realize-ancilla";
          report["encoding"] = "tails";
          report["ancilla"] = ancilla_to_json(realization.sa);
          Json joints = Json::array();
          for (const auto& [p0, pi] : realization.joints)
            joints.push_back(Json{{"p0", prob_vector_to_json(p0)}, {"pi", joint_initial_to_json(pi)}});
          report["joints"] = std::move(joints);
        }
      } else {
        auto dyn = dynamics_from_json(load_json_file(realize_path));
        if (!dyn.has_matrices()) fail(Err::SchemaError, "--stochastic needs a matrix_family file");
        auto s = realize_linear_as_stochastic(dyn.matrices());
        report["scenario"] = "realize-stochastic";
        Json processes = Json::array();
        for (int i = 1; i <= s.n(); ++i) processes.push_back(measure_to_json(s.process(i)));
        report["processes"] = std::move(processes);
      }
    } else if (*quantum) {
      report = quantum_demo(demo_name);
    } else if (*reproduce) {
      if (reproduce_all == !fixture_id.empty())
        fail(Err::SchemaError, "give a fixture id or --all");
      Json runs = Json::array();
      bool all_pass = true;
      const std::vector<std::string> ids = reproduce_all ? fixture_ids() : std::vector<std::string>{fixture_id};
      for (const auto& id : ids) {
        auto result = run_fixture(id);
        all_pass = all_pass && result.pass;
        runs.push_back(std::move(result.report));
      }
      report["scenario"] = "reproduce";
      report["runs"] = std::move(runs);
      report["pass"] = all_pass;
      if (!all_pass) exit_code = 2;
    } else if (*schema) {
      std::cout << emit_schema(schema_name) << "\n";
      return 0;
    }

    if (timing) {
      const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - started);
      report["timing_ms"] = elapsed.count();
    }
    write_output(report, out_path);
    if (table_render) render_table(report, std::cerr);
    return exit_code;
  } catch (const Error& e) {
    return exit_input_error(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
