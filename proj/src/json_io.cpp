#include "stoqdyn/json_io.hpp"

#include <fstream>

namespace stoqdyn {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) fail(Err::SchemaError, what);
}

TimeGrid grid_from_json(const Json& j) {
  require(j.is_array(), "grid must be an array of integers");
  std::vector<int> times;
  for (const auto& t : j) {
    require(t.is_number_integer(), "grid entries must be integers");
    times.push_back(t.get<int>());
  }
  try {
    return TimeGrid(std::move(times));
  } catch (const Error& e) {
    fail(Err::SchemaError, e.what());
  }
}

Json grid_to_json(const TimeGrid& grid) { return Json(grid.times()); }

}  // namespace

Json rational_to_json(const Rational& r) { return Json(to_string(r)); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  require(j.is_string(), "rationals are \"num/den\" strings");
  return parse_rational(j.get<std::string>());
}

Json prob_vector_to_json(const ProbVector& p) {
  Json out = Json::array();
  for (const auto& x : p.entries()) out.push_back(rational_to_json(x));
  return out;
}

ProbVector prob_vector_from_json(const Json& j) {
  require(j.is_array(), "probability vector must be an array");
  std::vector<Rational> entries;
  for (const auto& x : j) entries.push_back(rational_from_json(x));
  return ProbVector(std::move(entries));
}

Json stochastic_matrix_to_json(const StochasticMatrix& m) {
  Json cols = Json::array();
  for (int j = 0; j < m.size(); ++j) {
    Json col = Json::array();
    for (const auto& x : m.col(j)) col.push_back(rational_to_json(x));
    cols.push_back(std::move(col));
  }
  return cols;
}

StochasticMatrix stochastic_matrix_from_json(const Json& j) {
  require(j.is_array(), "matrix must be an array of columns");
  std::vector<std::vector<Rational>> cols;
  for (const auto& cj : j) {
    require(cj.is_array(), "matrix column must be an array");
    std::vector<Rational> col;
    for (const auto& x : cj) col.push_back(rational_from_json(x));
    cols.push_back(std::move(col));
  }
  return StochasticMatrix(std::move(cols));
}

Json partial_matrix_to_json(const PartialStochasticMatrix& m) {
  Json cols = Json::array();
  for (int j = 0; j < m.size(); ++j) {
    Json col = Json::array();
    for (int i = 0; i < m.size(); ++i)
      col.push_back(m.defined(i, j) ? rational_to_json(*m.at(i, j)) : Json("undefined"));
    cols.push_back(std::move(col));
  }
  return cols;
}

Json rational_matrix_to_json(const RationalMatrix& m) {
  Json cols = Json::array();
  for (int j = 0; j < m.n_cols(); ++j) {
    Json col = Json::array();
    for (int i = 0; i < m.n_rows(); ++i) col.push_back(rational_to_json(m.at(i, j)));
    cols.push_back(std::move(col));
  }
  return cols;
}

Json measure_to_json(const TrajectoryMeasure& mu) {
  Json out;
  out["grid"] = grid_to_json(mu.grid());
  out["n"] = mu.n_configs();
  Json table = Json::array();
  for (size_t idx = 0; idx < mu.table_size(); ++idx) {
    const Rational& w = mu.table()[idx];
    if (w == 0) continue;  // omitted trajectories read as zero
    Json row;
    row["traj"] = mu.trajectory_at(idx).configs;
    row["p"] = rational_to_json(w);
    table.push_back(std::move(row));
  }
  out["table"] = std::move(table);
  return out;
}

TrajectoryMeasure measure_from_json(const Json& j) {
  require(j.is_object() && j.contains("grid") && j.contains("n") && j.contains("table"),
          "measure needs grid, n, table");
  TimeGrid grid = grid_from_json(j.at("grid"));
  const int n = j.at("n").get<int>();
  std::map<Trajectory, Rational> weights;
  for (const auto& row : j.at("table")) {
    require(row.contains("traj") && row.contains("p"), "table rows need traj and p");
    Trajectory traj;
    for (const auto& c : row.at("traj")) traj.configs.push_back(c.get<int>());
    weights[traj] += rational_from_json(row.at("p"));
  }
  try {
    return TrajectoryMeasure::from_sparse(std::move(grid), n, weights);
  } catch (const Error& e) {
    if (e.code() == Err::CapExceeded) throw;
    fail(Err::SchemaError, e.what());
  }
}

Json dynamics_to_json(const ProbabilityDynamics& dyn) {
  Json out;
  out["grid"] = grid_to_json(dyn.grid());
  out["n"] = dyn.n();
  if (dyn.has_matrices()) {
    out["kind"] = "matrix_family";
    out["convention"] = "columns";
    Json mats;
    for (int k = 0; k < dyn.grid().size(); ++k) {
      const int t = dyn.grid().at(k);
      mats[std::to_string(t)] = stochastic_matrix_to_json(dyn.matrices().at(t));
    }
    out["matrices"] = std::move(mats);
  } else if (dyn.is_tabulated()) {
    out["kind"] = "tabulated";
    Json pts = Json::array();
    for (const auto& [p0, traj] : dyn.table().points) {
      Json pt;
      pt["p0"] = prob_vector_to_json(p0);
      Json tj = Json::array();
      for (const auto& v : traj) tj.push_back(prob_vector_to_json(v));
      pt["traj"] = std::move(tj);
      pts.push_back(std::move(pt));
    }
    out["points"] = std::move(pts);
  } else {
    fail(Err::SchemaError, "black-box dynamics cannot be serialized");
  }
  return out;
}

ProbabilityDynamics dynamics_from_json(const Json& j) {
  require(j.is_object() && j.contains("kind") && j.contains("grid") && j.contains("n"),
          "dynamics needs kind, grid, n");
  TimeGrid grid = grid_from_json(j.at("grid"));
  const int n = j.at("n").get<int>();
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "matrix_family") {
      require(j.contains("matrices"), "matrix_family needs matrices");
      const bool row_convention = j.value("convention", std::string("columns")) == "rows";
      std::map<int, StochasticMatrix> mats;
      for (const auto& [key, mj] : j.at("matrices").items()) {
        const Json& mjson = mj;
        StochasticMatrix m = [&] {
          if (!row_convention) return stochastic_matrix_from_json(mjson);
          // rows-are-distributions on disk: transpose into the column convention
          require(mjson.is_array(), "matrix must be an array");
          std::vector<std::vector<Rational>> rows;
          for (const auto& rj : mjson) {
            std::vector<Rational> row;
            for (const auto& x : rj) row.push_back(rational_from_json(x));
            rows.push_back(std::move(row));
          }
          std::vector<std::vector<Rational>> cols(rows.size(), std::vector<Rational>(rows.size()));
          for (size_t a = 0; a < rows.size(); ++a)
            for (size_t b = 0; b < rows.size(); ++b) cols[b][a] = rows[a][b];
          return StochasticMatrix(std::move(cols));
        }();
        mats.emplace(std::stoi(key), std::move(m));
      }
      return ProbabilityDynamics::from_matrices(MatrixFamily(std::move(grid), std::move(mats)));
    }
    if (kind == "tabulated") {
      require(j.contains("points"), "tabulated dynamics needs points");
      TabulatedDynamics tab;
      tab.grid = grid;
      tab.n = n;
      for (const auto& pt : j.at("points")) {
        ProbVector p0 = prob_vector_from_json(pt.at("p0"));
        std::vector<ProbVector> traj;
        for (const auto& v : pt.at("traj")) traj.push_back(prob_vector_from_json(v));
        tab.points.emplace_back(std::move(p0), std::move(traj));
      }
      return ProbabilityDynamics::from_table(std::move(tab));
    }
  } catch (const Error& e) {
    if (e.code() == Err::ParseError || e.code() == Err::SchemaError) throw;
    fail(Err::SchemaError, e.what());
  }
  fail(Err::SchemaError, "unknown dynamics kind '" + kind + "'");
}

Json family_to_json(const ProcessFamily& fam) {
  Json out;
  out["grid"] = grid_to_json(fam.grid());
  out["n"] = fam.n();
  Json members = Json::array();
  for (const auto& [p0, mu] : fam.members()) {
    Json m;
    m["p0"] = prob_vector_to_json(p0);
    m["measure"] = measure_to_json(mu);
    members.push_back(std::move(m));
  }
  out["members"] = std::move(members);
  if (fam.generator_kind() == GeneratorKind::None)
    out["generator"] = nullptr;
  else
    out["generator"] = generator_name(fam.generator_kind());
  return out;
}

ProcessFamily family_from_json(const Json& j) {
  require(j.is_object() && j.contains("grid") && j.contains("n") && j.contains("members"),
          "family needs grid, n, members");
  TimeGrid grid = grid_from_json(j.at("grid"));
  const int n = j.at("n").get<int>();
  std::vector<std::pair<ProbVector, TrajectoryMeasure>> members;
  for (const auto& m : j.at("members")) {
    require(m.contains("p0") && m.contains("measure"), "members need p0 and measure");
    members.emplace_back(prob_vector_from_json(m.at("p0")), measure_from_json(m.at("measure")));
  }
  GeneratorKind kind = GeneratorKind::None;
  if (j.contains("generator") && !j.at("generator").is_null())
    kind = generator_from_name(j.at("generator").get<std::string>());
  // Files are extensional: the label survives, but extension needs an
  // in-process generator.
  try {
    return ProcessFamily(std::move(grid), n, std::move(members), kind, nullptr);
  } catch (const Error& e) {
    fail(Err::SchemaError, e.what());
  }
}

Json detsystem_to_json(const DeterministicSystem& d) {
  Json out;
  out["grid"] = grid_to_json(d.grid());
  out["n"] = d.n();
  Json table = Json::array();
  for (int k = 0; k < d.grid().size(); ++k)
    for (int i = 1; i <= d.n(); ++i) {
      Json row;
      row["t"] = d.grid().at(k);
      row["i"] = i;
      row["out"] = d.map(d.grid().at(k), i);
      table.push_back(std::move(row));
    }
  out["table"] = std::move(table);
  return out;
}

DeterministicSystem detsystem_from_json(const Json& j) {
  require(j.is_object() && j.contains("grid") && j.contains("n") && j.contains("table"),
          "deterministic system needs grid, n, table");
  TimeGrid grid = grid_from_json(j.at("grid"));
  const int n = j.at("n").get<int>();
  std::vector<std::vector<int>> table(static_cast<size_t>(grid.size()), std::vector<int>(static_cast<size_t>(n), 0));
  for (int i = 1; i <= n; ++i) table[0][static_cast<size_t>(i - 1)] = i;  // identity row may be omitted
  for (const auto& row : j.at("table")) {
    require(row.contains("t") && row.contains("i") && row.contains("out"), "table rows need t, i, out");
    const int t = row.at("t").get<int>();
    const int i = row.at("i").get<int>();
    require(grid.contains(t), "table time outside grid");
    require(i >= 1 && i <= n, "table configuration out of range");
    table[static_cast<size_t>(grid.index_of(t))][static_cast<size_t>(i - 1)] = row.at("out").get<int>();
  }
  try {
    return DeterministicSystem(std::move(grid), n, std::move(table));
  } catch (const Error& e) {
    fail(Err::SchemaError, e.what());
  }
}

Json ancilla_to_json(const SystemAncilla& sa) {
  Json out;
  out["grid"] = grid_to_json(sa.grid());
  out["n"] = sa.n();
  out["m"] = sa.m();
  Json table = Json::array();
  for (int k = 0; k < sa.grid().size(); ++k)
    for (int i = 1; i <= sa.n(); ++i)
      for (int a = 1; a <= sa.m(); ++a) {
        Json row;
        row["t"] = sa.grid().at(k);
        row["i"] = i;
        row["alpha"] = a;
        row["out"] = sa.map(sa.grid().at(k), i, a);
        table.push_back(std::move(row));
      }
  out["table"] = std::move(table);
  return out;
}

SystemAncilla ancilla_from_json(const Json& j) {
  require(j.is_object() && j.contains("grid") && j.contains("n") && j.contains("m") && j.contains("table"),
          "system-ancilla needs grid, n, m, table");
  TimeGrid grid = grid_from_json(j.at("grid"));
  const int n = j.at("n").get<int>();
  const int m = j.at("m").get<int>();
  std::vector<std::vector<std::vector<int>>> table(
      static_cast<size_t>(grid.size()),
      std::vector<std::vector<int>>(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(m), 0)));
  for (int i = 1; i <= n; ++i)
    for (int a = 1; a <= m; ++a) table[0][static_cast<size_t>(i - 1)][static_cast<size_t>(a - 1)] = i;
  for (const auto& row : j.at("table")) {
    require(row.contains("t") && row.contains("i") && row.contains("alpha") && row.contains("out"),
            "table rows need t, i, alpha, out");
    const int t = row.at("t").get<int>();
    const int i = row.at("i").get<int>();
    const int a = row.at("alpha").get<int>();
    require(grid.contains(t), "table time outside grid");
    require(i >= 1 && i <= n && a >= 1 && a <= m, "table configuration out of range");
    table[static_cast<size_t>(grid.index_of(t))][static_cast<size_t>(i - 1)][static_cast<size_t>(a - 1)] =
        row.at("out").get<int>();
  }
  try {
    return SystemAncilla(std::move(grid), n, m, std::move(table));
  } catch (const Error& e) {
    fail(Err::SchemaError, e.what());
  }
}

namespace {

Json complex_to_json(const Complex& z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  require(j.is_object() && j.contains("re"), "complex numbers are {re, im} objects");
  return Complex(j.at("re").get<double>(), j.value("im", 0.0));
}

Json cmat_to_json(const CMat& m) {
  Json cols = Json::array();
  const int d = static_cast<int>(m.size());
  for (int jcol = 0; jcol < d; ++jcol) {
    Json col = Json::array();
    for (int i = 0; i < d; ++i) col.push_back(complex_to_json(m[static_cast<size_t>(i)][static_cast<size_t>(jcol)]));
    cols.push_back(std::move(col));
  }
  return cols;
}

CMat cmat_from_json(const Json& j) {
  require(j.is_array() && !j.empty(), "complex matrix must be an array of columns");
  const size_t d = j.size();
  CMat m(d, CVec(d, Complex(0, 0)));
  for (size_t jcol = 0; jcol < d; ++jcol) {
    require(j[jcol].is_array() && j[jcol].size() == d, "complex matrix must be square");
    for (size_t i = 0; i < d; ++i) m[i][jcol] = complex_from_json(j[jcol][i]);
  }
  return m;
}

}  // namespace

Json unitary_to_json(const UnitaryFamily& u) {
  Json out;
  out["grid"] = grid_to_json(u.grid());
  out["d"] = u.dim();
  Json mats;
  for (int k = 0; k < u.grid().size(); ++k) {
    const int t = u.grid().at(k);
    mats[std::to_string(t)] = cmat_to_json(u.at(t));
  }
  out["matrices"] = std::move(mats);
  return out;
}

UnitaryFamily unitary_from_json(const Json& j) {
  require(j.is_object() && j.contains("grid") && j.contains("matrices"), "unitary family needs grid, matrices");
  TimeGrid grid = grid_from_json(j.at("grid"));
  std::map<int, CMat> mats;
  for (const auto& [key, mj] : j.at("matrices").items()) mats.emplace(std::stoi(key), cmat_from_json(mj));
  try {
    return UnitaryFamily(std::move(grid), std::move(mats));
  } catch (const Error& e) {
    fail(Err::SchemaError, e.what());
  }
}

Json joint_initial_to_json(const JointInitial& pi) {
  Json out;
  out["n"] = pi.n;
  out["m"] = pi.m;
  out["entries"] = prob_vector_to_json(pi.entries);
  return out;
}

Json divisibility_to_json(const DivisibilityReport& report) {
  Json out;
  out["divisible"] = report.divisible;
  Json pairs = Json::array();
  for (const auto& p : report.pairs) {
    Json pj;
    pj["t_prime"] = p.t_prime;
    pj["t"] = p.t;
    switch (p.status) {
      case DivisibilityStatus::Divisible: pj["status"] = "DIVISIBLE"; break;
      case DivisibilityStatus::NotDivisible: pj["status"] = "NOT_DIVISIBLE"; break;
      case DivisibilityStatus::NotApplicable: pj["status"] = "NOT_APPLICABLE"; break;
    }
    if (p.factor.has_value()) pj["factor"] = stochastic_matrix_to_json(*p.factor);
    if (!p.farkas.empty()) {
      Json y = Json::array();
      for (const auto& v : p.farkas) y.push_back(rational_to_json(v));
      pj["farkas"] = std::move(y);
    }
    if (p.candidate.has_value()) pj["candidate"] = rational_matrix_to_json(*p.candidate);
    pairs.push_back(std::move(pj));
  }
  out["pairs"] = std::move(pairs);
  return out;
}

Json decomposability_to_json(const DecomposabilityVerdict& verdict) {
  Json out;
  out["decomposable"] = verdict.decomposable;
  if (verdict.witness.has_value()) {
    Json w;
    w["t"] = verdict.witness->t;
    w["t_prime"] = verdict.witness->t_prime;
    w["p0"] = prob_vector_to_json(verdict.witness->p0);
    w["q0"] = prob_vector_to_json(verdict.witness->q0);
    out["witness"] = std::move(w);
  }
  return out;
}

Json linearity_to_json(const LinearityVerdict& verdict) {
  Json out;
  switch (verdict.status) {
    case LinearityStatus::Linear: out["status"] = "linear"; break;
    case LinearityStatus::LinearOnGrid: out["status"] = "linear-on-grid"; break;
    case LinearityStatus::Nonlinear: out["status"] = "nonlinear"; break;
  }
  if (verdict.witness.has_value()) {
    const auto& w = *verdict.witness;
    Json wj;
    wj["t"] = w.t;
    wj["p"] = prob_vector_to_json(w.p);
    wj["q"] = prob_vector_to_json(w.q);
    wj["lambda"] = rational_to_json(w.lambda);
    wj["combined_image"] = prob_vector_to_json(w.combined_image);
    wj["mixture_of_images"] = prob_vector_to_json(w.mixture_of_images);
    out["witness"] = std::move(wj);
  }
  return out;
}

Json markov_to_json(const MarkovVerdict& verdict) {
  Json out;
  out["markovian"] = verdict.markovian;
  if (verdict.witness.has_value()) {
    Json w;
    w["times"] = verdict.witness->times;
    w["configs"] = verdict.witness->configs;
    w["conditional_full_history"] = rational_to_json(verdict.witness->conditional_full_history);
    w["conditional_last_only"] = rational_to_json(verdict.witness->conditional_last_only);
    out["witness"] = std::move(w);
  }
  return out;
}

Json transition_constancy_to_json(const TransitionConstancyVerdict& verdict) {
  Json out;
  out["transition_constant"] = verdict.transition_constant;
  if (verdict.common.has_value()) {
    Json mats;
    for (int k = 0; k < verdict.common->grid().size(); ++k) {
      const int t = verdict.common->grid().at(k);
      mats[std::to_string(t)] = stochastic_matrix_to_json(verdict.common->at(t));
    }
    out["common_matrices"] = std::move(mats);
  }
  if (verdict.witness.has_value()) {
    const auto& w = *verdict.witness;
    Json wj;
    wj["t"] = w.t;
    wj["i"] = w.i;
    wj["j"] = w.j;
    wj["p0"] = prob_vector_to_json(w.p0);
    wj["q0"] = prob_vector_to_json(w.q0);
    wj["value_p0"] = rational_to_json(w.value_p0);
    wj["value_q0"] = rational_to_json(w.value_q0);
    out["witness"] = std::move(wj);
  }
  return out;
}

std::string emit_schema(const std::string& name) {
  Json schema;
  schema["$schema"] = "http://json-schema.org/draft-07/schema#";
  const Json rational = Json{{"type", "string"}, {"pattern", "^-?[0-9]+(/[0-9]+)?$"}};
  const Json grid = Json{{"type", "array"}, {"items", Json{{"type", "integer"}}},
                         {"description", "strictly increasing integers containing 0"}};
  const Json prob_vector = Json{{"type", "array"}, {"items", rational}};
  const Json matrix = Json{{"type", "array"},
                           {"items", prob_vector},
                           {"description", "column-major: array of columns, each a probability vector"}};
  if (name == "measure") {
    schema["title"] = "trajectory measure";
    schema["type"] = "object";
    schema["required"] = {"grid", "n", "table"};
    schema["properties"] = {
        {"grid", grid},
        {"n", Json{{"type", "integer"}, {"minimum", 1}}},
        {"table",
         Json{{"type", "array"},
              {"items", Json{{"type", "object"},
                             {"required", Json::array({"traj", "p"})},
                             {"properties",
                              Json{{"traj", Json{{"type", "array"}, {"items", Json{{"type", "integer"}}}}},
                                   {"p", rational}}}}},
              {"description", "omitted trajectories have probability 0"}}}};
  } else if (name == "dynamics") {
    schema["title"] = "probability dynamics";
    schema["type"] = "object";
    schema["required"] = {"kind", "grid", "n"};
    schema["properties"] = {
        {"kind", Json{{"enum", Json::array({"matrix_family", "tabulated"})}}},
        {"grid", grid},
        {"n", Json{{"type", "integer"}, {"minimum", 1}}},
        {"convention",
         Json{{"enum", Json::array({"columns", "rows"})},
              {"description", "rows: matrices are transposed on load; matrix at time 0 must be the identity"}}},
        {"matrices", Json{{"type", "object"}, {"additionalProperties", matrix}}},
        {"points",
         Json{{"type", "array"},
              {"items", Json{{"type", "object"},
                             {"required", Json::array({"p0", "traj"})},
                             {"properties", Json{{"p0", prob_vector},
                                                 {"traj", Json{{"type", "array"}, {"items", prob_vector}}}}}}}}}};
  } else if (name == "family") {
    schema["title"] = "stochastic process family";
    schema["type"] = "object";
    schema["required"] = {"grid", "n", "members"};
    schema["properties"] = {
        {"grid", grid},
        {"n", Json{{"type", "integer"}, {"minimum", 1}}},
        {"members",
         Json{{"type", "array"},
              {"items", Json{{"type", "object"}, {"required", Json::array({"p0", "measure"})}}}}},
        {"generator",
         Json{{"enum", Json::array({"markov_product", "transition_constant", "non_markov_eps", nullptr})}}}};
  } else if (name == "detsystem") {
    schema["title"] = "deterministic dynamical system";
    schema["type"] = "object";
    schema["required"] = {"grid", "n", "table"};
    schema["properties"] = {
        {"grid", grid},
        {"n", Json{{"type", "integer"}, {"minimum", 1}}},
        {"table",
         Json{{"type", "array"},
              {"items",
               Json{{"type", "object"},
                    {"required", Json::array({"t", "i", "out"})},
                    {"properties", Json{{"t", Json{{"type", "integer"}}},
                                        {"i", Json{{"type", "integer"}}},
                                        {"out", Json{{"type", "integer"}}}}}}},
              {"description", "map (t, i) -> out; the identity row at t = 0 may be omitted"}}}};
  } else if (name == "ancilla") {
    schema["title"] = "system-ancilla dynamics";
    schema["type"] = "object";
    schema["required"] = {"grid", "n", "m", "table"};
    schema["properties"] = {
        {"grid", grid},
        {"n", Json{{"type", "integer"}, {"minimum", 1}}},
        {"m", Json{{"type", "integer"}, {"minimum", 1}}},
        {"table",
         Json{{"type", "array"},
              {"items",
               Json{{"type", "object"},
                    {"required", Json::array({"t", "i", "alpha", "out"})},
                    {"properties", Json{{"t", Json{{"type", "integer"}}},
                                        {"i", Json{{"type", "integer"}}},
                                        {"alpha", Json{{"type", "integer"}}},
                                        {"out", Json{{"type", "integer"}}}}}}},
              {"description", "map (t, i, alpha) -> out; identity rows at t = 0 may be omitted"}}}};
  } else if (name == "unitary") {
    const Json complex_entry =
        Json{{"type", "object"},
             {"required", Json::array({"re"})},
             {"properties", Json{{"re", Json{{"type", "number"}}}, {"im", Json{{"type", "number"}}}}}};
    schema["title"] = "unitary family";
    schema["type"] = "object";
    schema["required"] = {"grid", "d", "matrices"};
    schema["properties"] = {
        {"grid", grid},
        {"d", Json{{"type", "integer"}, {"minimum", 1}}},
        {"matrices",
         Json{{"type", "object"},
              {"additionalProperties",
               Json{{"type", "array"},
                    {"items", Json{{"type", "array"}, {"items", complex_entry}}},
                    {"description", "column-major: array of columns"}}}}}};
  } else {
    fail(Err::UnknownSchema, "no schema named '" + name + "'");
  }
  return schema.dump(2);
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::ParseError, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Err::ParseError, std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return j;
}

}  // namespace stoqdyn
