#include "stoqdyn/process_family.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace stoqdyn {

const char* generator_name(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::None: return "none";
    case GeneratorKind::MarkovProduct: return "markov_product";
    case GeneratorKind::TransitionConstant: return "transition_constant";
    case GeneratorKind::NonMarkovEps: return "non_markov_eps";
  }
  return "none";
}

GeneratorKind generator_from_name(const std::string& name) {
  if (name == "none" || name.empty()) return GeneratorKind::None;
  if (name == "markov_product") return GeneratorKind::MarkovProduct;
  if (name == "transition_constant") return GeneratorKind::TransitionConstant;
  if (name == "non_markov_eps") return GeneratorKind::NonMarkovEps;
  fail(Err::SchemaError, "unknown generator '" + name + "'");
}

ProcessFamily::ProcessFamily(TimeGrid grid, int n,
                             std::vector<std::pair<ProbVector, TrajectoryMeasure>> members,
                             GeneratorKind kind,
                             std::function<TrajectoryMeasure(const ProbVector&)> generator)
    : grid_(std::move(grid)), n_(n), members_(std::move(members)), kind_(kind), generator_(std::move(generator)) {
  if (members_.empty()) fail(Err::InvalidFamily, "family needs at least one member");
  for (const auto& [p0, mu] : members_) {
    if (p0.size() != n_) fail(Err::DimensionMismatch, "member initial vector of wrong dimension");
    if (mu.grid() != grid_ || mu.n_configs() != n_) fail(Err::GridMismatch, "member on a different grid");
    if (marginal_vector(mu, 0) != p0)
      fail(Err::InvalidFamily, "member's time-0 marginal differs from its initial vector");
  }
}

const TrajectoryMeasure* ProcessFamily::find(const ProbVector& p0) const {
  for (const auto& [q0, mu] : members_)
    if (q0 == p0) return &mu;
  return nullptr;
}

const TrajectoryMeasure& ProcessFamily::member(const ProbVector& p0) const {
  const TrajectoryMeasure* m = find(p0);
  if (!m) fail(Err::InvalidFamily, "initial vector not tabulated");
  return *m;
}

TrajectoryMeasure ProcessFamily::member_or_generate(const ProbVector& p0) const {
  if (const TrajectoryMeasure* m = find(p0)) return *m;
  if (!generator_) fail(Err::NoGenerator, "family has no generator rule for new initial vectors");
  TrajectoryMeasure mu = generator_(p0);
  if (marginal_vector(mu, 0) != p0) fail(Err::InvalidFamily, "generator produced a mismatched member");
  return mu;
}

bool implements(const TrajectoryMeasure& mu, const std::vector<ProbVector>& traj) {
  if (static_cast<int>(traj.size()) != mu.grid().size())
    fail(Err::LengthMismatch, "trajectory length does not match grid");
  for (int k = 0; k < mu.grid().size(); ++k)
    if (marginal_vector(mu, mu.grid().at(k)) != traj[static_cast<size_t>(k)]) return false;
  return true;
}

bool family_implements(const ProcessFamily& fam, const ProbabilityDynamics& dyn) {
  if (fam.grid() != dyn.grid() || fam.n() != dyn.n())
    fail(Err::GridMismatch, "family and dynamics live on different grids");
  for (const auto& [p0, mu] : fam.members())
    if (!implements(mu, dyn.solution(p0))) return false;
  return true;
}

TransitionConstancyVerdict is_transition_constant(const ProcessFamily& fam) {
  const int n = fam.n();
  const auto& grid = fam.grid();
  // first defined value and its owner, per (t, i, j)
  struct Cell {
    bool set = false;
    Rational value;
    size_t owner = 0;
  };
  std::vector<std::vector<std::vector<Cell>>> seen(
      static_cast<size_t>(grid.size()),
      std::vector<std::vector<Cell>>(static_cast<size_t>(n), std::vector<Cell>(static_cast<size_t>(n))));

  for (size_t m = 0; m < fam.members().size(); ++m) {
    const auto& [p0, mu] = fam.members()[m];
    for (int k = 0; k < grid.size(); ++k) {
      auto tm = transition_matrix(mu, grid.at(k), 0);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          if (!tm.defined(i, j)) continue;
          Cell& cell = seen[static_cast<size_t>(k)][static_cast<size_t>(i)][static_cast<size_t>(j)];
          if (!cell.set) {
            cell = {true, *tm.at(i, j), m};
          } else if (cell.value != *tm.at(i, j)) {
            TransitionConstancyWitness w{grid.at(k), i + 1,  j + 1,
                                         fam.members()[cell.owner].first, p0,
                                         cell.value, *tm.at(i, j)};
            return {false, std::nullopt, w};
          }
        }
    }
  }

  // With all vertices tabulated every entry is defined somewhere.
  std::map<int, StochasticMatrix> mats;
  for (int k = 0; k < grid.size(); ++k) {
    std::vector<std::vector<Rational>> cols(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n)));
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const Cell& cell = seen[static_cast<size_t>(k)][static_cast<size_t>(i)][static_cast<size_t>(j)];
        if (!cell.set) fail(Err::InvalidFamily, "no member defines a transition entry (vertices missing?)");
        cols[static_cast<size_t>(j)][static_cast<size_t>(i)] = cell.value;
      }
    mats.emplace(grid.at(k), StochasticMatrix(std::move(cols)));
  }
  return {true, MatrixFamily(grid, std::move(mats)), std::nullopt};
}

TrajectoryMeasure markov_implementation(const TimeGrid& grid, const std::vector<ProbVector>& traj) {
  if (static_cast<int>(traj.size()) != grid.size())
    fail(Err::LengthMismatch, "one distribution per grid time required");
  const int n = traj.front().size();
  size_t size = 1;
  for (int k = 0; k < grid.size(); ++k) size *= static_cast<size_t>(n);
  std::vector<Rational> table(size, Rational(0));
  std::vector<int> cfg(static_cast<size_t>(grid.size()), 0);
  for (size_t idx = 0; idx < size; ++idx) {
    size_t rem = idx;
    for (int k = grid.size() - 1; k >= 0; --k) {
      cfg[static_cast<size_t>(k)] = static_cast<int>(rem % static_cast<size_t>(n));
      rem /= static_cast<size_t>(n);
    }
    Rational w = 1;
    for (int k = 0; k < grid.size(); ++k) {
      w *= traj[static_cast<size_t>(k)][cfg[static_cast<size_t>(k)]];
      if (w == 0) break;
    }
    table[idx] = w;
  }
  return TrajectoryMeasure(grid, n, std::move(table));
}

namespace {

struct PerturbationPlan {
  int a = 0, b = 0, c = 0;           // grid positions of the chosen triple
  int ia[2] = {0, 0};                // 0-based interior configs at position a
  int ic[2] = {0, 0};
  bool middle_interior = false;      // false: middle time is a vertex
  int ib[2] = {0, 0};                // interior pair at b, or {vertex, vertex}
  Rational eps;
};

std::pair<bool, std::array<int, 2>> interior_pair(const ProbVector& p) {
  std::array<int, 2> out{-1, -1};
  int found = 0;
  for (int i = 0; i < p.size() && found < 2; ++i)
    if (p.interior_at(i)) out[static_cast<size_t>(found++)] = i;
  return {found == 2, out};
}

}  // namespace

TrajectoryMeasure non_markov_implementation(const TimeGrid& grid, const std::vector<ProbVector>& traj) {
  if (static_cast<int>(traj.size()) != grid.size())
    fail(Err::LengthMismatch, "one distribution per grid time required");
  if (!is_non_degenerate(traj))
    fail(Err::DegenerateTrajectory, "trajectory admits only Markovian implementations");
  const int n = traj.front().size();
  const int len = grid.size();

  std::vector<bool> interior(static_cast<size_t>(len), false);
  for (int k = 0; k < len; ++k)
    for (int i = 0; i < n; ++i)
      if (traj[static_cast<size_t>(k)].interior_at(i)) { interior[static_cast<size_t>(k)] = true; break; }

  PerturbationPlan plan;
  bool chosen = false;
  for (int a = 0; a < len && !chosen; ++a)
    for (int b = a + 1; b < len && !chosen; ++b)
      for (int c = b + 1; c < len && !chosen; ++c)
        if (interior[static_cast<size_t>(a)] && interior[static_cast<size_t>(c)]) {
          plan.a = a;
          plan.b = b;
          plan.c = c;
          chosen = true;
        }
  if (!chosen) fail(Err::DegenerateTrajectory, "no qualifying time triple");

  {
    auto [ok_a, pa] = interior_pair(traj[static_cast<size_t>(plan.a)]);
    auto [ok_c, pc] = interior_pair(traj[static_cast<size_t>(plan.c)]);
    if (!ok_a || !ok_c) fail(Err::DegenerateTrajectory, "interior pair missing");
    plan.ia[0] = pa[0];
    plan.ia[1] = pa[1];
    plan.ic[0] = pc[0];
    plan.ic[1] = pc[1];
    auto [ok_b, pb] = interior_pair(traj[static_cast<size_t>(plan.b)]);
    plan.middle_interior = ok_b;
    if (ok_b) {
      plan.ib[0] = pb[0];
      plan.ib[1] = pb[1];
    } else {
      int vertex = -1;
      for (int i = 0; i < n; ++i)
        if (traj[static_cast<size_t>(plan.b)][i] == 1) vertex = i;
      if (vertex < 0) fail(Err::DegenerateTrajectory, "middle time neither interior nor vertex");
      plan.ib[0] = plan.ib[1] = vertex;
    }
  }

  const ProbVector& pa = traj[static_cast<size_t>(plan.a)];
  const ProbVector& pb = traj[static_cast<size_t>(plan.b)];
  const ProbVector& pc = traj[static_cast<size_t>(plan.c)];

  // sign of the perturbation on cell (j,l,m), or 0 when unperturbed
  auto cell_sign = [&](int j, int l, int m) -> int {
    int x = (j == plan.ia[0]) ? 1 : (j == plan.ia[1]) ? 2 : 0;
    int z = (m == plan.ic[0]) ? 1 : (m == plan.ic[1]) ? 2 : 0;
    if (x == 0 || z == 0) return 0;
    int y;
    if (plan.middle_interior) {
      y = (l == plan.ib[0]) ? 1 : (l == plan.ib[1]) ? 2 : 0;
      if (y == 0) return 0;
    } else {
      if (l != plan.ib[0]) return 0;
      y = 1;
    }
    return ((x + y + z) % 2 == 1) ? +1 : -1;
  };

  auto base_value = [&](int j, int l, int m) -> Rational {
    if (plan.middle_interior) return pa[j] * pb[l] * pc[m];
    if (l != plan.ib[0]) return Rational(0);
    return pa[j] * pc[m];
  };

  // epsilon: half the minimum slack to the [0,1] walls over perturbed cells
  Rational min_slack;
  bool have = false;
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l)
      for (int m = 0; m < n; ++m) {
        const int s = cell_sign(j, l, m);
        if (s == 0) continue;
        const Rational base = base_value(j, l, m);
        const Rational slack = (s > 0) ? Rational(1) - base : base;
        if (!have || slack < min_slack) {
          min_slack = slack;
          have = true;
        }
      }
  if (!have || min_slack <= 0) fail(Err::DegenerateTrajectory, "no room for a perturbation");
  plan.eps = min_slack / 2;

  auto k_value = [&](int j, int l, int m) -> Rational {
    const int s = cell_sign(j, l, m);
    Rational v = base_value(j, l, m);
    if (s > 0) v += plan.eps;
    if (s < 0) v -= plan.eps;
    return v;
  };

  size_t size = 1;
  for (int k = 0; k < len; ++k) size *= static_cast<size_t>(n);
  std::vector<Rational> table(size, Rational(0));
  std::vector<int> cfg(static_cast<size_t>(len), 0);
  for (size_t idx = 0; idx < size; ++idx) {
    size_t rem = idx;
    for (int k = len - 1; k >= 0; --k) {
      cfg[static_cast<size_t>(k)] = static_cast<int>(rem % static_cast<size_t>(n));
      rem /= static_cast<size_t>(n);
    }
    Rational w = k_value(cfg[static_cast<size_t>(plan.a)], cfg[static_cast<size_t>(plan.b)],
                         cfg[static_cast<size_t>(plan.c)]);
    if (w == 0) continue;
    for (int k = 0; k < len; ++k) {
      if (k == plan.a || k == plan.b || k == plan.c) continue;
      w *= traj[static_cast<size_t>(k)][cfg[static_cast<size_t>(k)]];
      if (w == 0) break;
    }
    table[idx] = w;
  }
  return TrajectoryMeasure(grid, n, std::move(table));
}

namespace {

std::vector<ProbVector> tabulation_points(int n, int tab_denominator) {
  return simplex_grid(n, tab_denominator);  // includes all vertices
}

}  // namespace

ProcessFamily transition_constant_family(const MatrixFamily& fam, int tab_denominator) {
  const int n = fam.n();
  const TimeGrid grid = fam.grid();
  const int len = grid.size();

  auto build = [fam, n, len, grid](const ProbVector& p0) -> TrajectoryMeasure {
    size_t size = 1;
    for (int k = 0; k < len; ++k) size *= static_cast<size_t>(n);
    std::vector<Rational> table(size, Rational(0));
    std::vector<int> cfg(static_cast<size_t>(len), 0);
    for (size_t idx = 0; idx < size; ++idx) {
      size_t rem = idx;
      for (int k = len - 1; k >= 0; --k) {
        cfg[static_cast<size_t>(k)] = static_cast<int>(rem % static_cast<size_t>(n));
        rem /= static_cast<size_t>(n);
      }
      const int start = cfg[0];
      Rational w = p0[start];
      for (int k = 1; k < len && w != 0; ++k)
        w *= fam.at(grid.at(k)).at(cfg[static_cast<size_t>(k)], start);
      table[idx] = w;
    }
    return TrajectoryMeasure(grid, n, std::move(table));
  };

  std::vector<std::pair<ProbVector, TrajectoryMeasure>> members;
  for (const auto& p0 : tabulation_points(n, tab_denominator)) members.emplace_back(p0, build(p0));
  return ProcessFamily(grid, n, std::move(members), GeneratorKind::TransitionConstant, build);
}

ProcessFamily markov_family(const ProbabilityDynamics& dyn, int tab_denominator) {
  const TimeGrid grid = dyn.grid();
  auto build = [dyn, grid](const ProbVector& p0) {
    return markov_implementation(grid, dyn.solution(p0));
  };
  std::vector<std::pair<ProbVector, TrajectoryMeasure>> members;
  for (const auto& p0 : dyn.evaluation_points(tab_denominator)) members.emplace_back(p0, build(p0));
  return ProcessFamily(grid, dyn.n(), std::move(members), GeneratorKind::MarkovProduct, build);
}

ProbabilityDynamics induced_dynamics(const ProcessFamily& fam) {
  TabulatedDynamics tab;
  tab.grid = fam.grid();
  tab.n = fam.n();
  for (const auto& [p0, mu] : fam.members()) {
    std::vector<ProbVector> traj;
    for (int k = 0; k < fam.grid().size(); ++k) traj.push_back(marginal_vector(mu, fam.grid().at(k)));
    tab.points.emplace_back(p0, std::move(traj));
  }
  return ProbabilityDynamics::from_table(std::move(tab));
}

TrajectoryMeasure InnerRepresentation::condition_on(int k) const {
  if (k < 0 || k >= static_cast<int>(support.size())) fail(Err::OutOfRange, "support index");
  const Rational& w = support[static_cast<size_t>(k)].second;
  std::vector<Rational> table = joint[static_cast<size_t>(k)];
  for (auto& x : table) x /= w;
  return TrajectoryMeasure(grid, n, std::move(table));
}

TrajectoryMeasure InnerRepresentation::trajectory_marginal() const {
  std::vector<Rational> table(joint.front().size(), Rational(0));
  for (const auto& row : joint)
    for (size_t i = 0; i < table.size(); ++i) table[i] += row[i];
  return TrajectoryMeasure(grid, n, std::move(table));
}

InnerRepresentation finite_inner_representation(const ProcessFamily& fam,
                                                const std::vector<std::pair<ProbVector, Rational>>& support) {
  if (support.empty()) fail(Err::BadWeights, "empty support");
  Rational sum = 0;
  for (const auto& [p, w] : support) {
    (void)p;
    if (w <= 0) fail(Err::BadWeights, "support weights must be positive");
    sum += w;
  }
  if (sum != 1) fail(Err::BadWeights, "support weights sum to " + to_string(sum));

  InnerRepresentation rep;
  rep.grid = fam.grid();
  rep.n = fam.n();
  rep.support = support;
  for (const auto& [p0, w] : support) {
    const TrajectoryMeasure* mu = fam.find(p0);
    if (!mu) fail(Err::UnknownSupportVector, "support vector is not a tabulated member");
    std::vector<Rational> row = mu->table();
    for (auto& x : row) x *= w;
    rep.joint.push_back(std::move(row));
  }
  return rep;
}

}  // namespace stoqdyn
