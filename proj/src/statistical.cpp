#include "stoqdyn/statistical.hpp"

#include <map>

namespace stoqdyn {

namespace {

constexpr long kAncillaCapFamily = 4096;       // N^tau
constexpr long kAncillaCapStochastic = 65536;  // (N^tau)^N

// Number of trajectory tails N^{|T|-1}, guarded against the cap.
long tail_count(int n, int grid_size, long cap) {
  long count = 1;
  for (int k = 1; k < grid_size; ++k) {
    count *= n;
    if (count > cap) fail(Err::GridTooLarge, "ancilla would exceed its size cap");
  }
  return count;
}

// Tail (configs at positions 1..L-1) of ancilla index alpha (1-based),
// big-endian in the grid positions.
std::vector<int> decode_tail(long alpha, int n, int grid_size) {
  std::vector<int> tail(static_cast<size_t>(grid_size - 1), 1);
  long rem = alpha - 1;
  for (int k = grid_size - 2; k >= 0; --k) {
    tail[static_cast<size_t>(k)] = static_cast<int>(rem % n) + 1;
    rem /= n;
  }
  return tail;
}

long encode_tail(const std::vector<int>& tail, int n) {
  long idx = 0;
  for (int c : tail) idx = idx * n + (c - 1);
  return idx + 1;
}

}  // namespace

DeterministicSystem::DeterministicSystem(TimeGrid grid, int n, std::vector<std::vector<int>> table)
    : grid_(std::move(grid)), n_(n), table_(std::move(table)) {
  if (static_cast<int>(table_.size()) != grid_.size()) fail(Err::LengthMismatch, "one row per grid time required");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n_) fail(Err::DimensionMismatch, "row of wrong width");
    for (int v : row)
      if (v < 1 || v > n_) fail(Err::BadConfig, "image configuration out of range");
  }
  for (int i = 1; i <= n_; ++i)
    if (table_[0][static_cast<size_t>(i - 1)] != i) fail(Err::InvalidDynamics, "map at time 0 must be the identity");
}

int DeterministicSystem::map(int t, int i) const {
  if (i < 1 || i > n_) fail(Err::BadConfig, "configuration out of range");
  return table_[static_cast<size_t>(grid_.index_of(t))][static_cast<size_t>(i - 1)];
}

SystemAncilla::SystemAncilla(TimeGrid grid, int n, int m, std::vector<std::vector<std::vector<int>>> table)
    : grid_(std::move(grid)), n_(n), m_(m), table_(std::move(table)) {
  if (m_ < 1) fail(Err::DimensionMismatch, "ancilla needs at least one configuration");
  if (static_cast<int>(table_.size()) != grid_.size()) fail(Err::LengthMismatch, "one block per grid time required");
  for (const auto& block : table_) {
    if (static_cast<int>(block.size()) != n_) fail(Err::DimensionMismatch, "block of wrong height");
    for (const auto& row : block) {
      if (static_cast<int>(row.size()) != m_) fail(Err::DimensionMismatch, "row of wrong width");
      for (int v : row)
        if (v < 1 || v > n_) fail(Err::BadConfig, "image configuration out of range");
    }
  }
  for (int i = 1; i <= n_; ++i)
    for (int a = 1; a <= m_; ++a)
      if (table_[0][static_cast<size_t>(i - 1)][static_cast<size_t>(a - 1)] != i)
        fail(Err::InvalidDynamics, "map at time 0 must be the identity for every ancilla value");
}

int SystemAncilla::map(int t, int i, int alpha) const {
  if (i < 1 || i > n_) fail(Err::BadConfig, "configuration out of range");
  if (alpha < 1 || alpha > m_) fail(Err::BadConfig, "ancilla configuration out of range");
  return table_[static_cast<size_t>(grid_.index_of(t))][static_cast<size_t>(i - 1)][static_cast<size_t>(alpha - 1)];
}

StochasticSystem::StochasticSystem(TimeGrid grid, int n, std::vector<TrajectoryMeasure> processes)
    : grid_(std::move(grid)), n_(n), processes_(std::move(processes)) {
  if (static_cast<int>(processes_.size()) != n_) fail(Err::DimensionMismatch, "need one process per configuration");
  for (int i = 1; i <= n_; ++i) {
    const auto& mu = processes_[static_cast<size_t>(i - 1)];
    if (mu.grid() != grid_ || mu.n_configs() != n_) fail(Err::GridMismatch, "process on a different grid");
    if (marginal_vector(mu, 0) != ProbVector::vertex(n_, i))
      fail(Err::InvalidFamily, "process " + std::to_string(i) + " must start at its own configuration");
  }
}

const TrajectoryMeasure& StochasticSystem::process(int i) const {
  if (i < 1 || i > n_) fail(Err::BadConfig, "configuration out of range");
  return processes_[static_cast<size_t>(i - 1)];
}

JointInitial::JointInitial(int n_sys, int m_anc, ProbVector e) : n(n_sys), m(m_anc), entries(std::move(e)) {
  if (entries.size() != n * m) fail(Err::DimensionMismatch, "joint initial of wrong length");
}

const Rational& JointInitial::at(int i, int alpha) const {
  return entries[(i - 1) * m + (alpha - 1)];
}

ProbVector JointInitial::system_marginal() const {
  std::vector<Rational> out(static_cast<size_t>(n), Rational(0));
  for (int i = 1; i <= n; ++i)
    for (int a = 1; a <= m; ++a) out[static_cast<size_t>(i - 1)] += at(i, a);
  return ProbVector(std::move(out));
}

JointInitial JointInitial::independent(const ProbVector& p0, const ProbVector& lambda0) {
  std::vector<Rational> entries;
  entries.reserve(static_cast<size_t>(p0.size() * lambda0.size()));
  for (int i = 0; i < p0.size(); ++i)
    for (int a = 0; a < lambda0.size(); ++a) entries.push_back(p0[i] * lambda0[a]);
  return JointInitial(p0.size(), lambda0.size(), ProbVector(std::move(entries)));
}

TrajectoryMeasure dirac_process(const DeterministicSystem& d, int i) {
  if (i < 1 || i > d.n()) fail(Err::BadConfig, "configuration out of range");
  Trajectory traj;
  for (int k = 0; k < d.grid().size(); ++k) traj.configs.push_back(d.map(d.grid().at(k), i));
  return TrajectoryMeasure::dirac(d.grid(), d.n(), traj);
}

ProcessFamily deterministic_family(const DeterministicSystem& d, int tab_denominator) {
  std::vector<TrajectoryMeasure> diracs;
  for (int i = 1; i <= d.n(); ++i) diracs.push_back(dirac_process(d, i));
  const TimeGrid grid = d.grid();
  const int n = d.n();
  auto build = [diracs, grid, n](const ProbVector& p0) {
    std::vector<std::pair<Rational, TrajectoryMeasure>> parts;
    for (int i = 0; i < n; ++i) parts.emplace_back(p0[i], diracs[static_cast<size_t>(i)]);
    return TrajectoryMeasure::mix(parts);
  };
  std::vector<std::pair<ProbVector, TrajectoryMeasure>> members;
  for (const auto& p0 : simplex_grid(n, tab_denominator)) members.emplace_back(p0, build(p0));
  return ProcessFamily(grid, n, std::move(members), GeneratorKind::None, build);
}

DetDecomposabilityVerdict is_decomposable_deterministic(const DeterministicSystem& d) {
  const auto& grid = d.grid();
  for (int a = 0; a < grid.size(); ++a)
    for (int b = a + 1; b < grid.size(); ++b) {
      const int t_prime = grid.at(a);
      const int t = grid.at(b);
      for (int i = 1; i <= d.n(); ++i)
        for (int j = i + 1; j <= d.n(); ++j)
          if (d.map(t_prime, i) == d.map(t_prime, j) && d.map(t, i) != d.map(t, j))
            return {false, DetDecomposabilityWitness{t, t_prime, i, j}, {}};
    }
  // Merged trajectories never split, so the intermediate maps are well-defined
  // on ranges.
  std::vector<DetMapRecord> maps;
  for (int a = 0; a < grid.size(); ++a)
    for (int b = a; b < grid.size(); ++b) {
      const int t_prime = grid.at(a);
      const int t = grid.at(b);
      DetMapRecord rec{t, t_prime, {}};
      std::map<int, int> graph;
      for (int i = 1; i <= d.n(); ++i) graph[d.map(t_prime, i)] = d.map(t, i);
      rec.graph.assign(graph.begin(), graph.end());
      maps.push_back(std::move(rec));
    }
  return {true, std::nullopt, std::move(maps)};
}

TrajectoryMeasure ancilla_process(const SystemAncilla& sa, const JointInitial& pi) {
  if (pi.n != sa.n() || pi.m != sa.m()) fail(Err::DimensionMismatch, "joint initial does not match the composite");
  std::map<Trajectory, Rational> weights;
  for (int i = 1; i <= sa.n(); ++i)
    for (int a = 1; a <= sa.m(); ++a) {
      const Rational& w = pi.at(i, a);
      if (w == 0) continue;
      Trajectory traj;
      for (int k = 0; k < sa.grid().size(); ++k) traj.configs.push_back(sa.map(sa.grid().at(k), i, a));
      weights[traj] += w;
    }
  return TrajectoryMeasure::from_sparse(sa.grid(), sa.n(), weights);
}

ProcessFamily ancilla_family_independent(const SystemAncilla& sa, const ProbVector& lambda0,
                                         int tab_denominator) {
  if (lambda0.size() != sa.m()) fail(Err::DimensionMismatch, "ancilla distribution of wrong length");
  const SystemAncilla sa_copy = sa;
  const ProbVector l0 = lambda0;
  auto build = [sa_copy, l0](const ProbVector& p0) {
    return ancilla_process(sa_copy, JointInitial::independent(p0, l0));
  };
  std::vector<std::pair<ProbVector, TrajectoryMeasure>> members;
  for (const auto& p0 : simplex_grid(sa.n(), tab_denominator)) members.emplace_back(p0, build(p0));
  return ProcessFamily(sa.grid(), sa.n(), std::move(members), GeneratorKind::None, build);
}

ProcessFamily stochastic_family(const StochasticSystem& s, int tab_denominator) {
  const StochasticSystem s_copy = s;
  auto build = [s_copy](const ProbVector& p0) {
    std::vector<std::pair<Rational, TrajectoryMeasure>> parts;
    for (int i = 1; i <= s_copy.n(); ++i) parts.emplace_back(p0[i - 1], s_copy.process(i));
    return TrajectoryMeasure::mix(parts);
  };
  std::vector<std::pair<ProbVector, TrajectoryMeasure>> members;
  for (const auto& p0 : simplex_grid(s.n(), tab_denominator)) members.emplace_back(p0, build(p0));
  return ProcessFamily(s.grid(), s.n(), std::move(members), GeneratorKind::None, build);
}

AncillaRealization realize_family_as_ancilla(const ProcessFamily& fam) {
  const int n = fam.n();
  const int len = fam.grid().size();
  const long m = tail_count(n, len, kAncillaCapFamily);

  std::vector<std::vector<std::vector<int>>> table(
      static_cast<size_t>(len),
      std::vector<std::vector<int>>(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(m), 1)));
  for (long alpha = 1; alpha <= m; ++alpha) {
    const auto tail = decode_tail(alpha, n, len);
    for (int i = 1; i <= n; ++i) {
      table[0][static_cast<size_t>(i - 1)][static_cast<size_t>(alpha - 1)] = i;
      for (int k = 1; k < len; ++k)
        table[static_cast<size_t>(k)][static_cast<size_t>(i - 1)][static_cast<size_t>(alpha - 1)] =
            tail[static_cast<size_t>(k - 1)];
    }
  }
  SystemAncilla sa(fam.grid(), n, static_cast<int>(m), std::move(table));

  std::vector<std::pair<ProbVector, JointInitial>> joints;
  for (const auto& [p0, mu] : fam.members()) {
    std::vector<Rational> entries(static_cast<size_t>(n) * static_cast<size_t>(m), Rational(0));
    for (size_t idx = 0; idx < mu.table_size(); ++idx) {
      const Rational& w = mu.table()[idx];
      Trajectory traj = mu.trajectory_at(idx);
      const int i = traj.configs[0];
      std::vector<int> tail(traj.configs.begin() + 1, traj.configs.end());
      const long alpha = encode_tail(tail, n);
      entries[static_cast<size_t>((i - 1) * m + (alpha - 1))] = w;
    }
    joints.emplace_back(p0, JointInitial(n, static_cast<int>(m), ProbVector(std::move(entries))));
  }
  return {std::move(sa), std::move(joints)};
}

StochasticAncillaRealization realize_stochastic_as_ancilla(const StochasticSystem& s) {
  const int n = s.n();
  const int len = s.grid().size();
  const long tails = tail_count(n, len, kAncillaCapStochastic);
  long m = 1;
  for (int r = 0; r < n; ++r) {
    m *= tails;
    if (m > kAncillaCapStochastic) fail(Err::GridTooLarge, "ancilla would exceed its size cap");
  }

  // alpha - 1 = sum_r block_r * tails^{N-r} (big-endian over the blocks).
  auto decode_blocks = [&](long alpha) {
    std::vector<long> blocks(static_cast<size_t>(n), 0);
    long rem = alpha - 1;
    for (int r = n - 1; r >= 0; --r) {
      blocks[static_cast<size_t>(r)] = rem % tails;
      rem /= tails;
    }
    return blocks;
  };

  std::vector<std::vector<std::vector<int>>> table(
      static_cast<size_t>(len),
      std::vector<std::vector<int>>(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(m), 1)));
  std::vector<Rational> lambda(static_cast<size_t>(m), Rational(0));

  // q_r(tail) = mu_r({trajectory r followed by tail})
  std::vector<std::vector<Rational>> q(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(tails), Rational(0)));
  for (int r = 1; r <= n; ++r) {
    const auto& mu = s.process(r);
    for (long b = 0; b < tails; ++b) {
      Trajectory traj;
      traj.configs.push_back(r);
      const auto tail = decode_tail(b + 1, n, len);
      traj.configs.insert(traj.configs.end(), tail.begin(), tail.end());
      q[static_cast<size_t>(r - 1)][static_cast<size_t>(b)] = mu.weight(traj);
    }
  }

  for (long alpha = 1; alpha <= m; ++alpha) {
    const auto blocks = decode_blocks(alpha);
    Rational w = 1;
    for (int r = 0; r < n; ++r) {
      w *= q[static_cast<size_t>(r)][static_cast<size_t>(blocks[static_cast<size_t>(r)])];
      if (w == 0) break;
    }
    lambda[static_cast<size_t>(alpha - 1)] = w;
    for (int i = 1; i <= n; ++i) {
      const auto tail = decode_tail(blocks[static_cast<size_t>(i - 1)] + 1, n, len);
      table[0][static_cast<size_t>(i - 1)][static_cast<size_t>(alpha - 1)] = i;
      for (int k = 1; k < len; ++k)
        table[static_cast<size_t>(k)][static_cast<size_t>(i - 1)][static_cast<size_t>(alpha - 1)] =
            tail[static_cast<size_t>(k - 1)];
    }
  }
  SystemAncilla sa(s.grid(), n, static_cast<int>(m), std::move(table));
  return {std::move(sa), ProbVector(std::move(lambda))};
}

StochasticSystem realize_linear_as_stochastic(const MatrixFamily& fam) {
  std::vector<TrajectoryMeasure> processes;
  for (int i = 1; i <= fam.n(); ++i) {
    std::vector<ProbVector> traj;
    for (int k = 0; k < fam.grid().size(); ++k)
      traj.push_back(apply_matrix(fam.at(fam.grid().at(k)), ProbVector::vertex(fam.n(), i)));
    processes.push_back(markov_implementation(fam.grid(), traj));
  }
  return StochasticSystem(fam.grid(), fam.n(), std::move(processes));
}

StochasticSystem derive_stochastic_from_ancilla(const SystemAncilla& sa, const ProbVector& lambda0) {
  if (lambda0.size() != sa.m()) fail(Err::DimensionMismatch, "ancilla distribution of wrong length");
  std::vector<TrajectoryMeasure> processes;
  for (int i = 1; i <= sa.n(); ++i) {
    std::map<Trajectory, Rational> weights;
    for (int a = 1; a <= sa.m(); ++a) {
      if (lambda0[a - 1] == 0) continue;
      Trajectory traj;
      for (int k = 0; k < sa.grid().size(); ++k) traj.configs.push_back(sa.map(sa.grid().at(k), i, a));
      weights[traj] += lambda0[a - 1];
    }
    processes.push_back(TrajectoryMeasure::from_sparse(sa.grid(), sa.n(), weights));
  }
  return StochasticSystem(sa.grid(), sa.n(), std::move(processes));
}

}  // namespace stoqdyn
