#include "stoqdyn/trajectory.hpp"

#include <algorithm>
#include <functional>

namespace stoqdyn {

namespace {

// Dense tables stay well under this; realizations downstream have their own caps.
constexpr size_t kTableCap = size_t(1) << 20;
constexpr int kMarkovConfigCap = 4;
constexpr int kMarkovTimeCap = 7;  // |T| positions, i.e. tau <= 6 on contiguous grids

}  // namespace

TimeGrid::TimeGrid(std::vector<int> times) : times_(std::move(times)) {
  if (times_.empty() || times_.front() != 0) fail(Err::InvalidTime, "grid must start at 0");
  for (size_t k = 1; k < times_.size(); ++k)
    if (times_[k] <= times_[k - 1]) fail(Err::InvalidTime, "grid must be strictly increasing");
}

bool TimeGrid::contains(int t) const {
  return std::binary_search(times_.begin(), times_.end(), t);
}

int TimeGrid::index_of(int t) const {
  auto it = std::lower_bound(times_.begin(), times_.end(), t);
  if (it == times_.end() || *it != t) fail(Err::InvalidTime, "time " + std::to_string(t) + " not in grid");
  return static_cast<int>(it - times_.begin());
}

bool TimeGrid::difference_closed() const {
  for (int a : times_)
    for (int b : times_)
      if (b <= a && !contains(a - b)) return false;
  return true;
}

TimeGrid TimeGrid::range(int tau) {
  std::vector<int> ts(static_cast<size_t>(tau + 1));
  for (int t = 0; t <= tau; ++t) ts[static_cast<size_t>(t)] = t;
  return TimeGrid(std::move(ts));
}

EventSpec::EventSpec(std::vector<std::pair<int, int>> constraints) : constraints_(std::move(constraints)) {
  std::sort(constraints_.begin(), constraints_.end());
  constraints_.erase(std::unique(constraints_.begin(), constraints_.end()), constraints_.end());
  for (size_t k = 1; k < constraints_.size(); ++k)
    if (constraints_[k].first == constraints_[k - 1].first) contradictory_ = true;
}

EventSpec EventSpec::conjoin(const EventSpec& a, const EventSpec& b) {
  std::vector<std::pair<int, int>> merged = a.constraints();
  merged.insert(merged.end(), b.constraints().begin(), b.constraints().end());
  EventSpec out(std::move(merged));
  out.contradictory_ = out.contradictory_ || a.contradictory_ || b.contradictory_;
  return out;
}

TrajectoryMeasure::TrajectoryMeasure(TimeGrid grid, int n_configs, std::vector<Rational> table)
    : grid_(std::move(grid)), n_(n_configs), table_(std::move(table)) {
  if (n_ < 1) fail(Err::DimensionMismatch, "need at least one configuration");
  size_t expect = 1;
  for (int k = 0; k < grid_.size(); ++k) {
    expect *= static_cast<size_t>(n_);
    if (expect > kTableCap) fail(Err::CapExceeded, "trajectory table too large");
  }
  if (table_.size() != expect) fail(Err::DimensionMismatch, "table size does not match C^{|T|}");
  Rational sum = 0;
  for (const auto& w : table_) {
    if (w < 0) fail(Err::OutOfRange, "negative trajectory weight");
    sum += w;
  }
  if (sum != 1) fail(Err::NotNormalized, "trajectory weights sum to " + to_string(sum));
}

TrajectoryMeasure TrajectoryMeasure::from_sparse(TimeGrid grid, int n_configs,
                                                 const std::map<Trajectory, Rational>& weights) {
  size_t size = 1;
  for (int k = 0; k < grid.size(); ++k) {
    size *= static_cast<size_t>(n_configs);
    if (size > kTableCap) fail(Err::CapExceeded, "trajectory table too large");
  }
  std::vector<Rational> table(size, Rational(0));
  for (const auto& [traj, w] : weights) {
    if (static_cast<int>(traj.configs.size()) != grid.size())
      fail(Err::LengthMismatch, "trajectory length does not match grid");
    size_t idx = 0;
    for (int c : traj.configs) {
      if (c < 1 || c > n_configs) fail(Err::BadConfig, "configuration out of range");
      idx = idx * static_cast<size_t>(n_configs) + static_cast<size_t>(c - 1);
    }
    table[idx] += w;
  }
  return TrajectoryMeasure(std::move(grid), n_configs, std::move(table));
}

TrajectoryMeasure TrajectoryMeasure::dirac(TimeGrid grid, int n_configs, const Trajectory& traj) {
  std::map<Trajectory, Rational> w;
  w[traj] = 1;
  return from_sparse(std::move(grid), n_configs, w);
}

size_t TrajectoryMeasure::index_of(const Trajectory& traj) const {
  if (static_cast<int>(traj.configs.size()) != grid_.size())
    fail(Err::LengthMismatch, "trajectory length does not match grid");
  size_t idx = 0;
  for (int c : traj.configs) {
    if (c < 1 || c > n_) fail(Err::BadConfig, "configuration out of range");
    idx = idx * static_cast<size_t>(n_) + static_cast<size_t>(c - 1);
  }
  return idx;
}

Trajectory TrajectoryMeasure::trajectory_at(size_t index) const {
  Trajectory traj;
  traj.configs.assign(static_cast<size_t>(grid_.size()), 1);
  for (int k = grid_.size() - 1; k >= 0; --k) {
    traj.configs[static_cast<size_t>(k)] = static_cast<int>(index % static_cast<size_t>(n_)) + 1;
    index /= static_cast<size_t>(n_);
  }
  return traj;
}

TrajectoryMeasure TrajectoryMeasure::mix(const std::vector<std::pair<Rational, TrajectoryMeasure>>& parts) {
  if (parts.empty()) fail(Err::DimensionMismatch, "empty mixture");
  const auto& first = parts.front().second;
  std::vector<Rational> table(first.table_.size(), Rational(0));
  Rational total = 0;
  for (const auto& [w, m] : parts) {
    if (w < 0) fail(Err::BadWeights, "negative mixture weight");
    if (m.grid_ != first.grid_ || m.n_ != first.n_) fail(Err::GridMismatch, "mixture components differ");
    total += w;
    if (w == 0) continue;
    for (size_t k = 0; k < table.size(); ++k) table[k] += w * m.table_[k];
  }
  if (total != 1) fail(Err::BadWeights, "mixture weights sum to " + to_string(total));
  return TrajectoryMeasure(first.grid_, first.n_, std::move(table));
}

namespace {

// Constraints as (grid position, 0-based config); throws InvalidEvent.
std::vector<std::pair<int, int>> positions_of(const TrajectoryMeasure& mu, const EventSpec& e) {
  std::vector<std::pair<int, int>> out;
  for (const auto& [t, i] : e.constraints()) {
    if (!mu.grid().contains(t)) fail(Err::InvalidEvent, "event time not in grid");
    if (i < 1 || i > mu.n_configs()) fail(Err::InvalidEvent, "event configuration out of range");
    out.emplace_back(mu.grid().index_of(t), i - 1);
  }
  return out;
}

// Joint distribution of the configurations at the given grid positions,
// as a dense table over N^k (positions in the order supplied).
std::vector<Rational> project(const TrajectoryMeasure& mu, const std::vector<int>& positions) {
  const int n = mu.n_configs();
  size_t out_size = 1;
  for (size_t k = 0; k < positions.size(); ++k) out_size *= static_cast<size_t>(n);
  std::vector<Rational> out(out_size, Rational(0));
  const int len = mu.grid().size();
  std::vector<int> digits(static_cast<size_t>(len), 0);
  const auto& table = mu.table();
  for (size_t idx = 0; idx < table.size(); ++idx) {
    if (table[idx] == 0) continue;
    size_t rem = idx;
    for (int k = len - 1; k >= 0; --k) {
      digits[static_cast<size_t>(k)] = static_cast<int>(rem % static_cast<size_t>(n));
      rem /= static_cast<size_t>(n);
    }
    size_t key = 0;
    for (int p : positions) key = key * static_cast<size_t>(n) + static_cast<size_t>(digits[static_cast<size_t>(p)]);
    out[key] += table[idx];
  }
  return out;
}

}  // namespace

Rational joint_probability(const TrajectoryMeasure& mu, const EventSpec& e) {
  auto cs = positions_of(mu, e);
  if (e.contradictory()) return Rational(0);
  Rational sum = 0;
  const int n = mu.n_configs();
  const int len = mu.grid().size();
  const auto& table = mu.table();
  std::vector<int> digits(static_cast<size_t>(len), 0);
  for (size_t idx = 0; idx < table.size(); ++idx) {
    if (table[idx] == 0) continue;
    size_t rem = idx;
    for (int k = len - 1; k >= 0; --k) {
      digits[static_cast<size_t>(k)] = static_cast<int>(rem % static_cast<size_t>(n));
      rem /= static_cast<size_t>(n);
    }
    bool match = true;
    for (const auto& [pos, c] : cs)
      if (digits[static_cast<size_t>(pos)] != c) { match = false; break; }
    if (match) sum += table[idx];
  }
  return sum;
}

ProbVector marginal_vector(const TrajectoryMeasure& mu, int t) {
  if (!mu.grid().contains(t)) fail(Err::InvalidTime, "time not in grid");
  auto dist = project(mu, {mu.grid().index_of(t)});
  return ProbVector(std::move(dist));
}

std::optional<Rational> conditional(const TrajectoryMeasure& mu, const EventSpec& target,
                                    const EventSpec& given) {
  positions_of(mu, target);  // validate
  const Rational denom = joint_probability(mu, given);
  if (denom == 0) return std::nullopt;
  return joint_probability(mu, EventSpec::conjoin(target, given)) / denom;
}

PartialStochasticMatrix transition_matrix(const TrajectoryMeasure& mu, int t, int t_prime) {
  if (!mu.grid().contains(t) || !mu.grid().contains(t_prime)) fail(Err::InvalidTime, "time not in grid");
  const int n = mu.n_configs();
  const int pt = mu.grid().index_of(t);
  const int pt2 = mu.grid().index_of(t_prime);
  std::vector<std::vector<PartialStochasticMatrix::Entry>> cols(
      static_cast<size_t>(n), std::vector<PartialStochasticMatrix::Entry>(static_cast<size_t>(n)));
  if (pt == pt2) {
    // Conditionals within a single time: identity on defined columns.
    auto marg = project(mu, {pt2});
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        if (marg[static_cast<size_t>(j)] == 0) continue;
        cols[static_cast<size_t>(j)][static_cast<size_t>(i)] = Rational(i == j ? 1 : 0);
      }
    return PartialStochasticMatrix(n, std::move(cols));
  }
  auto pair_dist = project(mu, {pt, pt2});  // key = i*n + j
  std::vector<Rational> marg(static_cast<size_t>(n), Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) marg[static_cast<size_t>(j)] += pair_dist[static_cast<size_t>(i * n + j)];
  for (int j = 0; j < n; ++j) {
    if (marg[static_cast<size_t>(j)] == 0) continue;
    for (int i = 0; i < n; ++i)
      cols[static_cast<size_t>(j)][static_cast<size_t>(i)] =
          pair_dist[static_cast<size_t>(i * n + j)] / marg[static_cast<size_t>(j)];
  }
  return PartialStochasticMatrix(n, std::move(cols));
}

MarkovVerdict is_markovian(const TrajectoryMeasure& mu) {
  const int n = mu.n_configs();
  const int len = mu.grid().size();
  if (n > kMarkovConfigCap || len > kMarkovTimeCap)
    fail(Err::CapExceeded, "Markov check capped at N <= 4 and |T| <= 7");

  // Tuples with repeated times satisfy the condition trivially, so complete
  // enumeration over strictly increasing tuples (= position subsets) suffices.
  // Subsets are visited smallest-size first, then lexicographically.
  for (int size = 3; size <= len; ++size) {
    std::vector<int> subset(static_cast<size_t>(size));
    std::function<MarkovVerdict(int, int)> visit = [&](int k, int start) -> MarkovVerdict {
      if (k == size) {
        auto joint_full = project(mu, subset);                       // over all k positions
        std::vector<int> conds(subset.begin(), subset.end() - 1);   // t_1..t_m
        auto joint_conds = project(mu, conds);
        std::vector<int> last_pair = {subset[static_cast<size_t>(size - 2)], subset[static_cast<size_t>(size - 1)]};
        auto joint_pair = project(mu, last_pair);
        auto joint_last = project(mu, {subset[static_cast<size_t>(size - 2)]});

        std::vector<int> cfg(static_cast<size_t>(size), 0);
        std::function<MarkovVerdict(int)> assign = [&](int pos) -> MarkovVerdict {
          if (pos == size) {
            size_t key_conds = 0, key_full = 0;
            for (int a = 0; a < size - 1; ++a) key_conds = key_conds * static_cast<size_t>(n) + static_cast<size_t>(cfg[static_cast<size_t>(a)]);
            for (int a = 0; a < size; ++a) key_full = key_full * static_cast<size_t>(n) + static_cast<size_t>(cfg[static_cast<size_t>(a)]);
            const Rational& denom_full = joint_conds[key_conds];
            const Rational& denom_last = joint_last[static_cast<size_t>(cfg[static_cast<size_t>(size - 2)])];
            if (denom_full == 0 || denom_last == 0) return {};  // undefined side: skip
            const Rational lhs = joint_full[key_full] / denom_full;
            const size_t key_pair = static_cast<size_t>(cfg[static_cast<size_t>(size - 2)]) * static_cast<size_t>(n) +
                                    static_cast<size_t>(cfg[static_cast<size_t>(size - 1)]);
            const Rational rhs = joint_pair[key_pair] / denom_last;
            if (lhs != rhs) {
              MarkovWitness w;
              for (int a = 0; a < size; ++a) {
                w.times.push_back(mu.grid().at(subset[static_cast<size_t>(a)]));
                w.configs.push_back(cfg[static_cast<size_t>(a)] + 1);
              }
              w.conditional_full_history = lhs;
              w.conditional_last_only = rhs;
              return {false, w};
            }
            return {};
          }
          for (int c = 0; c < n; ++c) {
            cfg[static_cast<size_t>(pos)] = c;
            auto v = assign(pos + 1);
            if (v.witness.has_value()) return v;
          }
          return {};
        };
        return assign(0);
      }
      for (int p = start; p < len; ++p) {
        subset[static_cast<size_t>(k)] = p;
        auto v = visit(k + 1, p + 1);
        if (v.witness.has_value()) return v;
      }
      return {};
    };
    auto v = visit(0, 0);
    if (v.witness.has_value()) return v;
  }
  return {true, std::nullopt};
}

TimeHomogeneityVerdict is_time_homogeneous(const TrajectoryMeasure& mu) {
  auto mk = is_markovian(mu);
  if (!mk.markovian) fail(Err::NotMarkovian, "time-homogeneity requires a Markovian measure");
  for (int a = 0; a < mu.grid().size(); ++a) {
    for (int b = a; b < mu.grid().size(); ++b) {
      const int t_prime = mu.grid().at(a);
      const int t = mu.grid().at(b);
      if (!mu.grid().contains(t - t_prime)) continue;  // right side not expressible
      auto lhs = transition_matrix(mu, t, t_prime);
      auto rhs = transition_matrix(mu, t - t_prime, 0);
      for (int j = 0; j < mu.n_configs(); ++j)
        for (int i = 0; i < mu.n_configs(); ++i) {
          if (!lhs.defined(i, j) || !rhs.defined(i, j)) continue;
          if (*lhs.at(i, j) != *rhs.at(i, j)) {
            TimeHomogeneityWitness w{t, t_prime, i + 1, j + 1, *lhs.at(i, j), *rhs.at(i, j)};
            return {false, w};
          }
        }
    }
  }
  return {true, std::nullopt};
}

ChapmanKolmogorovVerdict check_chapman_kolmogorov(const TrajectoryMeasure& mu, int t, int t_prime) {
  if (!mu.grid().contains(t) || !mu.grid().contains(t_prime)) fail(Err::InvalidTime, "time not in grid");
  if (t_prime > t || t_prime < 0) fail(Err::InvalidTime, "need 0 <= t' <= t");
  const int n = mu.n_configs();
  auto m_t0 = transition_matrix(mu, t, 0);
  auto m_tt = transition_matrix(mu, t, t_prime);
  auto m_t0p = transition_matrix(mu, t_prime, 0);
  for (int k = 0; k < n; ++k) {
    if (!m_t0p.column_defined(k)) continue;  // mu(E_k(0)) = 0: both sides undefined
    for (int i = 0; i < n; ++i) {
      Rational rhs = 0;
      for (int j = 0; j < n; ++j) {
        const Rational& step = *m_t0p.at(j, k);
        if (step == 0) continue;  // zero-weight terms are skipped
        rhs += *m_tt.at(i, j) * step;
      }
      if (*m_t0.at(i, k) != rhs) {
        ChapmanKolmogorovWitness w{i + 1, k + 1, *m_t0.at(i, k), rhs};
        return {false, w};
      }
    }
  }
  return {true, std::nullopt};
}

bool is_non_degenerate(const std::vector<ProbVector>& traj) {
  const int len = static_cast<int>(traj.size());
  int first = -1, last = -1;
  for (int k = 0; k < len; ++k) {
    bool interior = false;
    for (int i = 0; i < traj[static_cast<size_t>(k)].size(); ++i)
      if (traj[static_cast<size_t>(k)].interior_at(i)) { interior = true; break; }
    if (interior) {
      if (first < 0) first = k;
      last = k;
    }
  }
  return first >= 0 && last - first >= 2;
}

}  // namespace stoqdyn
