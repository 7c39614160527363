#ifndef STOQDYN_TRAJECTORY_HPP
#define STOQDYN_TRAJECTORY_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "stoqdyn/simplex.hpp"

namespace stoqdyn {

/// Finite integer time grid containing 0, strictly increasing.
class TimeGrid {
 public:
  TimeGrid() : times_{0} {}
  explicit TimeGrid(std::vector<int> times);

  int size() const { return static_cast<int>(times_.size()); }
  int at(int k) const { return times_[static_cast<size_t>(k)]; }
  const std::vector<int>& times() const { return times_; }
  bool contains(int t) const;
  /// Position of time t in the grid; throws InvalidTime when absent.
  int index_of(int t) const;
  int max_time() const { return times_.back(); }
  /// True iff t - t' is in the grid for every pair t' <= t.
  bool difference_closed() const;
  /// The contiguous grid {0, 1, ..., tau}.
  static TimeGrid range(int tau);

  bool operator==(const TimeGrid& o) const { return times_ == o.times_; }
  bool operator!=(const TimeGrid& o) const { return !(*this == o); }

 private:
  std::vector<int> times_;
};

/// One configuration per grid time, values in 1..N.
struct Trajectory {
  std::vector<int> configs;
  bool operator==(const Trajectory& o) const { return configs == o.configs; }
  bool operator<(const Trajectory& o) const { return configs < o.configs; }
};

/// Conjunction of elementary events: (time, configuration) constraints.
/// Constraints are normalized (time-sorted, deduplicated); two different
/// configurations at the same time make the event contradictory, which
/// evaluates to probability zero rather than erroring.
class EventSpec {
 public:
  EventSpec() = default;
  explicit EventSpec(std::vector<std::pair<int, int>> constraints);
  EventSpec(std::initializer_list<std::pair<int, int>> constraints)
      : EventSpec(std::vector<std::pair<int, int>>(constraints)) {}

  const std::vector<std::pair<int, int>>& constraints() const { return constraints_; }
  bool empty() const { return constraints_.empty() && !contradictory_; }
  bool contradictory() const { return contradictory_; }

  static EventSpec conjoin(const EventSpec& a, const EventSpec& b);

 private:
  std::vector<std::pair<int, int>> constraints_;
  bool contradictory_ = false;
};

/// Exact probability measure on the full trajectory space C^{|T|}, stored
/// densely. Weights are nonnegative and sum exactly to 1.
class TrajectoryMeasure {
 public:
  /// Dense table indexed by mixed-radix trajectory encoding.
  TrajectoryMeasure(TimeGrid grid, int n_configs, std::vector<Rational> table);
  /// Sparse construction; missing trajectories read as zero.
  static TrajectoryMeasure from_sparse(TimeGrid grid, int n_configs,
                                       const std::map<Trajectory, Rational>& weights);
  /// Point mass concentrated on one trajectory.
  static TrajectoryMeasure dirac(TimeGrid grid, int n_configs, const Trajectory& traj);

  const TimeGrid& grid() const { return grid_; }
  int n_configs() const { return n_; }
  size_t table_size() const { return table_.size(); }
  const std::vector<Rational>& table() const { return table_; }

  size_t index_of(const Trajectory& traj) const;
  Trajectory trajectory_at(size_t index) const;
  const Rational& weight(const Trajectory& traj) const { return table_[index_of(traj)]; }

  /// lam*this + (1-lam)*other, exact.
  static TrajectoryMeasure mix(const std::vector<std::pair<Rational, TrajectoryMeasure>>& parts);

  bool operator==(const TrajectoryMeasure& o) const {
    return grid_ == o.grid_ && n_ == o.n_ && table_ == o.table_;
  }
  bool operator!=(const TrajectoryMeasure& o) const { return !(*this == o); }

 private:
  TimeGrid grid_;
  int n_;
  std::vector<Rational> table_;
};

/// Probability of a conjunction of (time, configuration) events. The empty
/// event is the full space and has probability 1.
Rational joint_probability(const TrajectoryMeasure& mu, const EventSpec& e);

/// One-time distribution (mu(E_1(t)), ..., mu(E_N(t))).
ProbVector marginal_vector(const TrajectoryMeasure& mu, int t);

/// Bayes conditional; nullopt when the conditioning event has probability 0.
std::optional<Rational> conditional(const TrajectoryMeasure& mu, const EventSpec& target,
                                    const EventSpec& given);

/// Two-time conditional-probability grid M(t <- t'); column j is undefined
/// exactly when mu(E_j(t')) = 0.
PartialStochasticMatrix transition_matrix(const TrajectoryMeasure& mu, int t, int t_prime);

struct MarkovWitness {
  std::vector<int> times;    // t_1 < ... < t_{m+1}
  std::vector<int> configs;  // i_1, ..., i_{m+1}
  Rational conditional_full_history;
  Rational conditional_last_only;
};

struct MarkovVerdict {
  bool markovian = false;
  std::optional<MarkovWitness> witness;
};

/// Complete check of the Markov condition over every increasing tuple of grid
/// times and every configuration assignment; comparisons where either side is
/// undefined are skipped. Caps: N <= 4 and |T| <= 7.
MarkovVerdict is_markovian(const TrajectoryMeasure& mu);

struct TimeHomogeneityWitness {
  int t = 0;
  int t_prime = 0;
  int i = 0;
  int j = 0;
  Rational lhs;
  Rational rhs;
};

struct TimeHomogeneityVerdict {
  bool time_homogeneous = false;
  std::optional<TimeHomogeneityWitness> witness;
};

/// Requires a Markovian measure (NotMarkovian otherwise). Compares
/// mu(E_i(t)|E_j(t')) with mu(E_i(t-t')|E_j(0)) whenever both conditionals
/// are defined and t-t' lies in the grid.
TimeHomogeneityVerdict is_time_homogeneous(const TrajectoryMeasure& mu);

struct ChapmanKolmogorovWitness {
  int i = 0;
  int k = 0;
  Rational lhs;
  Rational rhs;
};

struct ChapmanKolmogorovVerdict {
  bool holds = false;
  std::optional<ChapmanKolmogorovWitness> witness;
};

/// M(t<-0) = M(t<-t') M(t'<-0) on mutually defined entries, with zero-weight
/// terms skipped in the product.
ChapmanKolmogorovVerdict check_chapman_kolmogorov(const TrajectoryMeasure& mu, int t, int t_prime);

/// A trajectory of distributions admits a non-Markovian implementation iff
/// there are grid positions a < b < c with a strictly interior entry at both
/// a and c.
bool is_non_degenerate(const std::vector<ProbVector>& traj);

}  // namespace stoqdyn

#endif
