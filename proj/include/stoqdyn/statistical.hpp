#ifndef STOQDYN_STATISTICAL_HPP
#define STOQDYN_STATISTICAL_HPP

#include <optional>
#include <vector>

#include "stoqdyn/process_family.hpp"

namespace stoqdyn {

/// Deterministic single-system dynamics D : T x C -> C, identity at time 0.
class DeterministicSystem {
 public:
  /// table[k][i-1] = D(t_k, i), for grid position k.
  DeterministicSystem(TimeGrid grid, int n, std::vector<std::vector<int>> table);

  const TimeGrid& grid() const { return grid_; }
  int n() const { return n_; }
  int map(int t, int i) const;

 private:
  TimeGrid grid_;
  int n_;
  std::vector<std::vector<int>> table_;
};

/// Deterministic composite dynamics SA : T x C x Lambda -> C; the ancilla
/// configuration is never evolved, only read.
class SystemAncilla {
 public:
  /// table[k][i-1][alpha-1] = SA(t_k, i, alpha).
  SystemAncilla(TimeGrid grid, int n, int m, std::vector<std::vector<std::vector<int>>> table);

  const TimeGrid& grid() const { return grid_; }
  int n() const { return n_; }
  int m() const { return m_; }
  int map(int t, int i, int alpha) const;

 private:
  TimeGrid grid_;
  int n_;
  int m_;
  std::vector<std::vector<std::vector<int>>> table_;
};

/// Stochastic single-system dynamics: one process per starting configuration,
/// with mu_i concentrated on E_i(0).
class StochasticSystem {
 public:
  StochasticSystem(TimeGrid grid, int n, std::vector<TrajectoryMeasure> processes);

  const TimeGrid& grid() const { return grid_; }
  int n() const { return n_; }
  const TrajectoryMeasure& process(int i) const;  // 1-based
  const std::vector<TrajectoryMeasure>& processes() const { return processes_; }

 private:
  TimeGrid grid_;
  int n_;
  std::vector<TrajectoryMeasure> processes_;
};

/// Joint initial distribution over C x Lambda, entry (i, alpha) at index
/// (i-1)*M + (alpha-1).
struct JointInitial {
  int n = 0;
  int m = 0;
  ProbVector entries;

  JointInitial(int n_sys, int m_anc, ProbVector e);
  const Rational& at(int i, int alpha) const;  // 1-based
  ProbVector system_marginal() const;
  static JointInitial independent(const ProbVector& p0, const ProbVector& lambda0);
};

/// Point mass on the trajectory t -> D(t, i).
TrajectoryMeasure dirac_process(const DeterministicSystem& d, int i);

/// member(p0) = sum_i p0_i * dirac_process(d, i); transition-constant with
/// 0/1-valued common matrices.
ProcessFamily deterministic_family(const DeterministicSystem& d,
                                   int tab_denominator = kDefaultGridDenominator);

struct DetDecomposabilityWitness {
  int t = 0;
  int t_prime = 0;
  int i = 0;
  int j = 0;
};

struct DetMapRecord {
  int t = 0;
  int t_prime = 0;
  std::vector<std::pair<int, int>> graph;  // configuration in Ran D_{t'} -> image
};

struct DetDecomposabilityVerdict {
  bool decomposable = false;
  std::optional<DetDecomposabilityWitness> witness;
  std::vector<DetMapRecord> maps;
};

/// Trajectories of a decomposable deterministic system never merge and then
/// split; the witness is a pair of starts that do.
DetDecomposabilityVerdict is_decomposable_deterministic(const DeterministicSystem& d);

/// Mixture over (i, alpha) of the point masses on t -> SA(t, i, alpha).
TrajectoryMeasure ancilla_process(const SystemAncilla& sa, const JointInitial& pi);

/// Family with uncorrelated initial distributions pi_{i,alpha} = p0_i * l0_a;
/// transition-constant, with common matrices depending only on lambda0.
ProcessFamily ancilla_family_independent(const SystemAncilla& sa, const ProbVector& lambda0,
                                         int tab_denominator = kDefaultGridDenominator);

/// member(p0) = sum_i p0_i mu_i.
ProcessFamily stochastic_family(const StochasticSystem& s,
                                int tab_denominator = kDefaultGridDenominator);

/// Ancilla realization of an arbitrary family: ancilla configurations encode
/// trajectory tails (omega(t) for t > 0) in base-N big-endian order, and the
/// joint initial weights are exactly the member weights.
struct AncillaRealization {
  SystemAncilla sa;
  std::vector<std::pair<ProbVector, JointInitial>> joints;  // one per tabulated member
};

AncillaRealization realize_family_as_ancilla(const ProcessFamily& fam);

/// Block-encoded ancilla realization of a stochastic system: alpha is a tuple
/// of N tails, block r distributed as mu_r, lambda0 the product of the block
/// weights.
struct StochasticAncillaRealization {
  SystemAncilla sa;
  ProbVector lambda0;
};

StochasticAncillaRealization realize_stochastic_as_ancilla(const StochasticSystem& s);

/// Stochastic system whose processes are the product implementations of the
/// vertex solutions t -> P(t) e_i; its induced dynamics equals the input.
StochasticSystem realize_linear_as_stochastic(const MatrixFamily& fam);

/// mu_i = sum_alpha lambda0_alpha * delta_{omega_{i,alpha}}: the stochastic
/// system an independently prepared ancilla induces on the system alone.
StochasticSystem derive_stochastic_from_ancilla(const SystemAncilla& sa, const ProbVector& lambda0);

}  // namespace stoqdyn

#endif
