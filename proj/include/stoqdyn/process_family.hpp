#ifndef STOQDYN_PROCESS_FAMILY_HPP
#define STOQDYN_PROCESS_FAMILY_HPP

#include <functional>
#include <optional>
#include <vector>

#include "stoqdyn/dynamics.hpp"
#include "stoqdyn/trajectory.hpp"

namespace stoqdyn {

enum class GeneratorKind { None, MarkovProduct, TransitionConstant, NonMarkovEps };

const char* generator_name(GeneratorKind k);
GeneratorKind generator_from_name(const std::string& name);

/// A stochastic process family tabulated on finitely many initial vectors
/// (always the vertices, usually a denominator-bounded grid as well), with an
/// optional closed-form generator for extension to new initial vectors.
/// Every member's time-0 marginal equals its initial vector.
class ProcessFamily {
 public:
  ProcessFamily(TimeGrid grid, int n, std::vector<std::pair<ProbVector, TrajectoryMeasure>> members,
                GeneratorKind kind = GeneratorKind::None,
                std::function<TrajectoryMeasure(const ProbVector&)> generator = nullptr);

  const TimeGrid& grid() const { return grid_; }
  int n() const { return n_; }
  const std::vector<std::pair<ProbVector, TrajectoryMeasure>>& members() const { return members_; }
  GeneratorKind generator_kind() const { return kind_; }

  const TrajectoryMeasure* find(const ProbVector& p0) const;
  /// Tabulated member; throws InvalidFamily when absent.
  const TrajectoryMeasure& member(const ProbVector& p0) const;
  /// Tabulated member or generator output; extension without a generator is
  /// rejected (NoGenerator).
  TrajectoryMeasure member_or_generate(const ProbVector& p0) const;

 private:
  TimeGrid grid_;
  int n_;
  std::vector<std::pair<ProbVector, TrajectoryMeasure>> members_;
  GeneratorKind kind_;
  std::function<TrajectoryMeasure(const ProbVector&)> generator_;
};

/// True iff the one-time marginals of mu equal the given distribution
/// trajectory at every grid time.
bool implements(const TrajectoryMeasure& mu, const std::vector<ProbVector>& traj);

/// implements(member(p0), solution from p0) for every tabulated member.
bool family_implements(const ProcessFamily& fam, const ProbabilityDynamics& dyn);

struct TransitionConstancyWitness {
  int t = 0;
  int i = 0;
  int j = 0;
  ProbVector p0;
  ProbVector q0;
  Rational value_p0;
  Rational value_q0;
};

struct TransitionConstancyVerdict {
  bool transition_constant = false;
  std::optional<MatrixFamily> common;  // the common M(t) family on success
  std::optional<TransitionConstancyWitness> witness;
};

/// Compares mu_{p0}(E_i(t)|E_j(0)) across all tabulated members, ignoring
/// undefined entries.
TransitionConstancyVerdict is_transition_constant(const ProcessFamily& fam);

/// Product measure of the one-time marginals: the Markovian implementation
/// that exists for every distribution trajectory.
TrajectoryMeasure markov_implementation(const TimeGrid& grid, const std::vector<ProbVector>& traj);

/// Three-time perturbation of the product measure; exists exactly for
/// non-degenerate trajectories (DegenerateTrajectory otherwise). The time
/// triple is the lexicographically first qualifying one, the perturbed
/// configurations the lowest qualifying indices, and epsilon is half the
/// minimum slack over the perturbed cells.
TrajectoryMeasure non_markov_implementation(const TimeGrid& grid, const std::vector<ProbVector>& traj);

/// Conditionally-i.i.d.-given-the-start construction: mu_{p0}(omega) =
/// p0_{omega(0)} * prod_{t>0} P_{omega(t),omega(0)}(t). Implements the matrix
/// dynamics and is transition-constant with common matrices P(t).
ProcessFamily transition_constant_family(const MatrixFamily& fam,
                                         int tab_denominator = kDefaultGridDenominator);

/// Member-wise product construction for an arbitrary dynamics.
ProcessFamily markov_family(const ProbabilityDynamics& dyn, int tab_denominator = kDefaultGridDenominator);

/// Marginal trajectories of the tabulated members, as a tabulated dynamics.
ProbabilityDynamics induced_dynamics(const ProcessFamily& fam);

/// Finite-support analog of the inner representation: one joint table over
/// (trajectory, support index); conditioning on an index recovers the member.
struct InnerRepresentation {
  TimeGrid grid;
  int n = 0;
  std::vector<std::pair<ProbVector, Rational>> support;
  std::vector<std::vector<Rational>> joint;  // joint[k] = weight_k * member table

  TrajectoryMeasure condition_on(int k) const;
  /// Marginal over the support index: the weight-mixture of the members.
  TrajectoryMeasure trajectory_marginal() const;
};

InnerRepresentation finite_inner_representation(const ProcessFamily& fam,
                                                const std::vector<std::pair<ProbVector, Rational>>& support);

}  // namespace stoqdyn

#endif
