#ifndef STOQDYN_JSON_IO_HPP
#define STOQDYN_JSON_IO_HPP

#include <string>

#include "json.hpp"
#include "stoqdyn/dynamics.hpp"
#include "stoqdyn/process_family.hpp"
#include "stoqdyn/quantum.hpp"
#include "stoqdyn/statistical.hpp"

namespace stoqdyn {

using Json = nlohmann::json;

// Conventions: rationals are "num/den" strings, rational matrices are arrays
// of columns, undefined conditional entries are the literal string
// "undefined", complex numbers are {"re", "im"} objects. Matrix-family files
// may declare "convention": "rows" to have their matrices transposed on load.

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json prob_vector_to_json(const ProbVector& p);
ProbVector prob_vector_from_json(const Json& j);

Json stochastic_matrix_to_json(const StochasticMatrix& m);
StochasticMatrix stochastic_matrix_from_json(const Json& j);

Json partial_matrix_to_json(const PartialStochasticMatrix& m);

Json rational_matrix_to_json(const RationalMatrix& m);

Json measure_to_json(const TrajectoryMeasure& mu);
TrajectoryMeasure measure_from_json(const Json& j);

Json dynamics_to_json(const ProbabilityDynamics& dyn);
ProbabilityDynamics dynamics_from_json(const Json& j);

Json family_to_json(const ProcessFamily& fam);
ProcessFamily family_from_json(const Json& j);

Json detsystem_to_json(const DeterministicSystem& d);
DeterministicSystem detsystem_from_json(const Json& j);

Json ancilla_to_json(const SystemAncilla& sa);
SystemAncilla ancilla_from_json(const Json& j);

Json unitary_to_json(const UnitaryFamily& u);
UnitaryFamily unitary_from_json(const Json& j);

Json joint_initial_to_json(const JointInitial& pi);

Json divisibility_to_json(const DivisibilityReport& report);
Json decomposability_to_json(const DecomposabilityVerdict& verdict);
Json linearity_to_json(const LinearityVerdict& verdict);
Json markov_to_json(const MarkovVerdict& verdict);
Json transition_constancy_to_json(const TransitionConstancyVerdict& verdict);

/// Machine-readable schema for one of: dynamics, measure, family, detsystem,
/// ancilla, unitary. Throws UnknownSchema otherwise.
std::string emit_schema(const std::string& name);

Json load_json_file(const std::string& path);

}  // namespace stoqdyn

#endif
