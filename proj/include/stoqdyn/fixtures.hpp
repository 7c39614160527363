#ifndef STOQDYN_FIXTURES_HPP
#define STOQDYN_FIXTURES_HPP

#include <string>
#include <vector>

#include "stoqdyn/json_io.hpp"

namespace stoqdyn {

/// One registry scenario: the constructed inputs, every checked value, and an
/// overall verdict. Reports are deterministic.
struct FixtureResult {
  std::string id;
  bool pass = false;
  Json report;
};

const std::vector<std::string>& fixture_ids();
FixtureResult run_fixture(const std::string& id);

// Shared builders (fixtures and tests use the same objects).
ProbabilityDynamics intro_coin_dynamics(bool square_bias);  // f(r) = r^2 or f(r) = r
MatrixFamily flip_family();                                 // one-step flip matrices
MatrixFamily merge_then_split_family();                     // P(1) collapses, P(2) is the identity
MatrixFamily example2_family();                             // decomposable, not divisible
SystemAncilla sec54_system_ancilla();                       // two-configuration composite, two ancilla values
UnitaryFamily rotation_family_pi8();                        // rotations by pi/8 and 3*pi/8

}  // namespace stoqdyn

#endif
