// Copyright 2026 The edlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "edlab/hilbert/matrix.hpp"
#include "edlab/hilbert/state.hpp"
#include "edlab/metrics/noise_disturbance.hpp"
#include "edlab/models/model.hpp"

namespace edlab {

enum class Relation { kKennard, kRobertson, kHeisenberg, kOzawa, kTypeI, kTypeII, kCommutatorIdentity };
enum class ViolationClass { kNone, kTypeI, kTypeII };

std::string to_string(Relation relation);
std::string to_string(ViolationClass violation);

/// Default tolerance for physics relations evaluated on the grid.
inline constexpr double kRelationTolerance = 1e-6;
/// Tolerance for relations evaluated in exact coefficient or matrix algebra.
inline constexpr double kExactTolerance = 1e-12;
/// Slack for each link of the error-disturbance derivation chain.
inline constexpr double kDerivationSlack = 1e-8;
/// Values at or below this count as zero when classifying violations.
inline constexpr double kZeroThreshold = 1e-9;

/// One evaluated relation lhs >= rhs (or lhs == rhs for identities, where
/// margin = -|lhs - rhs|). satisfied <=> margin >= -tolerance.
struct InequalityReport {
  Relation relation = Relation::kKennard;
  std::string label;  // human-readable form of the relation
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  bool satisfied = false;
  /// False when the relation does not bind for this model (type bounds,
  /// independent intervention); satisfied is still reported.
  bool applicable = true;
};

/// s(Q) s(P) >= hbar/2 on a single-particle state.
InequalityReport check_kennard(const StateVector& state);
/// Same relation for the measured object inside a joint state.
InequalityReport check_kennard(const JointState& state);

/// s(A) s(B) >= |<[A, B]>| / 2 on a finite-dimensional state (normalized
/// internally). Throws ValidationError when A or B is not Hermitian or the
/// dimensions differ.
InequalityReport check_robertson(const MatrixOperator& a, const MatrixOperator& b, const Eigen::VectorXcd& state);

/// e(Q) n(P) >= hbar/2. A violation is a physics result, not an error.
InequalityReport check_heisenberg(const MeasurementModel& model, const JointState& initial);
/// e n + e s(P) + s(Q) n >= hbar/2.
InequalityReport check_ozawa(const MeasurementModel& model, const JointState& initial);

/// The four links behind the universal bound: three Robertson-type bounds
/// and the triangle inequality for their right-hand sides.
struct DerivationLinks {
  InequalityReport noise_disturbance;   // e n >= |<[N, D]>|/2
  InequalityReport noise_momentum;      // e s(P) >= |<[N, P(0)]>|/2
  InequalityReport position_disturbance;  // s(Q) n >= |<[Q(0), D]>|/2
  InequalityReport triangle;            // sum of the three right-hand sides >= hbar/2
  bool all_hold() const;
};
DerivationLinks ozawa_derivation(const MeasurementModel& model, const JointState& initial);

/// TypeI bound e s(P) >= hbar/2 (binding when n = 0) and TypeII bound
/// s(Q) n >= hbar/2 (binding when e = 0). A report is marked non-applicable
/// when its zero condition does not hold.
std::pair<InequalityReport, InequalityReport> check_type_bounds(const MeasurementModel& model,
                                                                const JointState& initial,
                                                                double zero_threshold = kZeroThreshold);

/// [N, D] + [N, P(0)] + [Q(0), D] = -i hbar in coefficient algebra.
/// lhs and rhs hold imaginary parts; the margin uses the full complex
/// difference.
InequalityReport check_commutator_identity(const MeasurementModel& model);
/// Same identity as a grid expectation value <[X, Y]> with both operator
/// orders applied on the grid (tolerance 1e-3).
InequalityReport check_commutator_identity(const MeasurementModel& model, const JointState& initial);
/// <psi| XY - YX |psi> on the grid.
std::complex<double> grid_commutator_expectation(const LinearObservable& x, const LinearObservable& y,
                                                 const JointState& state);

struct IndependentIntervention {
  /// N and D have no object components.
  bool independent = false;
  /// [N, -D] = i hbar with [N, P(0)] = [Q(0), D] = 0; non-applicable when
  /// the model is not independent.
  InequalityReport report;
};
IndependentIntervention check_independent_intervention(const MeasurementModel& model);

/// Throws ValidationError when both e and n are at or below the threshold
/// (the universal bound excludes that) or when either is negative.
ViolationClass classify_violation(double epsilon, double eta, double zero_threshold = kZeroThreshold);

/// Every metric and relation for one (model, state) pair.
struct RelationTable {
  NoiseDisturbanceReport metrics;
  std::vector<InequalityReport> relations;  // Kennard, Heisenberg, Ozawa, TypeI, TypeII, CommutatorIdentity
  DerivationLinks derivation;
  ViolationClass classification = ViolationClass::kNone;
};
RelationTable evaluate_relations(const MeasurementModel& model, const JointState& initial);

}  // namespace edlab
