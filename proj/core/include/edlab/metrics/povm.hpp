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
#include <cstddef>
#include <vector>

#include "edlab/hilbert/matrix.hpp"
#include "edlab/hilbert/state.hpp"
#include "edlab/models/model.hpp"

namespace edlab {

struct PovmBin {
  double value = 0.0;  // meter reading
  MatrixOperator effect{Eigen::MatrixXcd()};
};

/// Effects of a measurement on the object space, in the coefficient basis.
struct Povm {
  std::vector<PovmBin> bins;
  std::size_t dimension = 0;
  double completeness_residual = 0.0;  // max |sum_x Pi(x) - I|
  double min_eigenvalue = 0.0;         // smallest eigenvalue over all effects
};

/// Largest bins * dimension^2 a POVM may hold.
inline constexpr std::size_t kMaxPovmEntries = std::size_t{1} << 23;

/// Builds the POVM a measurement induces on the object.
///
/// Object-probe models: propagates e_q (x) probe for every basis vector of
/// `object_grid` and reads the probe position. Particle-pair models: the
/// object space is object_grid (x) object_grid and Pi(x) = diag K(x - q2).
/// Throws ValidationError when the model has no propagator, the dimension
/// exceeds kMaxOracleDimension or the bins would exceed kMaxPovmEntries;
/// ConsistencyError when an effect has an eigenvalue below -1e-10 or the
/// completeness residual exceeds 1e-8.
Povm extract_povm(const MeasurementModel& model, const GridSpec& object_grid);

/// Measured observable the POVM approximates: Q on the object grid, or
/// Q1 (x) I for particle pairs.
MatrixOperator povm_target(const MeasurementModel& model, const GridSpec& object_grid);

struct PovmDistance {
  double distance = 0.0;
  double intrinsic = 0.0;  // <c| sum x^2 Pi - (sum x Pi)^2 |c>
  double bias = 0.0;       // || (sum x Pi - A) c ||^2
};

/// d(Pi, A) on the state with coefficients `c`. Throws ConsistencyError
/// when the intrinsic term is below -1e-10 (the POVM is broken).
PovmDistance povm_distance(const Povm& povm, const MatrixOperator& target, const Eigen::VectorXcd& c);
PovmDistance povm_distance(const Povm& povm, const MatrixOperator& target, const StateVector& state);
PovmDistance povm_distance(const Povm& povm, const MatrixOperator& target, const JointState& state);

}  // namespace edlab
