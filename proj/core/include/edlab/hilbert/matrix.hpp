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

#include "edlab/hilbert/state.hpp"

namespace edlab {

/// Largest joint dimension the dense oracle accepts.
inline constexpr std::size_t kMaxOracleDimension = 4096;

/// Dense complex matrix on a small discretized space, in the orthonormal
/// coefficient basis c_j = psi_j * sqrt(spacing). Used as an exact oracle
/// for checks that the grid path can only approximate.
class MatrixOperator {
 public:
  /// Throws ValidationError when `entries` is not square.
  explicit MatrixOperator(Eigen::MatrixXcd entries);
  /// Same, and additionally requires max |A - A^dagger| < 1e-12 * max(1, max |A|).
  static MatrixOperator observable(Eigen::MatrixXcd entries);

  std::size_t dimension() const { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  /// max |A - A^dagger| over all entries.
  double hermiticity_residual() const;

 private:
  Eigen::MatrixXcd entries_;
};

MatrixOperator identity_matrix(std::size_t dimension);
/// Q on the grid points.
MatrixOperator position_matrix(const GridSpec& grid);
/// P = F^dagger diag(p) F, assembled column by column from the same
/// transform path the grid operators use.
MatrixOperator momentum_matrix(const GridSpec& grid);
/// a (x) b with factor a major, matching the joint row-major layout.
MatrixOperator kron(const MatrixOperator& a, const MatrixOperator& b);

Eigen::VectorXcd to_coefficients(const StateVector& state);
Eigen::VectorXcd to_coefficients(const JointVector& vector);
StateVector state_from_coefficients(const GridSpec& grid, const Eigen::VectorXcd& coefficients);
JointVector joint_from_coefficients(const GridSpec& grid_a, const GridSpec& grid_b, FactorLayout layout,
                                    const Eigen::VectorXcd& coefficients);

/// exp(-i * duration * h / hbar) applied to `state`.
///
/// Uses a Lanczos (Krylov) approximation of the matrix exponential with
/// adaptive sub-steps and a local error target of 1e-13, and switches to a
/// sparse matrix-vector product when h is mostly zeros. The output norm
/// equals the input norm to rounding. Throws ValidationError when h is
/// not Hermitian or its dimension exceeds kMaxOracleDimension.
Eigen::VectorXcd matrix_oracle_evolve(const MatrixOperator& h, double duration, const Eigen::VectorXcd& state,
                                      double hbar = 1.0);

/// Full propagator by eigendecomposition; meant for small dimensions and
/// on-demand unitarity checks.
Eigen::MatrixXcd dense_propagator(const MatrixOperator& h, double duration, double hbar = 1.0);

/// max |U^dagger U - I|.
double unitarity_residual(const Eigen::MatrixXcd& u);

}  // namespace edlab
