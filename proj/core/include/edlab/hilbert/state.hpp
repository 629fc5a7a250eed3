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

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

#include "edlab/hilbert/grid.hpp"

namespace edlab {

using cplx = std::complex<double>;

/// Tolerance on the squared norm of anything claiming to be a state.
inline constexpr double kNormTolerance = 1e-12;

/// What the two tensor factors of a joint space stand for. Observables carry
/// the same label so (Q, P) coefficients can never land on the wrong factor.
enum class FactorLayout {
  kObjectProbe,   // factor A: measured object (Q, P); factor B: probe (Q0, P0)
  kParticlePair,  // factor A: particle 1 (Q1, P1); factor B: particle 2 (Q2, P2)
};

/// Normalized wavefunction sampled on a grid. Amplitudes are function values
/// psi(x_j), so the norm is sum |psi_j|^2 * spacing.
class StateVector {
 public:
  /// Throws ValidationError unless the amplitudes are already normalized.
  static StateVector from_amplitudes(GridSpec grid, std::vector<cplx> amplitudes);
  /// Rescales to unit norm; throws ValidationError on a zero or non-finite norm.
  static StateVector normalized(GridSpec grid, std::vector<cplx> amplitudes);

  const GridSpec& grid() const { return grid_; }
  std::span<const cplx> amplitudes() const { return amplitudes_; }
  double squared_norm() const;
  /// |psi_j|^2 * spacing for every grid point.
  std::vector<double> probabilities() const;

 private:
  StateVector(GridSpec grid, std::vector<cplx> amplitudes);

  GridSpec grid_;
  std::vector<cplx> amplitudes_;
};

double squared_norm(const GridSpec& grid, std::span<const cplx> amplitudes);
/// <a|b> on one grid; both spans must have grid.n_points() entries.
cplx inner(const GridSpec& grid, std::span<const cplx> a, std::span<const cplx> b);
cplx inner(const StateVector& a, const StateVector& b);

/// Element of L2(grid_a) (x) L2(grid_b) with no normalization requirement,
/// stored row-major: amplitude (i_a, i_b) sits at i_a * n_b + i_b.
class JointVector {
 public:
  JointVector(GridSpec grid_a, GridSpec grid_b, FactorLayout layout, std::vector<cplx> amplitudes);
  static JointVector zeros(GridSpec grid_a, GridSpec grid_b, FactorLayout layout);

  const GridSpec& grid_a() const { return grid_a_; }
  const GridSpec& grid_b() const { return grid_b_; }
  FactorLayout layout() const { return layout_; }
  std::size_t rows() const { return grid_a_.n_points(); }
  std::size_t cols() const { return grid_b_.n_points(); }
  /// Quadrature weight of one joint grid cell.
  double cell() const { return grid_a_.spacing() * grid_b_.spacing(); }

  std::span<const cplx> amplitudes() const { return amplitudes_; }
  std::span<cplx> mutable_amplitudes() { return amplitudes_; }
  cplx& at(std::size_t ia, std::size_t ib) { return amplitudes_[ia * cols() + ib]; }
  const cplx& at(std::size_t ia, std::size_t ib) const { return amplitudes_[ia * cols() + ib]; }

  double squared_norm() const;
  bool same_space(const JointVector& other) const;

  JointVector& operator+=(const JointVector& other);
  JointVector& operator-=(const JointVector& other);
  JointVector& operator*=(cplx factor);

 private:
  GridSpec grid_a_;
  GridSpec grid_b_;
  FactorLayout layout_;
  std::vector<cplx> amplitudes_;
};

JointVector operator-(JointVector a, const JointVector& b);
/// Throws ValidationError when the vectors live on different spaces.
cplx inner(const JointVector& a, const JointVector& b);

/// Normalized joint wavefunction.
class JointState {
 public:
  /// Throws ValidationError unless squared norm is 1 within kNormTolerance.
  static JointState from_vector(JointVector vector);
  static JointState normalized(JointVector vector);

  const JointVector& vector() const { return vector_; }
  const GridSpec& grid_a() const { return vector_.grid_a(); }
  const GridSpec& grid_b() const { return vector_.grid_b(); }
  FactorLayout layout() const { return vector_.layout(); }
  std::span<const cplx> amplitudes() const { return vector_.amplitudes(); }

  /// Reduced position distribution of factor A (entry i is a probability
  /// mass, summing to 1).
  std::vector<double> marginal_a() const;
  std::vector<double> marginal_b() const;

 private:
  explicit JointState(JointVector vector) : vector_(std::move(vector)) {}

  JointVector vector_;
};

/// Outer product a (x) b.
JointState tensor(const StateVector& a, const StateVector& b, FactorLayout layout = FactorLayout::kObjectProbe);

/// Minimum-uncertainty wave packet
///   psi(x) ~ exp(-(x - mean_q)^2 / (4 sigma_q^2) + i mean_p (x - mean_q) / hbar)
/// normalized on the grid. Throws ValidationError when sigma_q < 4*spacing,
/// when mean_q +- 6 sigma_q leaves the grid, or when mean_p +- 6 sigma_p
/// leaves the momentum grid.
StateVector gaussian_state(const GridSpec& grid, double mean_q, double mean_p, double sigma_q);

/// Debug dump: header "position,re,im" then one row per grid point.
void write_csv(std::ostream& out, const StateVector& state);
/// Debug dump: header "position_a,position_b,re,im".
void write_csv(std::ostream& out, const JointState& state);

}  // namespace edlab
