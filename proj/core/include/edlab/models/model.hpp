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
#include <optional>
#include <string>

#include "edlab/hilbert/matrix.hpp"
#include "edlab/hilbert/observable.hpp"
#include "edlab/hilbert/random_state.hpp"
#include "edlab/hilbert/state.hpp"

namespace edlab {

enum class ModelKind { kVonNeumann, kZeroCoupling, kOzawa, kEpr, kCustom };

/// How (and whether) a model propagates joint wavefunctions.
enum class PropagatorKind {
  kNone,               // Heisenberg picture only
  kIdentity,           // no interaction during the measurement
  kTranslationKernel,  // Psi(q, y) -> Psi(q, y - k q)
  kPointTransform,     // |q, q0> -> |q + q0, q> on identical grids
};

/// Stable lowercase identifiers used in files and on the command line:
/// "von-neumann", "zero-coupling", "ozawa", "epr", "custom".
std::string to_string(ModelKind kind);
/// Throws ValidationError for unknown names.
ModelKind model_kind_from_string(const std::string& name);
std::string to_string(PropagatorKind kind);

/// Heisenberg-picture outputs of the measuring interaction, expressed in the
/// input canonical operators.
struct IoMap {
  LinearObservable meter_out;     // M(dt): the meter after the interaction
  LinearObservable momentum_out;  // P(dt): the measured object's momentum after the interaction
};

/// Parameters of a Gaussian probe, kept so models can be serialized and
/// rebuilt exactly.
struct GaussianParams {
  std::size_t n_points = 512;
  double length = 40.0;
  double hbar = 1.0;
  double mean_q = 0.0;
  double mean_p = 0.0;
  double sigma_q = 0.5;

  GridSpec grid() const { return GridSpec(n_points, length, hbar); }
  StateVector state() const { return gaussian_state(grid(), mean_q, mean_p, sigma_q); }
  friend bool operator==(const GaussianParams&, const GaussianParams&) = default;
};

/// Linear canonical transformation z' = S z + shift on z = (Q, P, Q0, P0)
/// (or (Q1, P1, Q2, P2) for particle pairs). Row i holds the input
/// coefficients of output i.
struct SymplecticMap {
  Eigen::Matrix4d matrix = Eigen::Matrix4d::Identity();
  Eigen::Vector4d shift = Eigen::Vector4d::Zero();

  /// The canonical form J with J(0,1) = J(2,3) = 1.
  static Eigen::Matrix4d form();
  /// max |S^T J S - J|.
  double symplectic_residual() const;
  /// Output row i as an observable.
  LinearObservable row(int i, FactorLayout layout) const;
};

/// A measuring process: object, apparatus (probe state plus meter) and the
/// unitary interaction between them, summarized by its Heisenberg-picture
/// input-output map. Immutable after construction; build through the
/// factory functions below.
class MeasurementModel {
 public:
  const std::string& name() const { return name_; }
  ModelKind kind() const { return kind_; }
  FactorLayout layout() const { return layout_; }
  /// Probe state; empty for the particle-pair model, whose apparatus reads
  /// particle 2 directly.
  const std::optional<StateVector>& probe() const { return probe_; }
  const std::optional<GaussianParams>& probe_params() const { return probe_params_; }
  /// Which operator of factor B is read out (Q0, or Q2 for particle pairs).
  const LinearObservable& meter() const { return meter_; }
  const IoMap& io_map() const { return io_map_; }
  /// 1 for object-probe models, 2 when the measured object is a particle pair.
  int object_arity() const { return layout_ == FactorLayout::kParticlePair ? 2 : 1; }
  /// Dimensionless interaction strength K*dt.
  double coupling() const { return coupling_; }
  double hbar() const { return hbar_; }
  /// Width of the optional finite-resolution readout of Q2 (0 = exact).
  double readout_width() const { return readout_width_; }
  PropagatorKind propagator_kind() const { return propagator_; }
  bool has_propagator() const { return propagator_ != PropagatorKind::kNone; }
  const SymplecticMap& symplectic() const { return symplectic_; }

  /// psi (x) xi. Throws ValidationError for the particle-pair model (its
  /// input is already a joint state) or when grids do not share hbar.
  JointState prepare(const StateVector& object) const;

  /// U applied to a joint input state. Throws ValidationError when the
  /// model has no propagator, when the layout differs, or when the grids do
  /// not meet the propagator's requirements.
  JointState propagate(const JointState& initial) const;

 private:
  friend MeasurementModel build_von_neumann(const StateVector&, double);
  friend MeasurementModel build_zero_coupling(const StateVector&);
  friend MeasurementModel build_ozawa_contractive(const StateVector&, double);
  friend MeasurementModel build_epr_indirect(double, double);
  friend MeasurementModel build_custom_model(const std::string&, const StateVector&, const IoMap&);
  friend MeasurementModel with_probe_params(MeasurementModel, const GaussianParams&);

  MeasurementModel() = default;
  void finalize();

  std::string name_;
  ModelKind kind_ = ModelKind::kCustom;
  FactorLayout layout_ = FactorLayout::kObjectProbe;
  std::optional<StateVector> probe_;
  std::optional<GaussianParams> probe_params_;
  LinearObservable meter_ = LinearObservable::position_b();
  IoMap io_map_;
  double coupling_ = 1.0;
  double hbar_ = 1.0;
  double readout_width_ = 0.0;
  PropagatorKind propagator_ = PropagatorKind::kNone;
  SymplecticMap symplectic_;
};

/// H = K Q (x) P0 for duration dt with K*dt = coupling:
/// M(dt) = Q0 + k Q, P(dt) = P - k P0. The propagator shifts the probe
/// wavefunction by k q: an index roll when k q is a whole number of probe
/// steps, band-limited (transform) interpolation otherwise. Throws
/// ValidationError unless the probe has negligible mass near the grid edges.
MeasurementModel build_von_neumann(const StateVector& probe, double coupling = 1.0);

/// No interaction: M(dt) = Q0, P(dt) = P, identity propagator.
MeasurementModel build_zero_coupling(const StateVector& probe);

/// Contractive-state measurement with meter Q0. At coupling 1 the
/// input-output map is M(dt) = Q, P(dt) = P0, realized exactly on the grid
/// by the point transform |q, q0> -> |q + q0, q> (object and probe grids
/// must coincide). Other couplings have a Heisenberg-picture map only.
MeasurementModel build_ozawa_contractive(const StateVector& probe, double coupling = 1.0);

/// Indirect measurement of Q1 by an exact readout of Q2 on a particle pair:
/// M(dt) = Q2, P1(dt) = P1, identity propagator. readout_width > 0 smears
/// the outcome distribution with a normalized Gaussian kernel of that width;
/// it affects outcome ensembles and POVMs only.
MeasurementModel build_epr_indirect(double readout_width = 0.0, double hbar = 1.0);

/// Model given by its two io_map rows. The remaining rows are completed
/// symplectically; throws ValidationError when [M(dt), P(dt)] != 0 or no
/// completion exists. Has no propagator.
MeasurementModel build_custom_model(const std::string& name, const StateVector& probe, const IoMap& io_map);

/// Records the Gaussian parameters the probe was built from (used for
/// serialization). Throws ValidationError when they do not reproduce the
/// probe's grid.
MeasurementModel with_probe_params(MeasurementModel model, const GaussianParams& params);

/// Symplectic completion of the model's Heisenberg map. Rows 1 and 2
/// reproduce io_map().momentum_out and io_map().meter_out. Throws
/// ConsistencyError when S^T J S = J fails by more than 1e-12.
SymplecticMap symplectic_map(const MeasurementModel& model);

/// Solves for rows 0 and 3 given P(dt) (row 1) and M(dt) (row 2) so that
/// the result is symplectic. Throws ValidationError when impossible.
SymplecticMap complete_symplectic(const Eigen::Vector4d& momentum_row, const Eigen::Vector4d& meter_row);

/// Interaction Hamiltonian on the joint coefficient space for dt = 1, so
/// that U = exp(-i H / hbar). For the Ozawa model the products QP and Q0P0
/// use the symmetric ordering (QP + PQ)/2 and the probe parity applied by
/// the model's propagator is not part of H. Throws ValidationError when the
/// joint dimension exceeds kMaxOracleDimension or the model has no
/// Hamiltonian, and ConsistencyError when the result is not Hermitian
/// within 1e-10 * max(1, max |H|).
MatrixOperator hamiltonian_matrix(const MeasurementModel& model, const GridSpec& grid_a, const GridSpec& grid_b);

/// The Ozawa Hamiltonian with QP and Q0P0 discretized literally as matrix
/// products. On a finite grid [Q, P] is not a multiple of the identity, so
/// this matrix is not Hermitian; kept to document why the symmetric form
/// is used.
MatrixOperator ozawa_literal_hamiltonian_matrix(double coupling, const GridSpec& grid_a, const GridSpec& grid_b);

/// Unitary that reflects the probe coordinate, |q0> -> |-q0>, on the
/// coefficient space of factor B (periodic grid: index j -> (n - j) mod n).
MatrixOperator probe_parity_matrix(const GridSpec& grid);

/// Correlated particle pair
///   Psi(q1, q2) ~ exp(-R^2/(4 s^2) - r^2/(4 alpha^2) + i (p_R R + p_r r)/hbar),
/// with R = (q1 + q2)/2 - center and r = q1 - q2, so that
/// <(Q1 - Q2)^2> = alpha^2 and sigma(R) = s.
struct PairStateParams {
  double sigma_center = 1.0;
  double alpha = 0.2;
  double center = 0.0;
  double momentum_center = 0.0;    // conjugate to R (total momentum)
  double momentum_relative = 0.0;  // conjugate to r
};

/// Throws ValidationError when alpha < 1.2 * spacing (the relative
/// coordinate is unresolved), when either particle's position reaches
/// within 6 widths of the grid edge, or when the momentum spread reaches
/// within 6 widths of the momentum grid edge.
JointState epr_correlated_state(const GridSpec& grid, const PairStateParams& params);

/// Random pair with sigma_center in [0.7, 1.3], alpha in [0.15, 0.8],
/// |center| <= 2 and momenta up to 1 in magnitude.
JointState random_pair_state(const GridSpec& grid, Rng& rng);

/// Fraction of |psi|^2 in the outer 1/16 of the position grid plus the
/// fraction of the momentum distribution in the outer 1/16 of the momentum
/// grid.
double edge_mass(const StateVector& state);

}  // namespace edlab
