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

#include "edlab/hilbert/observable.hpp"
#include "edlab/hilbert/state.hpp"
#include "edlab/models/model.hpp"

namespace edlab {

/// N(Q) = M(dt) - Q(0): how far the meter reading is from the measured
/// position (Q1 for particle pairs).
LinearObservable noise_operator(const MeasurementModel& model);

/// D(P) = P(dt) - P(0): the momentum change caused by the interaction.
LinearObservable disturbance_operator(const MeasurementModel& model);

/// Both computations of a root-mean-square quantity, as squares.
struct RmsRoutes {
  double moment;     // <X^2> with X applied twice
  double geometric;  // ||A psi - B psi||^2 with the two sides applied separately
};

/// e(Q)^2 routes: <N(Q)^2> and ||M(dt) psi - Q(0) psi||^2.
RmsRoutes rms_error_routes(const MeasurementModel& model, const JointState& initial);
/// n(P)^2 routes: <D(P)^2> and ||P(dt) psi - P(0) psi||^2.
RmsRoutes rms_disturbance_routes(const MeasurementModel& model, const JointState& initial);

/// e(Q) on the initial joint state (psi (x) xi, or the particle pair).
/// Throws ConsistencyError when the two routes differ by more than
/// 1e-8 * max(1, e^2).
double rms_error(const MeasurementModel& model, const JointState& initial);
double rms_error(const MeasurementModel& model, const StateVector& input);
/// n(P); same contract as rms_error.
double rms_disturbance(const MeasurementModel& model, const JointState& initial);
double rms_disturbance(const MeasurementModel& model, const StateVector& input);

/// Noise, disturbance and the input/output spreads of one measurement.
struct NoiseDisturbanceReport {
  double epsilon = 0.0;       // e(Q)
  double eta = 0.0;           // n(P)
  double sigma_q_in = 0.0;    // s(Q(0))
  double sigma_p_in = 0.0;    // s(P(0))
  double sigma_m_out = 0.0;   // s(M(dt))
  double sigma_p_out = 0.0;   // s(P(dt))
  double mean_shift_m = 0.0;  // <M(dt)> - <Q(0)>
  double mean_shift_p = 0.0;  // <P(dt)> - <P(0)>
  /// Slack of |s(M(dt)) - s(Q(0))| <= e + |mean_shift_m| (non-negative).
  double deviation_slack_m = 0.0;
  /// Slack of |s(P(dt)) - s(P(0))| <= n + |mean_shift_p| (non-negative).
  double deviation_slack_p = 0.0;
};

/// Evaluates every field. Throws ConsistencyError when a deviation bound
/// fails by more than 1e-8 (the bounds are theorems; a failure means the
/// numerics are broken).
NoiseDisturbanceReport evaluate_noise_disturbance(const MeasurementModel& model, const JointState& initial);
NoiseDisturbanceReport evaluate_noise_disturbance(const MeasurementModel& model, const StateVector& input);

/// Both sides of the rest-mass identity n(P)^2 = <P(dt)^2>, which is exact
/// for a momentum eigenstate with p = 0.
struct RestMassReport {
  double momentum_width = 0.0;
  double eta_squared = 0.0;
  double p_out_squared = 0.0;
  double residual = 0.0;  // |eta_squared - p_out_squared|
};

/// Input for the rest-mass protocol: a Gaussian with <P> = 0 and momentum
/// spread `momentum_width`, on a grid wide enough to hold it (length
/// >= 16 hbar/(2 width), spacing <= 0.25).
StateVector rest_mass_input(double momentum_width, double hbar = 1.0);

/// Evaluates both sides on rest_mass_input(momentum_width) (x) probe. The
/// residual shrinks with the width; the identity is only exact in the
/// non-normalizable limit. Throws ValidationError for particle-pair models
/// and non-positive widths.
RestMassReport rest_mass_disturbance_identity(const MeasurementModel& model, double momentum_width);

}  // namespace edlab
