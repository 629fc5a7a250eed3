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

#include <cstddef>
#include <variant>
#include <vector>

#include "edlab/hilbert/state.hpp"
#include "edlab/models/model.hpp"

namespace edlab {

/// Post-measurement state of the object given one meter reading: a
/// single-particle state for object-probe models, or the (conditioned)
/// pair state for particle-pair models.
using ConditionalState = std::variant<StateVector, JointState>;

struct OutcomeBin {
  double value = 0.0;   // meter reading (bin centre)
  double weight = 0.0;  // probability of the reading
  ConditionalState state;
};

struct OutcomeEnsemble {
  std::vector<OutcomeBin> bins;
  double bin_width = 0.0;
  /// Sum of the kept weights (1 up to the weight of dropped empty bins).
  double total_weight = 0.0;
};

/// Bins with less probability than this are dropped from ensembles.
inline constexpr double kEmptyBinWeight = 1e-24;
/// Largest bins * amplitudes a particle-pair ensemble may hold.
inline constexpr std::size_t kMaxPairEnsembleAmplitudes = std::size_t{1} << 22;

/// Splits the post-measurement state by meter reading.
///
/// Object-probe models propagate `initial` and condition on the probe
/// position grid. Particle-pair models read Q2 through a Gaussian kernel
/// of width readout_width() (exact when it is zero) and keep the
/// conditioned pair state. Throws ValidationError when the model has no
/// propagator (use the Heisenberg-picture metrics instead), when the
/// layouts differ, or when a pair ensemble would exceed
/// kMaxPairEnsembleAmplitudes.
OutcomeEnsemble outcome_ensemble(const MeasurementModel& model, const JointState& initial);

/// Circulant readout kernel on a grid: weights K(d) for index offsets
/// d = 0..n-1, summing to 1. Width zero gives a Kronecker delta.
std::vector<double> readout_kernel(const GridSpec& grid, double width);

/// Second moments of the conditional momentum states and the witnesses
/// built from them.
struct MixtureReport {
  double p_out_squared = 0.0;       // <P(dt)^2> on the initial state
  double mixture_p_squared = 0.0;   // sum_x w_x <P^2>_x
  double relative_residual = 0.0;   // |difference| / max(p_out_squared, 1e-300)
  double mean_conditional_variance = 0.0;  // sum_x w_x s_x(P)^2
  bool variance_bound_holds = false;       // p_out_squared >= mean_conditional_variance
  double min_conditional_variance = 0.0;   // min_x s_x(P)^2
  bool witness_found = false;              // some s_x(P)^2 <= p_out_squared
  double witness_value = 0.0;              // reading attaining the minimum
  double max_conditional_sigma_q = 0.0;    // max_x s_x(Q)
  double epsilon = 0.0;                    // e(Q) of the measurement
  bool equipredictive = false;             // every s_x(Q) <= e(Q)
  std::size_t bins = 0;
};

/// Evaluates the mixture decomposition of <P(dt)^2> over meter readings.
/// Requires [M(dt), P(dt)] = 0 (ConsistencyError otherwise).
MixtureReport verify_mixture_identity(const MeasurementModel& model, const JointState& initial);

}  // namespace edlab
