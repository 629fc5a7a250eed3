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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edlab/hilbert/state.hpp"
#include "edlab/models/model.hpp"

namespace edlab::app {

inline constexpr const char* kScenarioSchema = "edlab.scenario/1";

/// Input state(s) fed to the model: one Gaussian plus optional seeded
/// random localized states. For particle-pair models mean_q and mean_p set
/// the centre-of-mass position and momentum.
struct InputSpec {
  double sigma = 1.0;
  double mean_q = 0.0;
  double mean_p = 0.0;
  std::size_t random_states = 0;
};

struct SweepAxis {
  std::string param;
  std::vector<double> values;
};

/// One scenario: model, grid, inputs, optional sweep and output settings.
/// Precedence: built-in defaults < config file < command-line flags.
struct ScenarioConfig {
  std::string scenario = "von-neumann";  // model kind name
  std::size_t grid_n = 512;
  double grid_length = 40.0;
  double hbar = 1.0;
  std::optional<double> probe_sigma;  // default 0.5 (von-neumann, zero-coupling) or 1.0 (ozawa)
  double coupling = 1.0;
  double alpha = 0.2;          // pair relative width (epr)
  double sigma_center = 1.0;   // pair centre-of-mass width (epr)
  double readout_width = 0.0;  // epr meter resolution
  InputSpec input;
  std::optional<SweepAxis> sweep;
  std::string format = "json";  // json | csv
  std::string out;              // empty: standard output
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

/// Parameters a sweep axis may name.
const std::vector<std::string>& sweep_parameters();

/// Parses a scenario document. Throws ValidationError naming the line
/// (syntax errors) or the field path (unknown keys, wrong types, bad
/// values).
ScenarioConfig parse_config(const std::string& text, const std::string& origin = "config");
ScenarioConfig load_config(const std::string& path);
/// Canonical JSON form (stable key order), as embedded in reports.
std::string config_to_json(const ScenarioConfig& config);

/// Checks value ranges and builds the model and input states once so the
/// localization guards fire before any work starts.
void validate(const ScenarioConfig& config);

/// Sets the named sweep parameter; throws ValidationError for unknown names.
void apply_parameter(ScenarioConfig& config, const std::string& param, double value);

ModelKind scenario_kind(const ScenarioConfig& config);
double probe_sigma(const ScenarioConfig& config);
GridSpec scenario_grid(const ScenarioConfig& config);
MeasurementModel build_scenario_model(const ScenarioConfig& config);

/// A labelled initial state (object (x) probe, or the particle pair).
struct LabelledState {
  std::string label;
  JointState state;
};
/// The Gaussian input followed by input.random_states seeded random states.
std::vector<LabelledState> scenario_states(const ScenarioConfig& config, const MeasurementModel& model);

}  // namespace edlab::app
