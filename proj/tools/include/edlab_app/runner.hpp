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

#include <string>
#include <vector>

#include "edlab/inequalities/inequalities.hpp"
#include "edlab/metrics/povm.hpp"
#include "edlab_app/config.hpp"

namespace edlab::app {

struct StateResult {
  std::string label;
  RelationTable table;
};

struct ScenarioResult {
  std::string model_json;  // model description (edlab.model/1)
  std::string model_name;
  std::vector<StateResult> states;
};

/// Evaluates every metric and relation on every scenario state.
/// Deterministic for a given config (including seed).
ScenarioResult run_scenario(const ScenarioConfig& config);

struct SweepPoint {
  double value = 0.0;
  ScenarioResult result;
};

/// Direction of one reported column along the sweep (first state of each
/// point): "increasing", "decreasing", "constant" or "mixed".
struct Trend {
  std::string column;
  std::string direction;
};

struct SweepResult {
  std::string param;
  std::vector<SweepPoint> points;  // in sweep order
  std::vector<Trend> trends;
};

/// Runs one scenario per sweep value on up to config.workers threads.
/// Results are ordered by sweep index regardless of completion order.
/// Throws ValidationError for a missing or empty sweep.
SweepResult run_sweep(const ScenarioConfig& config);

/// Classifies a sequence as increasing, decreasing, constant or mixed
/// (relative tolerance 1e-12).
std::string trend_of(const std::vector<double>& values);

struct PovmResult {
  std::string model_json;
  Povm povm;
  std::vector<double> outcome_probabilities;  // <psi| Pi(x) |psi> for the Gaussian input
  PovmDistance distance;                      // d(Pi, Q) on the Gaussian input
  double epsilon = 0.0;                       // e(Q) on the same input
};

/// POVM of the scenario model on the scenario grid (probe and object
/// share the grid; particle pairs use grid (x) grid).
PovmResult run_povm(const ScenarioConfig& config);

}  // namespace edlab::app
