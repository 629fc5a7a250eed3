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

#include "edlab_app/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "edlab/error.hpp"
#include "edlab/hilbert/matrix.hpp"
#include "edlab/metrics/noise_disturbance.hpp"
#include "edlab/models/model_io.hpp"

namespace edlab::app {

ScenarioResult run_scenario(const ScenarioConfig& config) {
  validate(config);
  const auto model = build_scenario_model(config);
  ScenarioResult result;
  result.model_json = model_to_json(model);
  result.model_name = model.name();
  for (const auto& [label, state] : scenario_states(config, model)) {
    result.states.push_back({label, evaluate_relations(model, state)});
  }
  return result;
}

std::string trend_of(const std::vector<double>& values) {
  if (values.size() < 2) return "constant";
  bool up = false;
  bool down = false;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double scale = std::max({1e-300, std::abs(values[i]), std::abs(values[i - 1])});
    const double diff = values[i] - values[i - 1];
    if (diff > 1e-12 * scale) up = true;
    if (diff < -1e-12 * scale) down = true;
  }
  if (up && down) return "mixed";
  if (up) return "increasing";
  if (down) return "decreasing";
  return "constant";
}

SweepResult run_sweep(const ScenarioConfig& config) {
  if (!config.sweep) throw ValidationError("sweep: no sweep axis given (use --sweep-param and --sweep-values)");
  validate(config);
  const auto& axis = *config.sweep;
  SweepResult out;
  out.param = axis.param;
  out.points.resize(axis.values.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < axis.values.size(); i = next++) {
      try {
        ScenarioConfig point = config;
        point.sweep.reset();
        apply_parameter(point, axis.param, axis.values[i]);
        out.points[i] = {axis.values[i], run_scenario(point)};
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(config.workers, static_cast<unsigned>(axis.values.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  auto column = [&](auto getter) {
    std::vector<double> v;
    for (const auto& p : out.points) v.push_back(getter(p.result.states.front().table.metrics));
    return v;
  };
  out.trends = {
      {"epsilon", trend_of(column([](const NoiseDisturbanceReport& m) { return m.epsilon; }))},
      {"eta", trend_of(column([](const NoiseDisturbanceReport& m) { return m.eta; }))},
      {"sigma_q", trend_of(column([](const NoiseDisturbanceReport& m) { return m.sigma_q_in; }))},
      {"sigma_p", trend_of(column([](const NoiseDisturbanceReport& m) { return m.sigma_p_in; }))},
  };
  return out;
}

PovmResult run_povm(const ScenarioConfig& config) {
  validate(config);
  const auto model = build_scenario_model(config);
  const auto grid = scenario_grid(config);
  PovmResult out;
  out.model_json = model_to_json(model);
  out.povm = extract_povm(model, grid);
  const auto state = scenario_states(config, model).front().state;
  Eigen::VectorXcd c;
  if (model.layout() == FactorLayout::kParticlePair) {
    c = to_coefficients(state.vector());
  } else {
    // Object coefficients of the Gaussian input (the probe factor is fixed).
    c = to_coefficients(gaussian_state(grid, config.input.mean_q, config.input.mean_p, config.input.sigma));
  }
  for (const auto& bin : out.povm.bins) out.outcome_probabilities.push_back(c.dot(bin.effect.entries() * c).real());
  out.distance = povm_distance(out.povm, povm_target(model, grid), c);
  out.epsilon = rms_error(model, state);
  return out;
}

}  // namespace edlab::app
