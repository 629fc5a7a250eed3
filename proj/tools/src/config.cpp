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

#include "edlab_app/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "edlab/error.hpp"
#include "edlab/hilbert/random_state.hpp"
#include "edlab/models/model_io.hpp"

namespace edlab::app {
namespace {

using nlohmann::ordered_json;

void require_keys(const ordered_json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ValidationError(where + "." + key + ": unknown key");
  }
}

template <typename T>
void read(const ordered_json& j, const char* key, T& target, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    target = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(where + "." + key + ": wrong type");
  }
}

void read_number(const ordered_json& j, const char* key, double& target, const std::string& where) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number()) throw ValidationError(where + "." + key + ": expected a number");
  target = j.at(key).get<double>();
}

void read_count(const ordered_json& j, const char* key, std::size_t& target, const std::string& where) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number_unsigned()) throw ValidationError(where + "." + key + ": expected a non-negative integer");
  target = j.at(key).get<std::size_t>();
}

void require_positive(double value, const std::string& field) {
  if (!(value > 0.0) || !std::isfinite(value)) throw ValidationError(field + ": must be positive and finite");
}

}  // namespace

const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> params = {"alpha",       "probe-sigma",  "input-sigma",  "input-mean-q",
                                                  "input-mean-p", "coupling",    "readout-width", "sigma-center"};
  return params;
}

ScenarioConfig parse_config(const std::string& text, const std::string& origin) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // nlohmann reports a byte offset; translate it to a line number.
    const auto offset = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n');
    throw ValidationError(origin + ":" + std::to_string(line) + ": JSON syntax error: " + e.what());
  }
  require_keys(j, {"schema", "scenario", "grid", "model", "input", "sweep", "output", "seed", "workers"}, origin);
  if (j.contains("schema") && j.at("schema") != kScenarioSchema) {
    throw ValidationError(origin + ".schema: expected \"" + std::string(kScenarioSchema) + "\"");
  }
  ScenarioConfig c;
  read(j, "scenario", c.scenario, origin);
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    const std::string where = origin + ".grid";
    require_keys(g, {"n_points", "length", "hbar"}, where);
    read_count(g, "n_points", c.grid_n, where);
    read_number(g, "length", c.grid_length, where);
    read_number(g, "hbar", c.hbar, where);
  }
  if (j.contains("model")) {
    const auto& m = j.at("model");
    const std::string where = origin + ".model";
    require_keys(m, {"probe_sigma", "coupling", "alpha", "sigma_center", "readout_width"}, where);
    if (m.contains("probe_sigma")) {
      double s = 0.0;
      read_number(m, "probe_sigma", s, where);
      c.probe_sigma = s;
    }
    read_number(m, "coupling", c.coupling, where);
    read_number(m, "alpha", c.alpha, where);
    read_number(m, "sigma_center", c.sigma_center, where);
    read_number(m, "readout_width", c.readout_width, where);
  }
  if (j.contains("input")) {
    const auto& in = j.at("input");
    const std::string where = origin + ".input";
    require_keys(in, {"sigma", "mean_q", "mean_p", "random_states"}, where);
    read_number(in, "sigma", c.input.sigma, where);
    read_number(in, "mean_q", c.input.mean_q, where);
    read_number(in, "mean_p", c.input.mean_p, where);
    read_count(in, "random_states", c.input.random_states, where);
  }
  if (j.contains("sweep")) {
    const auto& s = j.at("sweep");
    const std::string where = origin + ".sweep";
    require_keys(s, {"param", "values"}, where);
    SweepAxis axis;
    read(s, "param", axis.param, where);
    if (!s.contains("values") || !s.at("values").is_array()) throw ValidationError(where + ".values: expected an array");
    for (const auto& v : s.at("values")) {
      if (!v.is_number()) throw ValidationError(where + ".values: expected numbers");
      axis.values.push_back(v.get<double>());
    }
    c.sweep = axis;
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    const std::string where = origin + ".output";
    require_keys(o, {"format", "path"}, where);
    read(o, "format", c.format, where);
    read(o, "path", c.out, where);
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ValidationError(origin + ".seed: expected a non-negative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("workers")) {
    if (!j.at("workers").is_number_unsigned()) throw ValidationError(origin + ".workers: expected a positive integer");
    c.workers = j.at("workers").get<unsigned>();
  }
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open config file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path);
}

std::string config_to_json(const ScenarioConfig& c) {
  ordered_json j;
  j["schema"] = kScenarioSchema;
  j["scenario"] = c.scenario;
  j["grid"] = {{"n_points", c.grid_n}, {"length", c.grid_length}, {"hbar", c.hbar}};
  j["model"] = {{"probe_sigma", probe_sigma(c)},
                {"coupling", c.coupling},
                {"alpha", c.alpha},
                {"sigma_center", c.sigma_center},
                {"readout_width", c.readout_width}};
  j["input"] = {{"sigma", c.input.sigma},
                {"mean_q", c.input.mean_q},
                {"mean_p", c.input.mean_p},
                {"random_states", c.input.random_states}};
  if (c.sweep) {
    j["sweep"] = {{"param", c.sweep->param}, {"values", c.sweep->values}};
  }
  j["output"] = {{"format", c.format}, {"path", c.out}};
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  return j.dump(2);
}

ModelKind scenario_kind(const ScenarioConfig& config) {
  const auto kind = model_kind_from_string(config.scenario);
  if (kind == ModelKind::kCustom) {
    throw ValidationError("scenario: custom models are library-only; choose von-neumann, zero-coupling, ozawa or epr");
  }
  return kind;
}

double probe_sigma(const ScenarioConfig& config) {
  if (config.probe_sigma) return *config.probe_sigma;
  return config.scenario == "ozawa" ? 1.0 : 0.5;
}

GridSpec scenario_grid(const ScenarioConfig& config) { return GridSpec(config.grid_n, config.grid_length, config.hbar); }

MeasurementModel build_scenario_model(const ScenarioConfig& config) {
  GaussianParams probe;
  probe.n_points = config.grid_n;
  probe.length = config.grid_length;
  probe.hbar = config.hbar;
  probe.sigma_q = probe_sigma(config);
  return build_model(scenario_kind(config), probe, config.coupling, config.readout_width);
}

std::vector<LabelledState> scenario_states(const ScenarioConfig& config, const MeasurementModel& model) {
  const auto grid = scenario_grid(config);
  std::vector<LabelledState> states;
  Rng rng(config.seed);
  if (model.layout() == FactorLayout::kParticlePair) {
    PairStateParams params;
    params.alpha = config.alpha;
    params.sigma_center = config.sigma_center;
    params.center = config.input.mean_q;
    params.momentum_center = config.input.mean_p;
    states.push_back({"pair", epr_correlated_state(grid, params)});
    for (std::size_t i = 0; i < config.input.random_states; ++i) {
      states.push_back({"random-" + std::to_string(i), random_pair_state(grid, rng)});
    }
    return states;
  }
  states.push_back(
      {"gaussian", model.prepare(gaussian_state(grid, config.input.mean_q, config.input.mean_p, config.input.sigma))});
  for (std::size_t i = 0; i < config.input.random_states; ++i) {
    states.push_back({"random-" + std::to_string(i), model.prepare(random_localized_state(grid, rng))});
  }
  return states;
}

void apply_parameter(ScenarioConfig& config, const std::string& param, double value) {
  if (param == "alpha") {
    config.alpha = value;
  } else if (param == "probe-sigma") {
    config.probe_sigma = value;
  } else if (param == "input-sigma") {
    config.input.sigma = value;
  } else if (param == "input-mean-q") {
    config.input.mean_q = value;
  } else if (param == "input-mean-p") {
    config.input.mean_p = value;
  } else if (param == "coupling") {
    config.coupling = value;
  } else if (param == "readout-width") {
    config.readout_width = value;
  } else if (param == "sigma-center") {
    config.sigma_center = value;
  } else {
    throw ValidationError("sweep.param: unknown parameter '" + param + "'");
  }
}

void validate(const ScenarioConfig& config) {
  scenario_kind(config);
  if (config.grid_n < GridSpec::kMinPoints) throw ValidationError("grid.n_points: must be at least 8");
  require_positive(config.grid_length, "grid.length");
  require_positive(config.hbar, "grid.hbar");
  require_positive(probe_sigma(config), "model.probe_sigma");
  require_positive(config.input.sigma, "input.sigma");
  require_positive(config.alpha, "model.alpha");
  require_positive(config.sigma_center, "model.sigma_center");
  if (!(config.readout_width >= 0.0)) throw ValidationError("model.readout_width: must be >= 0");
  if (!std::isfinite(config.coupling)) throw ValidationError("model.coupling: must be finite");
  if (config.format != "json" && config.format != "csv") throw ValidationError("output.format: expected json or csv");
  if (config.workers == 0) throw ValidationError("workers: must be at least 1");
  if (config.sweep) {
    if (config.sweep->values.empty()) throw ValidationError("sweep.values: empty sweep list");
    for (double v : config.sweep->values) {
      ScenarioConfig point = config;
      point.sweep.reset();
      apply_parameter(point, config.sweep->param, v);
      validate(point);
    }
    return;
  }
  const auto model = build_scenario_model(config);
  scenario_states(config, model);
}

}  // namespace edlab::app
