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

// edlab: command-line front end for error-disturbance scenarios.
//
// Exit codes: 0 success (a violated uncertainty relation is a result, not
// an error); 1 invalid configuration or arguments; 2 internal consistency
// failure; 3 `check` found a failing invariant.

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "edlab/error.hpp"
#include "edlab_app/check_suite.hpp"
#include "edlab_app/config.hpp"
#include "edlab_app/report_io.hpp"
#include "edlab_app/runner.hpp"

namespace {

using edlab::app::ScenarioConfig;

// Flag values; only flags given on the command line override the config.
struct Flags {
  std::string config_path;
  std::string scenario;
  std::size_t grid_n = 0;
  double grid_length = 0.0;
  double hbar = 0.0;
  double probe_sigma = 0.0;
  double coupling = 0.0;
  double alpha = 0.0;
  double readout_width = 0.0;
  double input_sigma = 0.0;
  double input_mean_q = 0.0;
  double input_mean_p = 0.0;
  std::size_t random_states = 0;
  std::string sweep_param;
  std::string sweep_values;
  std::uint64_t seed = 0;
  std::string format;
  std::string out;
  unsigned workers = 0;
};

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw edlab::ValidationError("--sweep-values: '" + item + "' is not a number");
    values.push_back(v);
  }
  return values;
}

struct Options {
  std::vector<std::pair<CLI::Option*, std::function<void(ScenarioConfig&)>>> overrides;
};

void add_scenario_flags(CLI::App* cmd, Flags& f, Options& o, bool sweep) {
  auto add = [&](CLI::Option* opt, std::function<void(ScenarioConfig&)> apply) { o.overrides.emplace_back(opt, apply); };
  cmd->add_option("--config", f.config_path, "Scenario JSON file (flags override its fields)");
  add(cmd->add_option("--scenario", f.scenario, "Model: von-neumann, zero-coupling, ozawa, epr"),
      [&f](ScenarioConfig& c) { c.scenario = f.scenario; });
  add(cmd->add_option("--grid-n", f.grid_n, "Grid points per factor (default 512)"),
      [&f](ScenarioConfig& c) { c.grid_n = f.grid_n; });
  add(cmd->add_option("--grid-length", f.grid_length, "Grid length (default 40)"),
      [&f](ScenarioConfig& c) { c.grid_length = f.grid_length; });
  add(cmd->add_option("--hbar", f.hbar, "Reduced Planck constant (default 1)"),
      [&f](ScenarioConfig& c) { c.hbar = f.hbar; });
  add(cmd->add_option("--probe-sigma", f.probe_sigma, "Probe position width (default 0.5; ozawa 1.0)"),
      [&f](ScenarioConfig& c) { c.probe_sigma = f.probe_sigma; });
  add(cmd->add_option("--coupling", f.coupling, "Coupling strength K*dt (default 1)"),
      [&f](ScenarioConfig& c) { c.coupling = f.coupling; });
  add(cmd->add_option("--alpha", f.alpha, "EPR relative width (default 0.2)"),
      [&f](ScenarioConfig& c) { c.alpha = f.alpha; });
  add(cmd->add_option("--readout-width", f.readout_width, "EPR meter resolution (default 0)"),
      [&f](ScenarioConfig& c) { c.readout_width = f.readout_width; });
  add(cmd->add_option("--input-sigma", f.input_sigma, "Gaussian input width (default 1)"),
      [&f](ScenarioConfig& c) { c.input.sigma = f.input_sigma; });
  add(cmd->add_option("--input-mean-q", f.input_mean_q, "Gaussian input mean position"),
      [&f](ScenarioConfig& c) { c.input.mean_q = f.input_mean_q; });
  add(cmd->add_option("--input-mean-p", f.input_mean_p, "Gaussian input mean momentum"),
      [&f](ScenarioConfig& c) { c.input.mean_p = f.input_mean_p; });
  add(cmd->add_option("--random-states", f.random_states, "Extra seeded random input states"),
      [&f](ScenarioConfig& c) { c.input.random_states = f.random_states; });
  add(cmd->add_option("--seed", f.seed, "Seed for random input states (default 1)"),
      [&f](ScenarioConfig& c) { c.seed = f.seed; });
  add(cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv"})),
      [&f](ScenarioConfig& c) { c.format = f.format; });
  add(cmd->add_option("--out", f.out, "Output file (default: standard output)"),
      [&f](ScenarioConfig& c) { c.out = f.out; });
  if (sweep) {
    add(cmd->add_option("--workers", f.workers, "Concurrent sweep points (default 1)"),
        [&f](ScenarioConfig& c) { c.workers = f.workers; });
    add(cmd->add_option("--sweep-param", f.sweep_param, "Parameter to sweep"),
        [&f](ScenarioConfig& c) {
          if (!c.sweep) c.sweep.emplace();
          c.sweep->param = f.sweep_param;
        });
    add(cmd->add_option("--sweep-values", f.sweep_values, "Sweep values (comma separated)"),
        [&f](ScenarioConfig& c) {
          if (!c.sweep) c.sweep.emplace();
          c.sweep->values = parse_values(f.sweep_values);
        });
  }
}

ScenarioConfig resolve(const Flags& f, const Options& o) {
  ScenarioConfig config = f.config_path.empty() ? ScenarioConfig{} : edlab::app::load_config(f.config_path);
  for (const auto& [opt, apply] : o.overrides) {
    if (opt->count() > 0) apply(config);
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edlab: error-disturbance uncertainty relations on discretized measurement models"};
  app.require_subcommand(1);

  Flags run_flags, sweep_flags, povm_flags;
  Options run_opts, sweep_opts, povm_opts;
  auto* run = app.add_subcommand("run", "Evaluate metrics and relations for one scenario");
  add_scenario_flags(run, run_flags, run_opts, false);
  auto* sweep = app.add_subcommand("sweep", "Evaluate a scenario along one parameter axis");
  add_scenario_flags(sweep, sweep_flags, sweep_opts, true);
  auto* povm = app.add_subcommand("povm", "Dump the POVM a model induces on a small grid");
  add_scenario_flags(povm, povm_flags, povm_opts, false);

  std::string check_format = "text";
  std::string check_out;
  bool acceptance_only = false;
  auto* check = app.add_subcommand("check", "Run the acceptance criteria and invariant suite");
  check->add_option("--format", check_format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  check->add_option("--out", check_out, "Write the summary report here (json/csv)");
  check->add_flag("--acceptance-only", acceptance_only, "Run only the ten acceptance criteria");

  std::string models_format = "json";
  auto* models = app.add_subcommand("models", "Model registry");
  auto* list = models->add_subcommand("list", "List available models");
  list->add_option("--format", models_format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  models->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      const auto config = resolve(run_flags, run_opts);
      if (config.sweep) throw edlab::ValidationError("run: config has a sweep axis; use the sweep command");
      edlab::app::write_output(config.out,
                               edlab::app::scenario_report(config, edlab::app::run_scenario(config), config.format));
    } else if (sweep->parsed()) {
      const auto config = resolve(sweep_flags, sweep_opts);
      edlab::app::write_output(config.out,
                               edlab::app::sweep_report(config, edlab::app::run_sweep(config), config.format));
    } else if (povm->parsed()) {
      auto config = resolve(povm_flags, povm_opts);
      edlab::app::write_output(config.out, edlab::app::povm_report(config, edlab::app::run_povm(config), config.format));
    } else if (check->parsed()) {
      auto checks = edlab::app::acceptance_checks();
      if (!acceptance_only) {
        for (auto& c : edlab::app::invariant_checks()) checks.push_back(std::move(c));
      }
      const bool text = check_format == "text";
      const auto results = edlab::app::run_checks(checks, [text](const edlab::app::CheckResult& r) {
        if (text) std::cout << edlab::app::format_line(r) << std::endl;
      });
      if (!text) edlab::app::write_output(check_out, edlab::app::check_report(results, check_format));
      bool all = true;
      for (const auto& r : results) all = all && r.passed;
      if (text) std::cout << (all ? "all checks passed" : "some checks FAILED") << std::endl;
      return all ? 0 : 3;
    } else if (list->parsed()) {
      edlab::app::write_output("", edlab::app::models_report(models_format));
    }
  } catch (const edlab::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const edlab::ConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal failure: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
