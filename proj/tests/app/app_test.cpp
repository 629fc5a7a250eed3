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

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <string>

#include "edlab/error.hpp"
#include "edlab_app/config.hpp"
#include "edlab_app/report_io.hpp"
#include "edlab_app/runner.hpp"

namespace edlab::app {
namespace {

using nlohmann::json;

TEST(ConfigTest, DefaultsAndParse) {
  const auto c = parse_config(R"({"schema": "edlab.scenario/1", "scenario": "ozawa",
    "grid": {"n_points": 256, "length": 30}, "input": {"sigma": 0.8, "random_states": 2},
    "sweep": {"param": "input-sigma", "values": [0.5, 1]}, "seed": 7, "workers": 2})");
  EXPECT_EQ(c.scenario, "ozawa");
  EXPECT_EQ(c.grid_n, 256u);
  EXPECT_EQ(c.grid_length, 30.0);
  EXPECT_EQ(c.hbar, 1.0);
  EXPECT_EQ(c.input.sigma, 0.8);
  EXPECT_EQ(c.input.random_states, 2u);
  ASSERT_TRUE(c.sweep.has_value());
  EXPECT_EQ(c.sweep->values.size(), 2u);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(probe_sigma(c), 1.0);
  EXPECT_EQ(probe_sigma(ScenarioConfig{}), 0.5);
}

TEST(ConfigTest, RoundTripsThroughJson) {
  ScenarioConfig c;
  c.scenario = "epr";
  c.alpha = 0.1;
  c.sweep = SweepAxis{"alpha", {0.5, 0.2}};
  const auto back = parse_config(config_to_json(c));
  EXPECT_EQ(config_to_json(back), config_to_json(c));
}

TEST(ConfigTest, DiagnosticsNameLineOrField) {
  try {
    parse_config("{\n  \"seed\": 1,,\n}", "cfg");
    FAIL() << "no error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("cfg:2"), std::string::npos) << e.what();
  }
  try {
    parse_config(R"({"grid": {"n_pts": 4}})", "cfg");
    FAIL() << "no error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("cfg.grid.n_pts"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_config(R"({"seed": -1})"), ValidationError);
  EXPECT_THROW(parse_config(R"({"grid": {"length": "long"}})"), ValidationError);
  EXPECT_THROW(parse_config(R"({"schema": "edlab.scenario/2"})"), ValidationError);
}

TEST(ConfigTest, ValidationGuards) {
  ScenarioConfig c;
  c.input.sigma = 0.05;  // below the grid resolution margin
  EXPECT_THROW(validate(c), ValidationError);
  ScenarioConfig empty;
  empty.sweep = SweepAxis{"alpha", {}};
  EXPECT_THROW(validate(empty), ValidationError);
  ScenarioConfig unknown;
  unknown.sweep = SweepAxis{"temperature", {1.0}};
  EXPECT_THROW(validate(unknown), ValidationError);
  ScenarioConfig custom;
  custom.scenario = "custom";
  EXPECT_THROW(validate(custom), ValidationError);
  ScenarioConfig format;
  format.format = "xml";
  EXPECT_THROW(validate(format), ValidationError);
}

TEST(RunnerTest, ReferenceScenarios) {
  ScenarioConfig vn;
  const auto r = run_scenario(vn);
  ASSERT_EQ(r.states.size(), 1u);
  EXPECT_NEAR(r.states[0].table.metrics.epsilon, 0.5, 1e-6);
  EXPECT_NEAR(r.states[0].table.metrics.eta, 1.0, 1e-6);
  EXPECT_TRUE(r.states[0].table.relations[1].satisfied);

  ScenarioConfig oz;
  oz.scenario = "ozawa";
  const auto o = run_scenario(oz);
  EXPECT_EQ(o.states[0].table.metrics.epsilon, 0.0);
  EXPECT_EQ(o.states[0].table.classification, ViolationClass::kTypeII);

  ScenarioConfig epr;
  epr.scenario = "epr";
  const auto e = run_scenario(epr);
  EXPECT_EQ(e.states[0].table.metrics.eta, 0.0);
  EXPECT_NEAR(e.states[0].table.metrics.epsilon, 0.2, 1e-6);
  EXPECT_EQ(e.states[0].table.classification, ViolationClass::kTypeI);
}

TEST(RunnerTest, TrendClassification) {
  EXPECT_EQ(trend_of({1, 2, 3}), "increasing");
  EXPECT_EQ(trend_of({3, 2, 1}), "decreasing");
  EXPECT_EQ(trend_of({1, 1}), "constant");
  EXPECT_EQ(trend_of({1, 3, 2}), "mixed");
}

TEST(RunnerTest, EprSweepOrderedAcrossWorkers) {
  ScenarioConfig c;
  c.scenario = "epr";
  c.sweep = SweepAxis{"alpha", {0.5, 0.2, 0.1}};
  c.workers = 3;
  const auto parallel = run_sweep(c);
  ASSERT_EQ(parallel.points.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(parallel.points[i].value, c.sweep->values[i]);
    EXPECT_NEAR(parallel.points[i].result.states[0].table.metrics.epsilon, c.sweep->values[i], 1e-6);
    EXPECT_GE(parallel.points[i].result.states[0].table.relations[3].margin, -1e-6);  // TypeI bound
  }
  EXPECT_EQ(parallel.trends[0].direction, "decreasing");  // epsilon
  EXPECT_EQ(parallel.trends[3].direction, "increasing");  // sigma_p
  c.workers = 1;
  EXPECT_EQ(sweep_report(c, run_sweep(c), "csv"), sweep_report(c, parallel, "csv"));
}

TEST(RunnerTest, OzawaSweepTypeIIColumn) {
  ScenarioConfig c;
  c.scenario = "ozawa";
  c.sweep = SweepAxis{"input-sigma", {0.5, 1.0, 2.0}};
  for (const auto& p : run_sweep(c).points) EXPECT_GE(p.result.states[0].table.relations[4].lhs, 0.5 - 1e-6);
}

TEST(ReportTest, JsonCarriesSchemaAndIsDeterministic) {
  ScenarioConfig c;
  c.scenario = "von-neumann";
  c.input.random_states = 2;
  c.seed = 5;
  const auto a = scenario_report(c, run_scenario(c), "json");
  const auto b = scenario_report(c, run_scenario(c), "json");
  EXPECT_EQ(a, b);
  const auto j = json::parse(a);
  EXPECT_EQ(j["schema"], kReportSchema);
  EXPECT_EQ(j["config"]["schema"], kScenarioSchema);
  EXPECT_EQ(j["model"]["schema"], "edlab.model/1");
  EXPECT_EQ(j["states"].size(), 3u);
  EXPECT_EQ(j["states"][0]["relations"].size(), 6u);
  c.seed = 6;
  EXPECT_NE(scenario_report(c, run_scenario(c), "json"), a);
}

TEST(ReportTest, CsvHeaderIsFrozen) {
  ScenarioConfig c;
  const auto csv = scenario_report(c, run_scenario(c), "csv");
  EXPECT_EQ(csv.rfind("# edlab.report/1\n" + std::string(kRelationCsvHeader) + "\n", 0), 0u);
  std::size_t rows = 0;
  for (char ch : csv) rows += ch == '\n';
  EXPECT_EQ(rows, 2u + 6u);
}

TEST(ReportTest, PovmReport) {
  ScenarioConfig c;
  c.scenario = "ozawa";
  c.grid_n = 64;
  c.grid_length = 8.0;
  c.probe_sigma = 0.5;
  c.input.sigma = 0.5;
  const auto result = run_povm(c);
  EXPECT_LT(result.povm.completeness_residual, 1e-8);
  EXPECT_NEAR(result.distance.distance, result.epsilon, 1e-8);
  const auto j = json::parse(povm_report(c, result, "json"));
  EXPECT_EQ(j["bins"].size(), 64u);
  double total = 0.0;
  for (const auto& bin : j["bins"]) total += bin["probability"].get<double>();
  EXPECT_NEAR(total, 1.0, 1e-10);
}

TEST(ReportTest, WritesFile) {
  const std::string path = ::testing::TempDir() + "edlab_models.json";
  write_output(path, models_report("json"));
  std::ifstream in(path);
  const auto j = json::parse(in);
  EXPECT_EQ(j["models"].size(), 4u);
  std::remove(path.c_str());
  EXPECT_THROW(write_output("/nonexistent-dir/x.json", "x"), ValidationError);
}

}  // namespace
}  // namespace edlab::app
