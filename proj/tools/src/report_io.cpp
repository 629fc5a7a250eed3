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

#include "edlab_app/report_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "edlab/error.hpp"
#include "edlab/models/model_io.hpp"

namespace edlab::app {
namespace {

using nlohmann::ordered_json;

// Shortest of %.15g / %.16g / %.17g that round-trips exactly.
std::string number(double v) {
  char buf[32];
  for (int digits = 15; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

ordered_json relation_json(const InequalityReport& r) {
  return {{"relation", to_string(r.relation)}, {"label", r.label},         {"lhs", r.lhs},
          {"rhs", r.rhs},                      {"margin", r.margin},       {"tolerance", r.tolerance},
          {"satisfied", r.satisfied},          {"applicable", r.applicable}};
}

ordered_json metrics_json(const NoiseDisturbanceReport& m) {
  return {{"epsilon", m.epsilon},
          {"eta", m.eta},
          {"sigma_q_in", m.sigma_q_in},
          {"sigma_p_in", m.sigma_p_in},
          {"sigma_m_out", m.sigma_m_out},
          {"sigma_p_out", m.sigma_p_out},
          {"mean_shift_m", m.mean_shift_m},
          {"mean_shift_p", m.mean_shift_p},
          {"deviation_slack_m", m.deviation_slack_m},
          {"deviation_slack_p", m.deviation_slack_p}};
}

ordered_json states_json(const ScenarioResult& result) {
  ordered_json states = ordered_json::array();
  for (const auto& s : result.states) {
    ordered_json relations = ordered_json::array();
    for (const auto& r : s.table.relations) relations.push_back(relation_json(r));
    const auto& d = s.table.derivation;
    ordered_json derivation = ordered_json::array();
    for (const auto* r : {&d.noise_disturbance, &d.noise_momentum, &d.position_disturbance, &d.triangle}) {
      derivation.push_back(relation_json(*r));
    }
    states.push_back({{"label", s.label},
                      {"metrics", metrics_json(s.table.metrics)},
                      {"classification", to_string(s.table.classification)},
                      {"relations", relations},
                      {"derivation", derivation}});
  }
  return states;
}

ordered_json header(const ScenarioConfig& config, const char* command) {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["command"] = command;
  j["config"] = ordered_json::parse(config_to_json(config));
  return j;
}

void csv_rows(std::ostringstream& out, const std::string& param, const std::string& value,
              const ScenarioResult& result) {
  for (const auto& s : result.states) {
    const auto& m = s.table.metrics;
    for (const auto& r : s.table.relations) {
      out << param << ',' << value << ',' << result.model_name << ',' << s.label << ',' << to_string(r.relation) << ','
          << number(r.lhs) << ',' << number(r.rhs) << ',' << number(r.margin) << ',' << number(r.tolerance) << ','
          << (r.satisfied ? "true" : "false") << ',' << (r.applicable ? "true" : "false") << ',' << number(m.epsilon)
          << ',' << number(m.eta) << ',' << number(m.sigma_q_in) << ',' << number(m.sigma_p_in) << ','
          << to_string(s.table.classification) << '\n';
    }
  }
}

std::string csv_preamble() { return std::string("# ") + kReportSchema + "\n" + kRelationCsvHeader + "\n"; }

void require_format(const std::string& format) {
  if (format != "json" && format != "csv") throw ValidationError("format: expected json or csv");
}

}  // namespace

std::string scenario_report(const ScenarioConfig& config, const ScenarioResult& result, const std::string& format) {
  require_format(format);
  if (format == "csv") {
    std::ostringstream out;
    out << csv_preamble();
    csv_rows(out, "", "", result);
    return out.str();
  }
  auto j = header(config, "run");
  j["model"] = ordered_json::parse(result.model_json);
  j["states"] = states_json(result);
  return j.dump(2) + "\n";
}

std::string sweep_report(const ScenarioConfig& config, const SweepResult& result, const std::string& format) {
  require_format(format);
  if (format == "csv") {
    std::ostringstream out;
    out << csv_preamble();
    for (const auto& p : result.points) csv_rows(out, result.param, number(p.value), p.result);
    for (const auto& t : result.trends) out << "# trend " << t.column << ' ' << t.direction << '\n';
    return out.str();
  }
  auto j = header(config, "sweep");
  ordered_json points = ordered_json::array();
  for (const auto& p : result.points) {
    points.push_back({{"value", p.value}, {"model", ordered_json::parse(p.result.model_json)},
                      {"states", states_json(p.result)}});
  }
  j["param"] = result.param;
  j["points"] = points;
  ordered_json trends = ordered_json::array();
  for (const auto& t : result.trends) trends.push_back({{"column", t.column}, {"direction", t.direction}});
  j["trends"] = trends;
  return j.dump(2) + "\n";
}

std::string povm_report(const ScenarioConfig& config, const PovmResult& result, const std::string& format) {
  require_format(format);
  const auto& povm = result.povm;
  if (format == "csv") {
    std::ostringstream out;
    out << "# " << kReportSchema << '\n' << "value,probability,trace\n";
    for (std::size_t i = 0; i < povm.bins.size(); ++i) {
      out << number(povm.bins[i].value) << ',' << number(result.outcome_probabilities[i]) << ','
          << number(povm.bins[i].effect.entries().trace().real()) << '\n';
    }
    return out.str();
  }
  auto j = header(config, "povm");
  j["model"] = ordered_json::parse(result.model_json);
  j["dimension"] = povm.dimension;
  j["completeness_residual"] = povm.completeness_residual;
  j["min_eigenvalue"] = povm.min_eigenvalue;
  j["distance"] = {{"distance", result.distance.distance},
                   {"intrinsic", result.distance.intrinsic},
                   {"bias", result.distance.bias},
                   {"epsilon", result.epsilon}};
  ordered_json bins = ordered_json::array();
  for (std::size_t i = 0; i < povm.bins.size(); ++i) {
    const auto& e = povm.bins[i].effect.entries();
    std::vector<double> diagonal(static_cast<std::size_t>(e.rows()));
    for (Eigen::Index k = 0; k < e.rows(); ++k) diagonal[static_cast<std::size_t>(k)] = e(k, k).real();
    bins.push_back({{"value", povm.bins[i].value},
                    {"probability", result.outcome_probabilities[i]},
                    {"trace", e.trace().real()},
                    {"diagonal", diagonal}});
  }
  j["bins"] = bins;
  return j.dump(2) + "\n";
}

std::string models_report(const std::string& format) {
  require_format(format);
  struct Entry {
    const char* name;
    const char* description;
  };
  const Entry entries[] = {
      {"von-neumann", "pointer coupling K Q P0; M = Q + Q0, P(dt) = P - P0; default probe sigma 0.5"},
      {"zero-coupling", "no interaction; M = Q0, P(dt) = P; default probe sigma 0.5"},
      {"ozawa", "contractive coupling; M = Q, P(dt) = P0; default probe sigma 1.0"},
      {"epr", "indirect measurement on a correlated pair; M = Q2, P(dt) = P1; no probe"},
  };
  if (format == "csv") {
    std::ostringstream out;
    out << "# " << kReportSchema << "\nname,description\n";
    for (const auto& e : entries) out << e.name << ",\"" << e.description << "\"\n";
    return out.str();
  }
  ordered_json j;
  j["schema"] = kReportSchema;
  j["command"] = "models list";
  ordered_json models = ordered_json::array();
  for (const auto& e : entries) models.push_back({{"name", e.name}, {"description", e.description}});
  j["models"] = models;
  return j.dump(2) + "\n";
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError(path + ": cannot open output file");
  out << text;
}

}  // namespace edlab::app
