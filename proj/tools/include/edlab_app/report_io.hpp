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

#include "edlab_app/config.hpp"
#include "edlab_app/runner.hpp"

namespace edlab::app {

inline constexpr const char* kReportSchema = "edlab.report/1";

/// Frozen CSV column order of the relation table (one row per model,
/// sweep value, state and relation).
inline constexpr const char* kRelationCsvHeader =
    "sweep_param,sweep_value,model,state,relation,lhs,rhs,margin,tolerance,satisfied,applicable,"
    "epsilon,eta,sigma_q,sigma_p,classification";

/// Reports; every file carries the schema string (JSON "schema" key, CSV
/// first line "# edlab.report/1"). CSV numbers use the shortest form that
/// round-trips exactly, so output is byte-identical for identical input.
std::string scenario_report(const ScenarioConfig& config, const ScenarioResult& result, const std::string& format);
std::string sweep_report(const ScenarioConfig& config, const SweepResult& result, const std::string& format);
std::string povm_report(const ScenarioConfig& config, const PovmResult& result, const std::string& format);
/// Registered model names with their default parameters.
std::string models_report(const std::string& format);

/// Writes to `path`, or to standard output when it is empty.
void write_output(const std::string& path, const std::string& text);

}  // namespace edlab::app
