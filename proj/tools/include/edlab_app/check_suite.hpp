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

#include <functional>
#include <string>
#include <vector>

namespace edlab::app {

struct CheckResult {
  std::string id;           // "1".."10" for acceptance criteria, a slug for extra invariants
  std::string description;  // one line
  bool passed = false;
  std::string detail;       // worst observed value(s)
  double seconds = 0.0;
};

struct NamedCheck {
  std::string id;
  std::string description;
  std::function<CheckResult()> run;
};

/// The ten acceptance criteria, in order.
std::vector<NamedCheck> acceptance_checks();
/// Extra module invariants run by `edlab check` after the criteria.
std::vector<NamedCheck> invariant_checks();

/// Runs checks in order; an exception inside a check is a failure whose
/// detail is the exception message. `on_result` sees each result as it
/// completes.
std::vector<CheckResult> run_checks(const std::vector<NamedCheck>& checks,
                                    const std::function<void(const CheckResult&)>& on_result = {});

/// "PASS [id] description (detail, 1.23 s)".
std::string format_line(const CheckResult& result);
/// JSON (edlab.report/1) or CSV summary of a suite run.
std::string check_report(const std::vector<CheckResult>& results, const std::string& format);

}  // namespace edlab::app
