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

// Acceptance gate: prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <iostream>

#include "edlab_app/check_suite.hpp"

int main() {
  bool all = true;
  edlab::app::run_checks(edlab::app::acceptance_checks(), [&all](const edlab::app::CheckResult& r) {
    std::cout << edlab::app::format_line(r) << std::endl;
    all = all && r.passed;
  });
  std::cout << (all ? "acceptance: all criteria passed" : "acceptance: some criteria FAILED") << std::endl;
  return all ? 0 : 1;
}
