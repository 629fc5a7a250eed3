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

#include "edlab/hilbert/grid.hpp"

#include <cmath>
#include <string>

#include "edlab/error.hpp"

namespace edlab {

GridSpec::GridSpec(std::size_t n_points, double length, double hbar)
    : n_points_(n_points), length_(length), hbar_(hbar) {
  if (n_points < kMinPoints || (n_points & (n_points - 1)) != 0) {
    throw ValidationError("grid n_points must be a power of two >= 8, got " + std::to_string(n_points));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ValidationError("grid length must be positive and finite");
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw ValidationError("hbar must be positive and finite");
  }
}

}  // namespace edlab
