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

#include <cstdint>
#include <random>

#include "edlab/hilbert/state.hpp"

namespace edlab {

/// Engine used by every seeded generator in the library. std::mt19937_64 is
/// fully specified by the standard, so a seed reproduces the same raw draws
/// on every platform.
using Rng = std::mt19937_64;

/// Shape limits for random_localized_state.
struct LocalizedStateOptions {
  double min_sigma = 0.7;
  double max_sigma = 1.5;
  double max_abs_mean_q = 3.0;
  double max_abs_mean_p = 1.5;
  /// Largest |c| in the quadratic phase exp(i c (x - mean)^2).
  double max_chirp = 0.3;
  int max_components = 3;
};

/// Superposition of 1..max_components chirped, boosted Gaussian packets
/// with random complex weights. Every component satisfies the same
/// localization margins as gaussian_state (6 widths inside the grid, 6
/// momentum widths inside the momentum grid), so the result is localized.
/// Throws ValidationError when the options cannot fit on the grid.
StateVector random_localized_state(const GridSpec& grid, Rng& rng, const LocalizedStateOptions& options = {});

/// Uniform draw in [lo, hi) built from raw engine output, so the value for
/// a given seed does not depend on the standard library's distributions.
double uniform(Rng& rng, double lo, double hi);

}  // namespace edlab
