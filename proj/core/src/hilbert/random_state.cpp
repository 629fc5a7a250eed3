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

#include "edlab/hilbert/random_state.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "edlab/error.hpp"

namespace edlab {
namespace {

// Effective momentum spread of a chirped Gaussian with position width s.
double chirped_sigma_p(double hbar, double s, double chirp) {
  const double base = hbar / (2.0 * s);
  const double extra = 2.0 * hbar * std::abs(chirp) * s;
  return std::sqrt(base * base + extra * extra);
}

}  // namespace

double uniform(Rng& rng, double lo, double hi) {
  // 53 random bits -> [0, 1).
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

StateVector random_localized_state(const GridSpec& grid, Rng& rng, const LocalizedStateOptions& options) {
  if (!(options.min_sigma > 0.0) || options.max_sigma < options.min_sigma || options.max_components < 1 ||
      options.max_abs_mean_q < 0.0 || options.max_abs_mean_p < 0.0 || options.max_chirp < 0.0) {
    throw ValidationError("random_localized_state: inconsistent options");
  }
  std::ostringstream msg;
  if (options.min_sigma < 4.0 * grid.spacing()) {
    msg << "random_localized_state: width margin violated: min_sigma=" << options.min_sigma
        << " < 4*spacing=" << 4.0 * grid.spacing();
    throw ValidationError(msg.str());
  }
  if (options.max_abs_mean_q + 6.0 * options.max_sigma > grid.max_position()) {
    msg << "random_localized_state: position margin violated: max_abs_mean_q + 6*max_sigma = "
        << options.max_abs_mean_q + 6.0 * options.max_sigma << " exceeds " << grid.max_position();
    throw ValidationError(msg.str());
  }
  const double worst_p = std::max(chirped_sigma_p(grid.hbar(), options.min_sigma, options.max_chirp),
                                  chirped_sigma_p(grid.hbar(), options.max_sigma, options.max_chirp));
  if (options.max_abs_mean_p + 6.0 * worst_p > grid.max_momentum()) {
    msg << "random_localized_state: momentum margin violated: max_abs_mean_p + 6*sigma_p = "
        << options.max_abs_mean_p + 6.0 * worst_p << " exceeds " << grid.max_momentum();
    throw ValidationError(msg.str());
  }

  const int components = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(options.max_components));
  std::vector<cplx> amps(grid.n_points(), cplx(0.0));
  for (int c = 0; c < components; ++c) {
    const double sigma = uniform(rng, options.min_sigma, options.max_sigma);
    const double mean_q = uniform(rng, -options.max_abs_mean_q, options.max_abs_mean_q);
    const double mean_p = uniform(rng, -options.max_abs_mean_p, options.max_abs_mean_p);
    const double chirp = uniform(rng, -options.max_chirp, options.max_chirp);
    const double weight = uniform(rng, 0.3, 1.0);
    const double phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const cplx coeff = std::polar(weight, phase) / std::sqrt(sigma);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      const double dx = grid.position(i) - mean_q;
      amps[i] += coeff * std::exp(cplx(-dx * dx / (4.0 * sigma * sigma), mean_p * dx / grid.hbar() + chirp * dx * dx));
    }
  }
  return StateVector::normalized(grid, std::move(amps));
}

}  // namespace edlab
