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

#include "edlab/metrics/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "edlab/error.hpp"
#include "edlab/hilbert/observable.hpp"
#include "edlab/metrics/noise_disturbance.hpp"

namespace edlab {
namespace {

constexpr double kRelativeSlack = 1e-8;

OutcomeEnsemble object_probe_ensemble(const MeasurementModel& model, const JointState& initial) {
  if (!model.has_propagator()) {
    throw ValidationError("model '" + model.name() +
                          "' has no grid propagator; outcome ensembles need one (use the Heisenberg-picture metrics)");
  }
  const JointState final_state = model.propagate(initial);
  const auto& ga = final_state.grid_a();
  const auto& gb = final_state.grid_b();
  const std::size_t na = ga.n_points();
  const std::size_t nb = gb.n_points();
  const auto amps = final_state.amplitudes();

  OutcomeEnsemble out;
  out.bin_width = gb.spacing();
  std::vector<cplx> column(na);
  for (std::size_t b = 0; b < nb; ++b) {
    double weight = 0.0;
    for (std::size_t a = 0; a < na; ++a) {
      column[a] = amps[a * nb + b];
      weight += std::norm(column[a]);
    }
    weight *= ga.spacing() * gb.spacing();
    if (weight < kEmptyBinWeight) continue;
    out.total_weight += weight;
    out.bins.push_back({gb.position(b), weight, StateVector::normalized(ga, column)});
  }
  return out;
}

OutcomeEnsemble pair_ensemble(const MeasurementModel& model, const JointState& initial) {
  const auto& ga = initial.grid_a();
  const auto& gb = initial.grid_b();
  const std::size_t na = ga.n_points();
  const std::size_t nb = gb.n_points();
  if (nb * na * nb > kMaxPairEnsembleAmplitudes) {
    throw ValidationError("pair outcome ensemble on a " + std::to_string(na) + "x" + std::to_string(nb) +
                          " grid exceeds the memory guard; use a coarser grid");
  }
  const auto kernel = readout_kernel(gb, model.readout_width());
  const auto marginal = initial.marginal_b();
  const auto amps = initial.amplitudes();

  OutcomeEnsemble out;
  out.bin_width = gb.spacing();
  for (std::size_t k = 0; k < nb; ++k) {
    double weight = 0.0;
    for (std::size_t j = 0; j < nb; ++j) weight += kernel[(k + nb - j) % nb] * marginal[j];
    if (weight < kEmptyBinWeight) continue;
    std::vector<cplx> conditioned(amps.begin(), amps.end());
    for (std::size_t j = 0; j < nb; ++j) {
      const double filter = std::sqrt(kernel[(k + nb - j) % nb]);
      for (std::size_t i = 0; i < na; ++i) conditioned[i * nb + j] *= filter;
    }
    out.total_weight += weight;
    out.bins.push_back(
        {gb.position(k), weight, JointState::normalized(JointVector(ga, gb, initial.layout(), std::move(conditioned)))});
  }
  return out;
}

// Moments of the measured object inside one conditional state.
struct ConditionalMoments {
  double p_second = 0.0;
  double p_variance = 0.0;
  double q_sigma = 0.0;
};

ConditionalMoments moments(const ConditionalState& state, FactorLayout layout) {
  const auto p = LinearObservable::momentum_a(layout);
  const auto q = LinearObservable::position_a(layout);
  return std::visit(
      [&](const auto& s) {
        const double mean = expectation(p, s);
        const double sigma = std_dev(p, s);
        return ConditionalMoments{sigma * sigma + mean * mean, sigma * sigma, std_dev(q, s)};
      },
      state);
}

}  // namespace

std::vector<double> readout_kernel(const GridSpec& grid, double width) {
  if (!(width >= 0.0) || !std::isfinite(width)) throw ValidationError("readout width must be finite and >= 0");
  const std::size_t n = grid.n_points();
  std::vector<double> k(n, 0.0);
  if (width == 0.0) {
    k[0] = 1.0;
    return k;
  }
  for (std::size_t d = 0; d < n; ++d) {
    const auto signed_d = static_cast<double>(d < (n + 1) / 2 ? static_cast<std::ptrdiff_t>(d)
                                                              : static_cast<std::ptrdiff_t>(d) - static_cast<std::ptrdiff_t>(n));
    const double x = signed_d * grid.spacing();
    k[d] = std::exp(-x * x / (2.0 * width * width));
  }
  const double total = std::accumulate(k.begin(), k.end(), 0.0);
  for (auto& v : k) v /= total;
  return k;
}

OutcomeEnsemble outcome_ensemble(const MeasurementModel& model, const JointState& initial) {
  if (initial.layout() != model.layout()) {
    throw ValidationError("input state layout does not match model '" + model.name() + "'");
  }
  return model.layout() == FactorLayout::kParticlePair ? pair_ensemble(model, initial)
                                                       : object_probe_ensemble(model, initial);
}

MixtureReport verify_mixture_identity(const MeasurementModel& model, const JointState& initial) {
  const auto& io = model.io_map();
  if (commutator_scalar(io.meter_out, io.momentum_out, model.hbar()) != cplx(0.0)) {
    throw ConsistencyError("meter and output momentum do not commute on model '" + model.name() + "'");
  }
  const auto ensemble = outcome_ensemble(model, initial);

  MixtureReport r;
  const double mean = expectation(io.momentum_out, initial);
  const double sigma = std_dev(io.momentum_out, initial);
  r.p_out_squared = sigma * sigma + mean * mean;
  r.epsilon = rms_error(model, initial);
  r.bins = ensemble.bins.size();
  r.min_conditional_variance = std::numeric_limits<double>::infinity();
  for (const auto& bin : ensemble.bins) {
    const auto m = moments(bin.state, model.layout());
    r.mixture_p_squared += bin.weight * m.p_second;
    r.mean_conditional_variance += bin.weight * m.p_variance;
    if (m.p_variance < r.min_conditional_variance) {
      r.min_conditional_variance = m.p_variance;
      r.witness_value = bin.value;
    }
    r.max_conditional_sigma_q = std::max(r.max_conditional_sigma_q, m.q_sigma);
  }
  r.relative_residual = std::abs(r.mixture_p_squared - r.p_out_squared) / std::max(r.p_out_squared, 1e-300);
  const double slack = kRelativeSlack * std::max(1.0, r.p_out_squared);
  r.variance_bound_holds = r.p_out_squared >= r.mean_conditional_variance - slack;
  r.witness_found = r.min_conditional_variance <= r.p_out_squared + slack;
  r.equipredictive = r.max_conditional_sigma_q <= r.epsilon + kRelativeSlack * std::max(1.0, r.epsilon);
  return r;
}

}  // namespace edlab
