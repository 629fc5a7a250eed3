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

#include "edlab/metrics/noise_disturbance.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "edlab/error.hpp"

namespace edlab {
namespace {

constexpr double kRouteAgreement = 1e-8;
constexpr double kDeviationSlack = 1e-8;

RmsRoutes routes_for(const LinearObservable& out, const LinearObservable& in, const JointState& initial) {
  const LinearObservable diff = out - in;
  if (diff.is_zero()) return {0.0, 0.0};
  const JointVector applied = apply_linear(diff, initial);
  const double moment = inner(initial.vector(), apply_linear(diff, applied)).real();
  JointVector separate = apply_linear(out, initial);
  separate -= apply_linear(in, initial);
  return {moment, separate.squared_norm()};
}

double checked_rms(const RmsRoutes& routes, const char* what) {
  const double scale = std::max(1.0, std::abs(routes.geometric));
  if (std::abs(routes.moment - routes.geometric) > kRouteAgreement * scale) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << " routes disagree: moment " << routes.moment << " vs geometric " << routes.geometric;
    throw ConsistencyError(msg.str());
  }
  return std::sqrt(std::max(0.0, routes.geometric));
}

void require_layout(const MeasurementModel& model, const JointState& initial) {
  if (initial.layout() != model.layout()) {
    throw ValidationError("input state layout does not match model '" + model.name() + "'");
  }
}

}  // namespace

LinearObservable noise_operator(const MeasurementModel& model) {
  return model.io_map().meter_out - LinearObservable::position_a(model.layout());
}

LinearObservable disturbance_operator(const MeasurementModel& model) {
  return model.io_map().momentum_out - LinearObservable::momentum_a(model.layout());
}

RmsRoutes rms_error_routes(const MeasurementModel& model, const JointState& initial) {
  require_layout(model, initial);
  return routes_for(model.io_map().meter_out, LinearObservable::position_a(model.layout()), initial);
}

RmsRoutes rms_disturbance_routes(const MeasurementModel& model, const JointState& initial) {
  require_layout(model, initial);
  return routes_for(model.io_map().momentum_out, LinearObservable::momentum_a(model.layout()), initial);
}

double rms_error(const MeasurementModel& model, const JointState& initial) {
  return checked_rms(rms_error_routes(model, initial), "rms error");
}

double rms_error(const MeasurementModel& model, const StateVector& input) {
  return rms_error(model, model.prepare(input));
}

double rms_disturbance(const MeasurementModel& model, const JointState& initial) {
  return checked_rms(rms_disturbance_routes(model, initial), "rms disturbance");
}

double rms_disturbance(const MeasurementModel& model, const StateVector& input) {
  return rms_disturbance(model, model.prepare(input));
}

NoiseDisturbanceReport evaluate_noise_disturbance(const MeasurementModel& model, const JointState& initial) {
  require_layout(model, initial);
  const auto q_in = LinearObservable::position_a(model.layout());
  const auto p_in = LinearObservable::momentum_a(model.layout());
  const auto& io = model.io_map();
  NoiseDisturbanceReport r;
  r.epsilon = rms_error(model, initial);
  r.eta = rms_disturbance(model, initial);
  r.sigma_q_in = std_dev(q_in, initial);
  r.sigma_p_in = std_dev(p_in, initial);
  r.sigma_m_out = std_dev(io.meter_out, initial);
  r.sigma_p_out = std_dev(io.momentum_out, initial);
  r.mean_shift_m = expectation(io.meter_out, initial) - expectation(q_in, initial);
  r.mean_shift_p = expectation(io.momentum_out, initial) - expectation(p_in, initial);
  r.deviation_slack_m = r.epsilon + std::abs(r.mean_shift_m) - std::abs(r.sigma_m_out - r.sigma_q_in);
  r.deviation_slack_p = r.eta + std::abs(r.mean_shift_p) - std::abs(r.sigma_p_out - r.sigma_p_in);
  if (r.deviation_slack_m < -kDeviationSlack || r.deviation_slack_p < -kDeviationSlack) {
    std::ostringstream msg;
    msg << "deviation bound violated on model '" << model.name() << "': slack (M) " << r.deviation_slack_m
        << ", slack (P) " << r.deviation_slack_p;
    throw ConsistencyError(msg.str());
  }
  return r;
}

NoiseDisturbanceReport evaluate_noise_disturbance(const MeasurementModel& model, const StateVector& input) {
  return evaluate_noise_disturbance(model, model.prepare(input));
}

StateVector rest_mass_input(double momentum_width, double hbar) {
  if (!(momentum_width > 0.0) || !std::isfinite(momentum_width)) {
    throw ValidationError("rest-mass protocol: momentum width must be positive and finite");
  }
  const double sigma_q = hbar / (2.0 * momentum_width);
  const double length = std::max(40.0, 16.0 * sigma_q);
  const auto n = std::bit_ceil(static_cast<std::size_t>(std::ceil(length / 0.25)));
  return gaussian_state(GridSpec(std::max<std::size_t>(n, GridSpec::kMinPoints), length, hbar), 0.0, 0.0, sigma_q);
}

RestMassReport rest_mass_disturbance_identity(const MeasurementModel& model, double momentum_width) {
  if (model.layout() != FactorLayout::kObjectProbe) {
    throw ValidationError("rest-mass protocol needs a single-particle object");
  }
  const auto initial = model.prepare(rest_mass_input(momentum_width, model.hbar()));
  RestMassReport r;
  r.momentum_width = momentum_width;
  const double eta = rms_disturbance(model, initial);
  r.eta_squared = eta * eta;
  const auto& p_out = model.io_map().momentum_out;
  const double mean = expectation(p_out, initial);
  const double sigma = std_dev(p_out, initial);
  r.p_out_squared = sigma * sigma + mean * mean;
  r.residual = std::abs(r.eta_squared - r.p_out_squared);
  return r;
}

}  // namespace edlab
