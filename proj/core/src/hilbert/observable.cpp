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

#include "edlab/hilbert/observable.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "edlab/error.hpp"
#include "edlab/hilbert/fft.hpp"

namespace edlab {
namespace {

constexpr double kImaginaryResidue = 1e-10;
constexpr double kRouteAgreement = 1e-8;
constexpr double kNegativeVarianceFloor = 1e-10;

void require_same_layout(const LinearObservable& a, const LinearObservable& b) {
  if (a.layout != b.layout) throw ValidationError("observables refer to different factor layouts");
}

void append_term(std::ostringstream& out, double coeff, const char* symbol, bool& first) {
  if (coeff == 0.0) return;
  const double mag = std::abs(coeff);
  if (first) {
    if (coeff < 0) out << '-';
  } else {
    out << (coeff < 0 ? " - " : " + ");
  }
  if (symbol == nullptr) {
    out << mag;
  } else {
    if (mag != 1.0) out << mag << '*';
    out << symbol;
  }
  first = false;
}

// Adds factor * (momentum along one axis applied to `in`) into `out`.
void accumulate_momentum(const JointVector& in, fft::Axis axis, double factor, JointVector& out) {
  std::vector<cplx> work(in.amplitudes().begin(), in.amplitudes().end());
  const std::size_t rows = in.rows();
  const std::size_t cols = in.cols();
  fft::forward(work, rows, cols, axis);
  if (axis == fft::Axis::kRows) {
    for (std::size_t i = 0; i < rows; ++i) {
      const double pm = in.grid_a().momentum(i);
      for (std::size_t j = 0; j < cols; ++j) work[i * cols + j] *= pm;
    }
  } else {
    for (std::size_t j = 0; j < cols; ++j) {
      const double pm = in.grid_b().momentum(j);
      for (std::size_t i = 0; i < rows; ++i) work[i * cols + j] *= pm;
    }
  }
  fft::inverse(work, rows, cols, axis);
  auto dst = out.mutable_amplitudes();
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += factor * work[k];
}

double checked_real(cplx value) {
  if (std::abs(value.imag()) > kImaginaryResidue * std::max(1.0, std::abs(value.real()))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "expectation has imaginary residue " << value.imag() << " (real part " << value.real() << ")";
    throw ConsistencyError(msg.str());
  }
  return value.real();
}

double checked_std_dev(const VarianceRoutes& routes) {
  if (routes.moment < -kNegativeVarianceFloor * std::max(1.0, routes.second_moment)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "negative variance " << routes.moment;
    throw ConsistencyError(msg.str());
  }
  const double scale = std::max(1.0, std::abs(routes.geometric));
  if (std::abs(routes.moment - routes.geometric) > kRouteAgreement * scale) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "variance routes disagree: moment " << routes.moment << " vs geometric " << routes.geometric;
    throw ConsistencyError(msg.str());
  }
  return std::sqrt(std::max(0.0, routes.geometric));
}

std::vector<cplx> apply_single(const LinearObservable& obs, const GridSpec& grid, std::span<const cplx> amps) {
  if (obs.acts_on_b()) throw ValidationError("observable acts on factor B but the state has a single factor");
  std::vector<cplx> out(amps.size());
  if (obs.constant != 0.0 || obs.q != 0.0) {
    for (std::size_t i = 0; i < amps.size(); ++i) out[i] = (obs.constant + obs.q * grid.position(i)) * amps[i];
  }
  if (obs.p != 0.0) {
    const auto pm = apply_momentum(grid, amps);
    for (std::size_t i = 0; i < amps.size(); ++i) out[i] += obs.p * pm[i];
  }
  return out;
}

}  // namespace

std::string LinearObservable::describe() const {
  const bool pair = layout == FactorLayout::kParticlePair;
  std::ostringstream out;
  out.precision(12);
  bool first = true;
  append_term(out, q, pair ? "Q1" : "Q", first);
  append_term(out, p, pair ? "P1" : "P", first);
  append_term(out, q0, pair ? "Q2" : "Q0", first);
  append_term(out, p0, pair ? "P2" : "P0", first);
  append_term(out, constant, nullptr, first);
  if (first) return "0";
  return out.str();
}

LinearObservable operator+(const LinearObservable& a, const LinearObservable& b) {
  require_same_layout(a, b);
  return {a.q + b.q, a.p + b.p, a.q0 + b.q0, a.p0 + b.p0, a.constant + b.constant, a.layout};
}

LinearObservable operator-(const LinearObservable& a, const LinearObservable& b) { return a + (-b); }

LinearObservable operator*(double factor, const LinearObservable& a) {
  return {factor * a.q, factor * a.p, factor * a.q0, factor * a.p0, factor * a.constant, a.layout};
}

std::complex<double> commutator_scalar(const LinearObservable& a, const LinearObservable& b, double hbar) {
  require_same_layout(a, b);
  const double form = a.q * b.p - a.p * b.q + a.q0 * b.p0 - a.p0 * b.q0;
  return {0.0, hbar * form};
}

std::vector<cplx> apply_momentum(const GridSpec& grid, std::span<const cplx> amplitudes) {
  std::vector<cplx> work(amplitudes.begin(), amplitudes.end());
  fft::forward(work);
  for (std::size_t m = 0; m < work.size(); ++m) work[m] *= grid.momentum(m);
  fft::inverse(work);
  return work;
}

JointVector apply_linear(const LinearObservable& obs, const JointVector& state) {
  if (obs.layout != state.layout()) throw ValidationError("observable slots do not match the state's factors");
  JointVector out = JointVector::zeros(state.grid_a(), state.grid_b(), state.layout());
  auto dst = out.mutable_amplitudes();
  const std::size_t rows = state.rows();
  const std::size_t cols = state.cols();
  if (obs.constant != 0.0 || obs.q != 0.0 || obs.q0 != 0.0) {
    for (std::size_t i = 0; i < rows; ++i) {
      const double xa = state.grid_a().position(i);
      for (std::size_t j = 0; j < cols; ++j) {
        const double xb = state.grid_b().position(j);
        double diag = obs.constant;
        if (obs.q != 0.0) diag += obs.q * xa;
        if (obs.q0 != 0.0) diag += obs.q0 * xb;
        dst[i * cols + j] = diag * state.at(i, j);
      }
    }
  }
  if (obs.p != 0.0) accumulate_momentum(state, fft::Axis::kRows, obs.p, out);
  if (obs.p0 != 0.0) accumulate_momentum(state, fft::Axis::kCols, obs.p0, out);
  return out;
}

JointVector apply_linear(const LinearObservable& obs, const JointState& state) {
  return apply_linear(obs, state.vector());
}

std::vector<cplx> apply_linear(const LinearObservable& obs, const StateVector& state) {
  return apply_single(obs, state.grid(), state.amplitudes());
}

double expectation(const LinearObservable& obs, const JointState& state) {
  return checked_real(inner(state.vector(), apply_linear(obs, state)));
}

double expectation(const LinearObservable& obs, const StateVector& state) {
  const auto applied = apply_linear(obs, state);
  return checked_real(inner(state.grid(), state.amplitudes(), applied));
}

VarianceRoutes variance_routes(const LinearObservable& obs, const JointState& state) {
  const JointVector once = apply_linear(obs, state);
  const double mean = checked_real(inner(state.vector(), once));
  const JointVector twice = apply_linear(obs, once);
  const double second = inner(state.vector(), twice).real();
  JointVector centered = once;
  JointVector shifted = state.vector();
  shifted *= mean;
  centered -= shifted;
  return {second - mean * mean, centered.squared_norm(), second};
}

VarianceRoutes variance_routes(const LinearObservable& obs, const StateVector& state) {
  const auto& grid = state.grid();
  const auto once = apply_single(obs, grid, state.amplitudes());
  const double mean = checked_real(inner(grid, state.amplitudes(), once));
  const auto twice = apply_single(obs, grid, once);
  const double second = inner(grid, state.amplitudes(), twice).real();
  std::vector<cplx> centered(once.size());
  for (std::size_t i = 0; i < once.size(); ++i) centered[i] = once[i] - mean * state.amplitudes()[i];
  return {second - mean * mean, squared_norm(grid, centered), second};
}

double std_dev(const LinearObservable& obs, const JointState& state) {
  const auto routes = variance_routes(obs, state);
  return checked_std_dev(routes);
}

double std_dev(const LinearObservable& obs, const StateVector& state) {
  const auto routes = variance_routes(obs, state);
  return checked_std_dev(routes);
}

}  // namespace edlab
