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

#include "edlab/hilbert/state.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "edlab/error.hpp"

namespace edlab {
namespace {

void require_size(const GridSpec& grid, std::size_t size) {
  if (size != grid.n_points()) {
    throw ValidationError("amplitude count " + std::to_string(size) + " does not match grid of " +
                          std::to_string(grid.n_points()) + " points");
  }
}

void require_unit_norm(double norm_sq, const char* what) {
  if (!(std::abs(norm_sq - 1.0) <= kNormTolerance)) {
    std::ostringstream msg;
    msg << std::setprecision(17) << what << " is not normalized: squared norm " << norm_sq;
    throw ValidationError(msg.str());
  }
}

double safe_inverse_norm(double norm_sq, const char* what) {
  if (!(norm_sq > 0.0) || !std::isfinite(norm_sq)) {
    throw ValidationError(std::string(what) + " cannot be normalized (zero or non-finite norm)");
  }
  return 1.0 / std::sqrt(norm_sq);
}

}  // namespace

// StateVector ---------------------------------------------------------------

StateVector::StateVector(GridSpec grid, std::vector<cplx> amplitudes)
    : grid_(grid), amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::from_amplitudes(GridSpec grid, std::vector<cplx> amplitudes) {
  require_size(grid, amplitudes.size());
  require_unit_norm(edlab::squared_norm(grid, amplitudes), "state vector");
  return StateVector(grid, std::move(amplitudes));
}

StateVector StateVector::normalized(GridSpec grid, std::vector<cplx> amplitudes) {
  require_size(grid, amplitudes.size());
  const double scale = safe_inverse_norm(edlab::squared_norm(grid, amplitudes), "state vector");
  for (auto& a : amplitudes) a *= scale;
  return StateVector(grid, std::move(amplitudes));
}

double StateVector::squared_norm() const { return edlab::squared_norm(grid_, amplitudes_); }

std::vector<double> StateVector::probabilities() const {
  std::vector<double> out(amplitudes_.size());
  const double h = grid_.spacing();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::norm(amplitudes_[i]) * h;
  return out;
}

double squared_norm(const GridSpec& grid, std::span<const cplx> amplitudes) {
  double sum = 0.0;
  for (const auto& a : amplitudes) sum += std::norm(a);
  return sum * grid.spacing();
}

cplx inner(const GridSpec& grid, std::span<const cplx> a, std::span<const cplx> b) {
  cplx sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
  return sum * grid.spacing();
}

cplx inner(const StateVector& a, const StateVector& b) {
  if (!(a.grid() == b.grid())) throw ValidationError("inner product of states on different grids");
  return inner(a.grid(), a.amplitudes(), b.amplitudes());
}

// JointVector ---------------------------------------------------------------

JointVector::JointVector(GridSpec grid_a, GridSpec grid_b, FactorLayout layout, std::vector<cplx> amplitudes)
    : grid_a_(grid_a), grid_b_(grid_b), layout_(layout), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != grid_a_.n_points() * grid_b_.n_points()) {
    throw ValidationError("joint amplitude count does not match n_a * n_b");
  }
  if (grid_a_.hbar() != grid_b_.hbar()) {
    throw ValidationError("tensor factors must share the same hbar");
  }
}

JointVector JointVector::zeros(GridSpec grid_a, GridSpec grid_b, FactorLayout layout) {
  return JointVector(grid_a, grid_b, layout, std::vector<cplx>(grid_a.n_points() * grid_b.n_points()));
}

double JointVector::squared_norm() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return sum * cell();
}

bool JointVector::same_space(const JointVector& other) const {
  return grid_a_ == other.grid_a_ && grid_b_ == other.grid_b_ && layout_ == other.layout_;
}

JointVector& JointVector::operator+=(const JointVector& other) {
  if (!same_space(other)) throw ValidationError("adding joint vectors from different spaces");
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) amplitudes_[i] += other.amplitudes_[i];
  return *this;
}

JointVector& JointVector::operator-=(const JointVector& other) {
  if (!same_space(other)) throw ValidationError("subtracting joint vectors from different spaces");
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) amplitudes_[i] -= other.amplitudes_[i];
  return *this;
}

JointVector& JointVector::operator*=(cplx factor) {
  for (auto& a : amplitudes_) a *= factor;
  return *this;
}

JointVector operator-(JointVector a, const JointVector& b) {
  a -= b;
  return a;
}

cplx inner(const JointVector& a, const JointVector& b) {
  if (!a.same_space(b)) throw ValidationError("inner product of joint vectors from different spaces");
  cplx sum = 0.0;
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) sum += std::conj(x[i]) * y[i];
  return sum * a.cell();
}

// JointState ----------------------------------------------------------------

JointState JointState::from_vector(JointVector vector) {
  require_unit_norm(vector.squared_norm(), "joint state");
  return JointState(std::move(vector));
}

JointState JointState::normalized(JointVector vector) {
  vector *= safe_inverse_norm(vector.squared_norm(), "joint state");
  return JointState(std::move(vector));
}

std::vector<double> JointState::marginal_a() const {
  std::vector<double> out(vector_.rows(), 0.0);
  for (std::size_t i = 0; i < vector_.rows(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < vector_.cols(); ++j) sum += std::norm(vector_.at(i, j));
    out[i] = sum * vector_.cell();
  }
  return out;
}

std::vector<double> JointState::marginal_b() const {
  std::vector<double> out(vector_.cols(), 0.0);
  for (std::size_t i = 0; i < vector_.rows(); ++i) {
    for (std::size_t j = 0; j < vector_.cols(); ++j) out[j] += std::norm(vector_.at(i, j));
  }
  for (auto& v : out) v *= vector_.cell();
  return out;
}

JointState tensor(const StateVector& a, const StateVector& b, FactorLayout layout) {
  const std::size_t na = a.grid().n_points();
  const std::size_t nb = b.grid().n_points();
  std::vector<cplx> amps(na * nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) amps[i * nb + j] = a.amplitudes()[i] * b.amplitudes()[j];
  }
  JointVector v(a.grid(), b.grid(), layout, std::move(amps));
  // Product of two normalized factors; rounding only.
  return JointState::from_vector(std::move(v));
}

StateVector gaussian_state(const GridSpec& grid, double mean_q, double mean_p, double sigma_q) {
  if (!std::isfinite(mean_q) || !std::isfinite(mean_p) || !std::isfinite(sigma_q)) {
    throw ValidationError("gaussian_state: parameters must be finite");
  }
  std::ostringstream msg;
  msg << std::setprecision(6);
  if (sigma_q < 4.0 * grid.spacing()) {
    msg << "gaussian_state: width margin violated: sigma_q=" << sigma_q << " < 4*spacing=" << 4.0 * grid.spacing();
    throw ValidationError(msg.str());
  }
  if (mean_q - 6.0 * sigma_q < grid.min_position() || mean_q + 6.0 * sigma_q > grid.max_position()) {
    msg << "gaussian_state: position margin violated: mean_q +- 6*sigma_q = [" << mean_q - 6.0 * sigma_q << ", "
        << mean_q + 6.0 * sigma_q << "] leaves [" << grid.min_position() << ", " << grid.max_position() << ")";
    throw ValidationError(msg.str());
  }
  const double sigma_p = grid.hbar() / (2.0 * sigma_q);
  if (std::abs(mean_p) + 6.0 * sigma_p > grid.max_momentum()) {
    msg << "gaussian_state: momentum margin violated: |mean_p| + 6*sigma_p = " << std::abs(mean_p) + 6.0 * sigma_p
        << " exceeds max momentum " << grid.max_momentum();
    throw ValidationError(msg.str());
  }
  std::vector<cplx> amps(grid.n_points());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double dx = grid.position(i) - mean_q;
    amps[i] = std::exp(cplx(-dx * dx / (4.0 * sigma_q * sigma_q), mean_p * dx / grid.hbar()));
  }
  return StateVector::normalized(grid, std::move(amps));
}

void write_csv(std::ostream& out, const StateVector& state) {
  out << "position,re,im\n" << std::setprecision(17);
  for (std::size_t i = 0; i < state.amplitudes().size(); ++i) {
    const cplx a = state.amplitudes()[i];
    out << state.grid().position(i) << ',' << a.real() << ',' << a.imag() << '\n';
  }
}

void write_csv(std::ostream& out, const JointState& state) {
  out << "position_a,position_b,re,im\n" << std::setprecision(17);
  const auto& v = state.vector();
  for (std::size_t i = 0; i < v.rows(); ++i) {
    for (std::size_t j = 0; j < v.cols(); ++j) {
      const cplx a = v.at(i, j);
      out << v.grid_a().position(i) << ',' << v.grid_b().position(j) << ',' << a.real() << ',' << a.imag() << '\n';
    }
  }
}

}  // namespace edlab
