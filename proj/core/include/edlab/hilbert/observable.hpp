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

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "edlab/hilbert/state.hpp"

namespace edlab {

/// First-degree polynomial in the canonical quadruple
///   q*Q(x)I + p*P(x)I + q0*I(x)Q0 + p0*I(x)P0 + constant*I.
/// Hermitian by construction. Commutators of two such observables are
/// scalars, so the Heisenberg-picture bookkeeping of the quadratic models
/// stays exact in coefficient algebra.
struct LinearObservable {
  double q = 0.0;
  double p = 0.0;
  double q0 = 0.0;
  double p0 = 0.0;
  double constant = 0.0;
  FactorLayout layout = FactorLayout::kObjectProbe;

  static LinearObservable position_a(FactorLayout layout = FactorLayout::kObjectProbe) { return {1, 0, 0, 0, 0, layout}; }
  static LinearObservable momentum_a(FactorLayout layout = FactorLayout::kObjectProbe) { return {0, 1, 0, 0, 0, layout}; }
  static LinearObservable position_b(FactorLayout layout = FactorLayout::kObjectProbe) { return {0, 0, 1, 0, 0, layout}; }
  static LinearObservable momentum_b(FactorLayout layout = FactorLayout::kObjectProbe) { return {0, 0, 0, 1, 0, layout}; }
  static LinearObservable scalar(double value, FactorLayout layout = FactorLayout::kObjectProbe) {
    return {0, 0, 0, 0, value, layout};
  }

  /// Canonical coefficients in (Q, P, Q0, P0) order.
  std::array<double, 4> canonical() const { return {q, p, q0, p0}; }
  bool acts_on_a() const { return q != 0.0 || p != 0.0; }
  bool acts_on_b() const { return q0 != 0.0 || p0 != 0.0; }
  bool is_zero() const { return !acts_on_a() && !acts_on_b() && constant == 0.0; }

  /// Human-readable form such as "Q + Q0" or "P1 - P2".
  std::string describe() const;

  LinearObservable operator-() const { return {-q, -p, -q0, -p0, -constant, layout}; }
  friend bool operator==(const LinearObservable&, const LinearObservable&) = default;
};

/// Throws ValidationError when the layouts differ.
LinearObservable operator+(const LinearObservable& a, const LinearObservable& b);
LinearObservable operator-(const LinearObservable& a, const LinearObservable& b);
LinearObservable operator*(double factor, const LinearObservable& a);

/// [a, b] = i*hbar*(a.q b.p - a.p b.q + a.q0 b.p0 - a.p0 b.q0), computed
/// from coefficients only. Throws ValidationError on a layout mismatch.
std::complex<double> commutator_scalar(const LinearObservable& a, const LinearObservable& b, double hbar);

/// Applies P = -i hbar d/dx to one factor via forward transform, diagonal
/// multiply and inverse transform.
std::vector<cplx> apply_momentum(const GridSpec& grid, std::span<const cplx> amplitudes);

/// obs * state. Position terms act diagonally, momentum terms through the
/// transform. Terms with zero coefficient are skipped, so the zero
/// observable yields exact zeros. Throws ValidationError when the layout of
/// obs and state differ.
JointVector apply_linear(const LinearObservable& obs, const JointVector& state);
JointVector apply_linear(const LinearObservable& obs, const JointState& state);

/// Single-factor variant; obs must not touch factor B.
std::vector<cplx> apply_linear(const LinearObservable& obs, const StateVector& state);

/// <obs>. Throws ConsistencyError when the imaginary residue exceeds
/// 1e-10 * max(1, |real part|).
double expectation(const LinearObservable& obs, const JointState& state);
double expectation(const LinearObservable& obs, const StateVector& state);

/// Both routes to a standard deviation, reported as variances.
struct VarianceRoutes {
  double moment;     // <A^2> - <A>^2 with A applied twice
  double geometric;  // ||A psi - <A> psi||^2
  double second_moment;
};

VarianceRoutes variance_routes(const LinearObservable& obs, const JointState& state);
VarianceRoutes variance_routes(const LinearObservable& obs, const StateVector& state);

/// sigma(A). Computes both routes and throws ConsistencyError when they
/// differ by more than 1e-8 * max(1, variance), or when the moment variance
/// is below -1e-10 * max(1, <A^2>). Small negative values clamp to 0.
double std_dev(const LinearObservable& obs, const JointState& state);
double std_dev(const LinearObservable& obs, const StateVector& state);

}  // namespace edlab
