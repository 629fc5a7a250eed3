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

#include "edlab/inequalities/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "edlab/error.hpp"
#include "edlab/hilbert/observable.hpp"

namespace edlab {
namespace {

constexpr double kGridIdentityTolerance = 1e-3;

InequalityReport bound(Relation relation, std::string label, double lhs, double rhs, double tolerance) {
  InequalityReport r;
  r.relation = relation;
  r.label = std::move(label);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = lhs - rhs;
  r.tolerance = tolerance;
  r.satisfied = r.margin >= -tolerance;
  return r;
}

InequalityReport identity(std::string label, cplx lhs, cplx rhs, double tolerance) {
  InequalityReport r;
  r.relation = Relation::kCommutatorIdentity;
  r.label = std::move(label);
  r.lhs = lhs.imag();
  r.rhs = rhs.imag();
  r.margin = 0.0 - std::abs(lhs - rhs);
  r.tolerance = tolerance;
  r.satisfied = r.margin >= -tolerance;
  return r;
}

struct Terms {
  double epsilon;
  double eta;
  double sigma_q;
  double sigma_p;
};

Terms terms(const MeasurementModel& model, const JointState& initial) {
  return {rms_error(model, initial), rms_disturbance(model, initial),
          std_dev(LinearObservable::position_a(model.layout()), initial),
          std_dev(LinearObservable::momentum_a(model.layout()), initial)};
}

double hermitian_expectation(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& c) { return c.dot(m * c).real(); }

double matrix_std_dev(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& c) {
  const double mean = hermitian_expectation(m, c);
  const Eigen::VectorXcd shifted = m * c - mean * c;
  return shifted.norm();
}

cplx identity_sum(const MeasurementModel& model, const auto& commutator) {
  const auto n = noise_operator(model);
  const auto d = disturbance_operator(model);
  const auto q = LinearObservable::position_a(model.layout());
  const auto p = LinearObservable::momentum_a(model.layout());
  return commutator(n, d) + commutator(n, p) + commutator(q, d);
}

}  // namespace

std::string to_string(Relation relation) {
  switch (relation) {
    case Relation::kKennard: return "kennard";
    case Relation::kRobertson: return "robertson";
    case Relation::kHeisenberg: return "heisenberg";
    case Relation::kOzawa: return "ozawa";
    case Relation::kTypeI: return "type-i";
    case Relation::kTypeII: return "type-ii";
    case Relation::kCommutatorIdentity: return "commutator-identity";
  }
  return "unknown";
}

std::string to_string(ViolationClass violation) {
  switch (violation) {
    case ViolationClass::kNone: return "none";
    case ViolationClass::kTypeI: return "type-i";
    case ViolationClass::kTypeII: return "type-ii";
  }
  return "unknown";
}

InequalityReport check_kennard(const StateVector& state) {
  const double hbar = state.grid().hbar();
  const double lhs = std_dev(LinearObservable::position_a(), state) * std_dev(LinearObservable::momentum_a(), state);
  return bound(Relation::kKennard, "s(Q) s(P) >= hbar/2", lhs, 0.5 * hbar, kRelationTolerance);
}

InequalityReport check_kennard(const JointState& state) {
  const double hbar = state.grid_a().hbar();
  const double lhs = std_dev(LinearObservable::position_a(state.layout()), state) *
                     std_dev(LinearObservable::momentum_a(state.layout()), state);
  return bound(Relation::kKennard, "s(Q) s(P) >= hbar/2", lhs, 0.5 * hbar, kRelationTolerance);
}

InequalityReport check_robertson(const MatrixOperator& a, const MatrixOperator& b, const Eigen::VectorXcd& state) {
  const auto ha = MatrixOperator::observable(a.entries());
  const auto hb = MatrixOperator::observable(b.entries());
  if (ha.dimension() != hb.dimension() || static_cast<std::size_t>(state.size()) != ha.dimension()) {
    throw ValidationError("Robertson check: operator and state dimensions differ");
  }
  if (state.norm() == 0.0) throw ValidationError("Robertson check: zero state");
  const Eigen::VectorXcd c = state.normalized();
  const Eigen::MatrixXcd comm = a.entries() * b.entries() - b.entries() * a.entries();
  const double lhs = matrix_std_dev(a.entries(), c) * matrix_std_dev(b.entries(), c);
  const double rhs = 0.5 * std::abs(c.dot(comm * c));
  return bound(Relation::kRobertson, "s(A) s(B) >= |<[A,B]>|/2", lhs, rhs, kExactTolerance);
}

InequalityReport check_heisenberg(const MeasurementModel& model, const JointState& initial) {
  const double e = rms_error(model, initial);
  const double n = rms_disturbance(model, initial);
  return bound(Relation::kHeisenberg, "e(Q) n(P) >= hbar/2", e * n, 0.5 * model.hbar(), kRelationTolerance);
}

InequalityReport check_ozawa(const MeasurementModel& model, const JointState& initial) {
  const auto t = terms(model, initial);
  const double lhs = t.epsilon * t.eta + t.epsilon * t.sigma_p + t.sigma_q * t.eta;
  return bound(Relation::kOzawa, "e n + e s(P) + s(Q) n >= hbar/2", lhs, 0.5 * model.hbar(), kRelationTolerance);
}

bool DerivationLinks::all_hold() const {
  return noise_disturbance.satisfied && noise_momentum.satisfied && position_disturbance.satisfied &&
         triangle.satisfied;
}

DerivationLinks ozawa_derivation(const MeasurementModel& model, const JointState& initial) {
  const auto t = terms(model, initial);
  const double hbar = model.hbar();
  const auto n = noise_operator(model);
  const auto d = disturbance_operator(model);
  const auto q = LinearObservable::position_a(model.layout());
  const auto p = LinearObservable::momentum_a(model.layout());
  // Commutators of linear observables are c-numbers, so their expectation
  // is the coefficient-algebra value on every state.
  const double c_nd = 0.5 * std::abs(commutator_scalar(n, d, hbar));
  const double c_np = 0.5 * std::abs(commutator_scalar(n, p, hbar));
  const double c_qd = 0.5 * std::abs(commutator_scalar(q, d, hbar));
  DerivationLinks links;
  links.noise_disturbance = bound(Relation::kOzawa, "e n >= |<[N,D]>|/2", t.epsilon * t.eta, c_nd, kDerivationSlack);
  links.noise_momentum =
      bound(Relation::kOzawa, "e s(P) >= |<[N,P(0)]>|/2", t.epsilon * t.sigma_p, c_np, kDerivationSlack);
  links.position_disturbance =
      bound(Relation::kOzawa, "s(Q) n >= |<[Q(0),D]>|/2", t.sigma_q * t.eta, c_qd, kDerivationSlack);
  links.triangle = bound(Relation::kOzawa, "|<[N,D]>|/2 + |<[N,P(0)]>|/2 + |<[Q(0),D]>|/2 >= hbar/2",
                         c_nd + c_np + c_qd, 0.5 * hbar, kDerivationSlack);
  return links;
}

std::pair<InequalityReport, InequalityReport> check_type_bounds(const MeasurementModel& model,
                                                                const JointState& initial, double zero_threshold) {
  const auto t = terms(model, initial);
  const double half = 0.5 * model.hbar();
  auto type_i = bound(Relation::kTypeI, "e(Q) s(P) >= hbar/2", t.epsilon * t.sigma_p, half, kRelationTolerance);
  auto type_ii = bound(Relation::kTypeII, "s(Q) n(P) >= hbar/2", t.sigma_q * t.eta, half, kRelationTolerance);
  type_i.applicable = t.eta <= zero_threshold && t.epsilon > zero_threshold;
  type_ii.applicable = t.epsilon <= zero_threshold && t.eta > zero_threshold;
  return {type_i, type_ii};
}

InequalityReport check_commutator_identity(const MeasurementModel& model) {
  const double hbar = model.hbar();
  const cplx sum = identity_sum(
      model, [hbar](const LinearObservable& x, const LinearObservable& y) { return commutator_scalar(x, y, hbar); });
  return identity("[N,D] + [N,P(0)] + [Q(0),D] = -i hbar", sum, cplx(0.0, -hbar), kExactTolerance);
}

cplx grid_commutator_expectation(const LinearObservable& x, const LinearObservable& y, const JointState& state) {
  if (x.is_zero() || y.is_zero()) return 0.0;
  const auto xy = apply_linear(x, apply_linear(y, state));
  const auto yx = apply_linear(y, apply_linear(x, state));
  return inner(state.vector(), xy) - inner(state.vector(), yx);
}

InequalityReport check_commutator_identity(const MeasurementModel& model, const JointState& initial) {
  if (initial.layout() != model.layout()) {
    throw ValidationError("input state layout does not match model '" + model.name() + "'");
  }
  const cplx sum = identity_sum(model, [&initial](const LinearObservable& x, const LinearObservable& y) {
    return grid_commutator_expectation(x, y, initial);
  });
  return identity("<[N,D] + [N,P(0)] + [Q(0),D]> = -i hbar (grid)", sum, cplx(0.0, -model.hbar()),
                  kGridIdentityTolerance);
}

IndependentIntervention check_independent_intervention(const MeasurementModel& model) {
  const auto n = noise_operator(model);
  const auto d = disturbance_operator(model);
  const double hbar = model.hbar();
  IndependentIntervention out;
  out.independent = !n.acts_on_a() && !d.acts_on_a();
  const auto q = LinearObservable::position_a(model.layout());
  const auto p = LinearObservable::momentum_a(model.layout());
  const cplx cross = commutator_scalar(n, p, hbar) + commutator_scalar(q, d, hbar);
  const cplx main = commutator_scalar(n, -d, hbar);
  // Report [N,-D] against i hbar; the vanishing cross terms enter the margin.
  out.report = identity("[N,-D] = i hbar with [N,P(0)] = [Q(0),D] = 0", main + cross, cplx(0.0, hbar),
                        kExactTolerance);
  out.report.applicable = out.independent;
  return out;
}

ViolationClass classify_violation(double epsilon, double eta, double zero_threshold) {
  if (!(epsilon >= 0.0) || !(eta >= 0.0)) throw ValidationError("noise and disturbance must be non-negative");
  const bool e_zero = epsilon <= zero_threshold;
  const bool n_zero = eta <= zero_threshold;
  if (e_zero && n_zero) {
    throw ValidationError(
        "noise and disturbance both vanish; the universal error-disturbance bound excludes e(Q) = n(P) = 0");
  }
  if (n_zero) return ViolationClass::kTypeI;
  if (e_zero && std::isfinite(eta)) return ViolationClass::kTypeII;
  return ViolationClass::kNone;
}

RelationTable evaluate_relations(const MeasurementModel& model, const JointState& initial) {
  RelationTable table;
  table.metrics = evaluate_noise_disturbance(model, initial);
  const auto& m = table.metrics;
  const double half = 0.5 * model.hbar();
  table.relations.push_back(
      bound(Relation::kKennard, "s(Q) s(P) >= hbar/2", m.sigma_q_in * m.sigma_p_in, half, kRelationTolerance));
  table.relations.push_back(check_heisenberg(model, initial));
  table.relations.push_back(check_ozawa(model, initial));
  const auto [type_i, type_ii] = check_type_bounds(model, initial);
  table.relations.push_back(type_i);
  table.relations.push_back(type_ii);
  table.relations.push_back(check_commutator_identity(model));
  table.derivation = ozawa_derivation(model, initial);
  table.classification = classify_violation(m.epsilon, m.eta);
  return table;
}

}  // namespace edlab
