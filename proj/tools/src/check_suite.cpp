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

#include "edlab_app/check_suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "edlab/error.hpp"
#include "edlab/hilbert/matrix.hpp"
#include "edlab/hilbert/random_state.hpp"
#include "edlab/inequalities/inequalities.hpp"
#include "edlab/metrics/ensemble.hpp"
#include "edlab/metrics/noise_disturbance.hpp"
#include "edlab/metrics/povm.hpp"
#include "edlab_app/config.hpp"
#include "edlab_app/report_io.hpp"
#include "edlab_app/runner.hpp"

namespace edlab::app {
namespace {

// Tracks the pass/fail state and worst values of one check.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 3) failures_.push_back(what);
    passed_ = passed_ && ok;
  }
  void near(double value, double target, double tol, const std::string& what) {
    const double err = std::abs(value - target);
    worst(what, err);
    expect(err <= tol, what + " = " + fmt(value) + " (target " + fmt(target) + ")");
  }
  // value >= bound - slack; the reported margin is value - bound.
  void at_least(double value, double bound, double slack, const std::string& what) {
    min_margin_ = std::min(min_margin_, value - bound);
    expect(value >= bound - slack, what + " = " + fmt(value) + " < " + fmt(bound));
  }
  void worst(const std::string& what, double err) {
    if (err > worst_err_) {
      worst_err_ = err;
      worst_what_ = what;
    }
  }
  CheckResult result(const std::string& id, const std::string& description) const {
    CheckResult r{id, description, passed_, "", 0.0};
    std::ostringstream d;
    if (!worst_what_.empty()) d << "max error " << fmt(worst_err_) << " (" << worst_what_ << ")";
    if (min_margin_ < 1e300) d << (d.tellp() > 0 ? "; " : "") << "min margin " << fmt(min_margin_);
    for (const auto& f : failures_) d << "; FAILED " << f;
    r.detail = d.str();
    return r;
  }
  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
  }

 private:
  bool passed_ = true;
  double worst_err_ = 0.0;
  std::string worst_what_;
  double min_margin_ = 1e301;
  std::vector<std::string> failures_;
};

const GridSpec& reference_grid() {
  static const GridSpec grid(512, 40.0);
  return grid;
}

StateVector probe(double sigma) { return gaussian_state(reference_grid(), 0.0, 0.0, sigma); }

MeasurementModel von_neumann() { return build_von_neumann(probe(0.5)); }
MeasurementModel ozawa() { return build_ozawa_contractive(probe(1.0)); }
MeasurementModel epr() { return build_epr_indirect(); }

JointState random_initial(const MeasurementModel& model, Rng& rng) {
  if (model.layout() == FactorLayout::kParticlePair) return random_pair_state(reference_grid(), rng);
  return model.prepare(random_localized_state(reference_grid(), rng));
}

double second_moment(const LinearObservable& obs, const JointState& state) {
  const double mean = expectation(obs, state);
  const double sigma = std_dev(obs, state);
  return sigma * sigma + mean * mean;
}

CheckResult kennard() {
  Tally t;
  const auto r = check_kennard(gaussian_state(reference_grid(), 0.0, 0.0, 1.0));
  t.near(r.lhs, 0.5, 1e-6, "s(Q)s(P)");
  return t.result("1", "Kennard saturation for a sigma=1 Gaussian at N=512, L=40");
}

CheckResult von_neumann_metrics() {
  Tally t;
  const auto model = von_neumann();
  Rng rng(2);
  for (int i = 0; i < 5; ++i) {
    const auto input = random_localized_state(reference_grid(), rng);
    const auto m = evaluate_noise_disturbance(model, input);
    t.near(m.epsilon, 0.5, 1e-4, "e");
    t.near(m.eta, 1.0, 1e-4, "n");
    t.near(m.epsilon * m.eta, 0.5, 1e-4, "e n");
  }
  return t.result("2", "von Neumann: e=0.5, n=1.0 for five inputs; e n = hbar/2");
}

CheckResult ozawa_metrics() {
  Tally t;
  const auto model = ozawa();
  t.expect(noise_operator(model).is_zero(), "noise operator is not zero");
  const auto input = gaussian_state(reference_grid(), 0.3, 0.5, 1.0);
  const auto initial = model.prepare(input);
  t.expect(rms_error(model, initial) == 0.0, "e != 0");
  const double eta = rms_disturbance(model, initial);
  const auto p = LinearObservable::momentum_a();
  const auto p0 = LinearObservable::momentum_b();
  const double formula = second_moment(p0, initial) + second_moment(p, initial) -
                         2.0 * expectation(p0, initial) * expectation(p, initial);
  t.near(eta * eta, formula, 1e-6, "n^2 vs <P0^2>+<P^2>-2<P0><P>");
  t.expect(!check_heisenberg(model, initial).satisfied, "Heisenberg reported satisfied");
  t.expect(classify_violation(0.0, eta) == ViolationClass::kTypeII, "classification is not TypeII");
  for (double sigma : {0.5, 1.0, 2.0}) {
    const auto [type_i, type_ii] = check_type_bounds(model, model.prepare(gaussian_state(reference_grid(), 0, 0, sigma)));
    t.at_least(type_ii.lhs, 0.5, 1e-6, "s(Q) n");
  }
  return t.result("3", "Ozawa: e=0 exactly, n^2 formula, Heisenberg violated, TypeII bound");
}

CheckResult epr_sweep() {
  Tally t;
  const auto model = epr();
  double previous_sigma_p = 0.0;
  for (double alpha : {0.5, 0.2, 0.1}) {
    PairStateParams params;
    params.alpha = alpha;
    const auto state = epr_correlated_state(reference_grid(), params);
    const auto m = evaluate_noise_disturbance(model, state);
    t.expect(m.eta == 0.0, "n != 0");
    t.near(m.epsilon, alpha, 1e-6, "e vs alpha");
    t.at_least(m.epsilon * m.sigma_p_in, 0.5, 1e-6, "e s(P1)");
    t.expect(m.sigma_p_in > previous_sigma_p, "s(P1) not increasing");
    previous_sigma_p = m.sigma_p_in;
  }
  return t.result("4", "EPR alpha sweep: n=0, e=alpha, TypeI bound, s(P1) increasing");
}

CheckResult commutator_identity() {
  Tally t;
  Rng rng(5);
  for (const auto& model : {von_neumann(), ozawa(), epr()}) {
    const auto exact = check_commutator_identity(model);
    t.near(exact.margin, 0.0, 1e-12, model.name() + " coefficient algebra");
    for (int i = 0; i < 20; ++i) {
      const auto grid = check_commutator_identity(model, random_initial(model, rng));
      t.near(grid.margin, 0.0, 1e-3, model.name() + " grid path");
    }
  }
  return t.result("5", "Commutator identity: exact to 1e-12, grid path to 1e-3 on 20 states per model");
}

CheckResult universal_bound() {
  Tally t;
  Rng rng(6);
  for (const auto& model : {von_neumann(), ozawa(), epr()}) {
    for (int i = 0; i < 50; ++i) {
      const auto initial = random_initial(model, rng);
      t.at_least(check_ozawa(model, initial).lhs, 0.5, 1e-6, model.name() + " universal bound");
      const auto links = ozawa_derivation(model, initial);
      for (const auto* link : {&links.noise_disturbance, &links.noise_momentum, &links.position_disturbance,
                               &links.triangle}) {
        t.at_least(link->lhs, link->rhs, 1e-8, model.name() + " " + link->label);
      }
    }
  }
  return t.result("6", "Universal bound on 3 models x 50 random states; every derivation link");
}

LocalizedStateOptions povm_options() {
  LocalizedStateOptions o;
  o.min_sigma = 0.5;
  o.max_sigma = 0.6;
  o.max_abs_mean_q = 0.3;
  return o;
}

CheckResult povm() {
  Tally t;
  Rng rng(7);
  const GridSpec object(64, 8.0);
  {
    const auto model = build_von_neumann(gaussian_state(GridSpec(64, 16.0), 0.0, 0.0, 1.0));
    const auto p = extract_povm(model, object);
    t.near(p.completeness_residual, 0.0, 1e-8, "von-neumann completeness");
    const auto target = povm_target(model, object);
    for (int i = 0; i < 20; ++i) {
      const auto input = random_localized_state(object, rng, povm_options());
      t.near(povm_distance(p, target, input).distance, rms_error(model, input), 1e-6, "von-neumann d vs e");
    }
  }
  {
    const auto model = build_ozawa_contractive(gaussian_state(object, 0.0, 0.0, 0.5));
    const auto p = extract_povm(model, object);
    t.near(p.completeness_residual, 0.0, 1e-8, "ozawa completeness");
    for (std::size_t y = 0; y < p.bins.size(); ++y) {
      Eigen::MatrixXcd projection = Eigen::MatrixXcd::Zero(64, 64);
      projection(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(y)) = 1.0;
      t.near((p.bins[y].effect.entries() - projection).cwiseAbs().maxCoeff(), 0.0, 1e-8, "ozawa spectral projection");
    }
    const auto target = povm_target(model, object);
    for (int i = 0; i < 20; ++i) {
      const auto input = random_localized_state(object, rng, povm_options());
      t.near(povm_distance(p, target, input).distance, rms_error(model, input), 1e-6, "ozawa d vs e");
    }
  }
  {
    const GridSpec pair_grid(16, 8.0);
    const auto model = epr();
    const auto p = extract_povm(model, pair_grid);
    t.near(p.completeness_residual, 0.0, 1e-8, "epr completeness");
    const auto target = povm_target(model, pair_grid);
    for (int i = 0; i < 20; ++i) {
      std::vector<cplx> amps(pair_grid.n_points() * pair_grid.n_points());
      for (auto& a : amps) a = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
      const auto state = JointState::normalized(JointVector(pair_grid, pair_grid, FactorLayout::kParticlePair, amps));
      t.near(povm_distance(p, target, state).distance, rms_error(model, state), 1e-6, "epr d vs e");
    }
  }
  return t.result("7", "POVM completeness, d(Pi,Q)=e on 3 models x 20 states, Ozawa spectral projections");
}

CheckResult mixture_identity() {
  Tally t;
  const auto model = von_neumann();
  Rng rng(8);
  std::vector<StateVector> inputs = {gaussian_state(reference_grid(), 0.3, 0.4, 1.0)};
  for (int i = 0; i < 3; ++i) inputs.push_back(random_localized_state(reference_grid(), rng));
  for (const auto& input : inputs) {
    const auto r = verify_mixture_identity(model, model.prepare(input));
    t.near(r.relative_residual, 0.0, 1e-6, "relative mixture residual");
    t.expect(r.variance_bound_holds, "averaged variance bound");
    t.expect(r.witness_found, "positive-probability witness");
  }
  return t.result("8", "Mixture identity (von Neumann), variance bound and witness");
}

CheckResult oracle() {
  Tally t;
  const GridSpec grid(64, 16.0);
  const auto model = build_von_neumann(gaussian_state(grid, 0.0, 0.0, 1.0));
  const auto initial = model.prepare(gaussian_state(grid, 0.5, 0.3, 1.0));
  const auto h = hamiltonian_matrix(model, grid, grid);
  const auto evolved = matrix_oracle_evolve(h, 1.0, to_coefficients(initial.vector()));
  const auto final_state =
      JointState::normalized(joint_from_coefficients(grid, grid, FactorLayout::kObjectProbe, evolved));
  const auto& io = model.io_map();
  const auto meter = model.meter();
  const auto p = LinearObservable::momentum_a();
  t.near(expectation(meter, final_state), expectation(io.meter_out, initial), 1e-3, "<M>");
  t.near(expectation(p, final_state), expectation(io.momentum_out, initial), 1e-3, "<P>");
  t.near(second_moment(meter, final_state), second_moment(io.meter_out, initial), 1e-3, "<M^2>");
  t.near(second_moment(p, final_state), second_moment(io.momentum_out, initial), 1e-3, "<P^2>");
  const GridSpec small(32, 12.0);
  const auto oz = ozawa();
  t.near(hamiltonian_matrix(oz, small, small).hermiticity_residual(), 0.0, 1e-10, "Ozawa Hermiticity residual");
  return t.result("9", "Matrix oracle at N=64 reproduces io_map moments; Ozawa H Hermitian");
}

CheckResult robertson() {
  Tally t;
  Rng rng(10);
  auto random_hermitian = [&rng](Eigen::Index dim) {
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
    }
    return Eigen::MatrixXcd(0.5 * (m + m.adjoint()));
  };
  for (int i = 0; i < 100; ++i) {
    const auto dim = static_cast<Eigen::Index>(2 + i % 7);
    const auto a = random_hermitian(dim);
    const auto b = random_hermitian(dim);
    Eigen::VectorXcd c(dim);
    for (auto& v : c) v = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
    const auto r = check_robertson(MatrixOperator(a), MatrixOperator(b), c);
    t.at_least(r.lhs, r.rhs, 1e-12, "Robertson");
  }
  return t.result("10", "Robertson on 100 random Hermitian pairs, dim <= 8");
}

CheckResult route_agreement() {
  Tally t;
  Rng rng(11);
  for (const auto& model : {von_neumann(), ozawa()}) {
    for (int i = 0; i < 10; ++i) {
      const auto initial = random_initial(model, rng);
      for (const auto& r : {rms_error_routes(model, initial), rms_disturbance_routes(model, initial)}) {
        t.near(r.moment, r.geometric, 1e-8 * std::max(1.0, r.geometric), model.name() + " moment vs geometric");
      }
      const auto m = evaluate_noise_disturbance(model, initial);
      t.at_least(m.deviation_slack_m, 0.0, 1e-8, "deviation bound (M)");
      t.at_least(m.deviation_slack_p, 0.0, 1e-8, "deviation bound (P)");
    }
  }
  return t.result("routes", "Moment and geometric routes agree; deviation bounds hold");
}

CheckResult independent_intervention() {
  Tally t;
  Rng rng(12);
  LocalizedStateOptions probe_options;
  probe_options.min_sigma = 0.5;
  probe_options.max_sigma = 1.0;
  probe_options.max_abs_mean_q = 1.0;
  for (int i = 0; i < 20; ++i) {
    const auto model = build_von_neumann(random_localized_state(reference_grid(), rng, probe_options));
    t.expect(check_independent_intervention(model).independent, "von Neumann not independent");
    const auto r = check_heisenberg(model, model.prepare(random_localized_state(reference_grid(), rng)));
    t.at_least(r.lhs, r.rhs, r.tolerance, "Heisenberg");
  }
  return t.result("independent", "Independent intervention implies Heisenberg (20 random probes and inputs)");
}

CheckResult uniform_classification() {
  Tally t;
  Rng rng(13);
  const auto vn = von_neumann();
  const auto oz = ozawa();
  for (int i = 0; i < 5; ++i) {
    const auto input = random_localized_state(reference_grid(), rng);
    const auto a = evaluate_noise_disturbance(vn, input);
    const auto b = evaluate_noise_disturbance(oz, input);
    t.expect(classify_violation(a.epsilon, a.eta) == ViolationClass::kNone, "von Neumann class");
    t.expect(classify_violation(b.epsilon, b.eta) == ViolationClass::kTypeII, "Ozawa class");
  }
  return t.result("uniform", "Violation class is input-independent (von Neumann, Ozawa)");
}

CheckResult rest_mass() {
  Tally t;
  const auto model = von_neumann();
  for (double width : {0.2, 0.1, 0.05}) {
    t.near(rest_mass_disturbance_identity(model, width).residual, width * width, 1e-8, "rest-mass residual");
  }
  return t.result("rest-mass", "Rest-mass identity residual equals the input momentum spread squared");
}

CheckResult determinism() {
  Tally t;
  ScenarioConfig config;
  config.scenario = "ozawa";
  config.input.random_states = 2;
  config.seed = 99;
  const auto a = scenario_report(config, run_scenario(config), "json");
  const auto b = scenario_report(config, run_scenario(config), "json");
  t.expect(a == b, "reports differ");
  return t.result("determinism", "Seeded scenario reports are byte-identical");
}

}  // namespace

std::vector<NamedCheck> acceptance_checks() {
  return {{"1", "Kennard", kennard},
          {"2", "von Neumann metrics", von_neumann_metrics},
          {"3", "Ozawa metrics", ozawa_metrics},
          {"4", "EPR sweep", epr_sweep},
          {"5", "Commutator identity", commutator_identity},
          {"6", "Universal bound", universal_bound},
          {"7", "POVM", povm},
          {"8", "Mixture identity", mixture_identity},
          {"9", "Matrix oracle", oracle},
          {"10", "Robertson", robertson}};
}

std::vector<NamedCheck> invariant_checks() {
  return {{"routes", "Route agreement", route_agreement},
          {"independent", "Independent intervention", independent_intervention},
          {"uniform", "Uniform classification", uniform_classification},
          {"rest-mass", "Rest-mass identity", rest_mass},
          {"determinism", "Determinism", determinism}};
}

std::vector<CheckResult> run_checks(const std::vector<NamedCheck>& checks,
                                    const std::function<void(const CheckResult&)>& on_result) {
  std::vector<CheckResult> results;
  for (const auto& check : checks) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = check.run();
    } catch (const std::exception& e) {
      r = {check.id, check.description, false, std::string("exception: ") + e.what(), 0.0};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_line(const CheckResult& r) {
  char seconds[32];
  std::snprintf(seconds, sizeof(seconds), "%.2f s", r.seconds);
  return std::string(r.passed ? "PASS" : "FAIL") + " [" + r.id + "] " + r.description + " (" +
         (r.detail.empty() ? "" : r.detail + ", ") + seconds + ")";
}

std::string check_report(const std::vector<CheckResult>& results, const std::string& format) {
  if (format == "csv") {
    std::ostringstream out;
    out << "# " << kReportSchema << "\nid,passed,description,detail\n";
    for (const auto& r : results) {
      out << r.id << ',' << (r.passed ? "true" : "false") << ",\"" << r.description << "\",\"" << r.detail << "\"\n";
    }
    return out.str();
  }
  if (format != "json") throw ValidationError("format: expected json or csv");
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["command"] = "check";
  auto checks = nlohmann::ordered_json::array();
  bool all = true;
  for (const auto& r : results) {
    checks.push_back({{"id", r.id}, {"passed", r.passed}, {"description", r.description}, {"detail", r.detail}});
    all = all && r.passed;
  }
  j["passed"] = all;
  j["checks"] = checks;
  return j.dump(2) + "\n";
}

}  // namespace edlab::app
