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

#include "edlab/models/model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "edlab/error.hpp"
#include "edlab/models/model_io.hpp"
#include "test_support.hpp"

namespace edlab {
namespace {

using testing::reference_grid;

const auto kQ = LinearObservable::position_a();
const auto kP = LinearObservable::momentum_a();
const auto kQ0 = LinearObservable::position_b();
const auto kP0 = LinearObservable::momentum_b();

StateVector reference_probe(double sigma = 0.5) { return gaussian_state(reference_grid(), 0.0, 0.0, sigma); }

std::vector<MeasurementModel> all_models() {
  return {build_von_neumann(reference_probe()), build_zero_coupling(reference_probe()),
          build_ozawa_contractive(reference_probe(1.0)), build_epr_indirect()};
}

TEST(VonNeumannModelTest, InputOutputRelations) {
  const auto model = build_von_neumann(reference_probe());
  EXPECT_EQ(model.io_map().meter_out, kQ + kQ0);
  EXPECT_EQ(model.io_map().momentum_out, kP - kP0);
  EXPECT_EQ(model.meter(), kQ0);
  EXPECT_EQ(model.object_arity(), 1);
  EXPECT_EQ(model.propagator_kind(), PropagatorKind::kTranslationKernel);
}

TEST(OzawaModelTest, InputOutputRelations) {
  const auto model = build_ozawa_contractive(reference_probe(1.0));
  EXPECT_EQ(model.io_map().meter_out, kQ);
  EXPECT_EQ(model.io_map().momentum_out, kP0);
  EXPECT_EQ(model.propagator_kind(), PropagatorKind::kPointTransform);
  EXPECT_FALSE(build_ozawa_contractive(reference_probe(1.0), 0.5).has_propagator());
}

TEST(EprModelTest, InputOutputRelations) {
  const auto model = build_epr_indirect();
  EXPECT_EQ(model.object_arity(), 2);
  EXPECT_FALSE(model.probe().has_value());
  EXPECT_EQ(model.io_map().meter_out, LinearObservable::position_b(FactorLayout::kParticlePair));
  EXPECT_EQ(model.io_map().momentum_out, LinearObservable::momentum_a(FactorLayout::kParticlePair));
  EXPECT_THROW(model.prepare(reference_probe()), ValidationError);
  EXPECT_THROW(build_epr_indirect(-0.1), ValidationError);
}

TEST(ModelTest, OutputsCommuteExactlyForEveryBuilder) {
  for (const auto& model : all_models()) {
    EXPECT_EQ(commutator_scalar(model.io_map().meter_out, model.io_map().momentum_out, model.hbar()),
              std::complex<double>(0.0, 0.0))
        << model.name();
  }
}

TEST(ModelTest, ProbeMustBeLocalized) {
  const GridSpec grid(64, 8.0);
  std::vector<cplx> flat(64, cplx(1.0));
  const auto spread = StateVector::normalized(grid, flat);
  EXPECT_THROW(build_von_neumann(spread), ValidationError);
  EXPECT_THROW(build_ozawa_contractive(spread), ValidationError);
  EXPECT_LT(edge_mass(reference_probe()), 1e-10);
}

TEST(SymplecticMapTest, KnownModels) {
  const Eigen::Matrix4d vn = symplectic_map(build_von_neumann(reference_probe())).matrix;
  Eigen::Matrix4d expected_vn;
  expected_vn << 1, 0, 0, 0,  //
      0, 1, 0, -1,            //
      1, 0, 1, 0,             //
      0, 0, 0, 1;
  EXPECT_EQ(vn, expected_vn);
  EXPECT_EQ(symplectic_map(build_zero_coupling(reference_probe())).matrix, Eigen::Matrix4d::Identity());
  EXPECT_EQ(symplectic_map(build_von_neumann(reference_probe(), 0.0)).matrix, Eigen::Matrix4d::Identity());
  EXPECT_EQ(symplectic_map(build_epr_indirect()).matrix, Eigen::Matrix4d::Identity());

  const auto oz = symplectic_map(build_ozawa_contractive(reference_probe(1.0)));
  EXPECT_EQ(oz.row(2, FactorLayout::kObjectProbe), kQ);
  EXPECT_EQ(oz.row(1, FactorLayout::kObjectProbe), kP0);
  EXPECT_EQ(oz.row(0, FactorLayout::kObjectProbe), kQ + kQ0);
  EXPECT_EQ(oz.row(3, FactorLayout::kObjectProbe), kP - kP0);
}

TEST(SymplecticMapTest, AllCouplingsAreSymplectic) {
  for (double k : {-1.5, -0.3, 0.25, 0.5, 1.0, 2.0, 3.7}) {
    EXPECT_LT(symplectic_map(build_von_neumann(reference_probe(), k)).symplectic_residual(), 1e-12) << k;
    EXPECT_LT(symplectic_map(build_ozawa_contractive(reference_probe(1.0), k)).symplectic_residual(), 1e-12) << k;
  }
}

TEST(SymplecticMapTest, CompletionOfCustomRows) {
  const IoMap io{kQ + kQ0, kP - kP0};
  const auto model = build_custom_model("my-meter", reference_probe(), io);
  const auto s = symplectic_map(model);
  EXPECT_LT(s.symplectic_residual(), 1e-12);
  EXPECT_EQ(s.row(2, FactorLayout::kObjectProbe), io.meter_out);
  EXPECT_EQ(s.row(1, FactorLayout::kObjectProbe), io.momentum_out);
  EXPECT_FALSE(model.has_propagator());

  // Scaled meter with offset still completes.
  const IoMap scaled{2.0 * kQ + 0.5 * kQ0 + LinearObservable::scalar(0.1), kP - 4.0 * kP0};
  EXPECT_LT(symplectic_map(build_custom_model("scaled", reference_probe(), scaled)).symplectic_residual(), 1e-12);

  // [M, P] != 0 has no completion.
  EXPECT_THROW(build_custom_model("bad", reference_probe(), IoMap{kQ, kP}), ValidationError);
  // Linearly dependent rows have no completion.
  EXPECT_THROW(complete_symplectic(Eigen::Vector4d(1, 0, 0, 0), Eigen::Vector4d(2, 0, 0, 0)), ValidationError);
}

TEST(PropagatorTest, VonNeumannIntegerShiftIsAnExactRoll) {
  const GridSpec grid(64, 16.0);
  const auto psi = gaussian_state(grid, 0.0, 0.3, 1.0);
  const auto xi = gaussian_state(grid, 0.0, 0.0, 1.0);
  const auto model = build_von_neumann(xi);
  const auto out = model.propagate(model.prepare(psi));
  for (std::size_t a = 0; a < 64; ++a) {
    for (std::size_t b = 0; b < 64; ++b) {
      // x_a is a whole number of probe steps: xi(y - x_a) = xi at index b - a + 32.
      const std::size_t src = (b + 64 + 32 - a) % 64;
      EXPECT_EQ(out.vector().at(a, b), psi.amplitudes()[a] * xi.amplitudes()[src]);
    }
  }
}

TEST(PropagatorTest, ZeroCouplingAndEprAreIdentity) {
  const auto psi = gaussian_state(reference_grid(), 1.0, 0.5, 1.0);
  const auto model = build_zero_coupling(reference_probe());
  const auto initial = model.prepare(psi);
  const auto out = model.propagate(initial);
  for (std::size_t k = 0; k < out.amplitudes().size(); k += 997) EXPECT_EQ(out.amplitudes()[k], initial.amplitudes()[k]);

  const GridSpec pair_grid(64, 16.0);
  const auto pair = epr_correlated_state(pair_grid, {.sigma_center = 1.0, .alpha = 0.5});
  const auto same = build_epr_indirect().propagate(pair);
  EXPECT_EQ(same.amplitudes()[100], pair.amplitudes()[100]);
  EXPECT_THROW(build_von_neumann(reference_probe()).propagate(pair), ValidationError);
}

TEST(PropagatorTest, OzawaNeedsMatchingGridsAndUnitCoupling) {
  const auto model = build_ozawa_contractive(gaussian_state(GridSpec(64, 16.0), 0, 0, 1.0));
  const auto mismatched = tensor(gaussian_state(GridSpec(128, 16.0), 0, 0, 1.0), *model.probe());
  EXPECT_THROW(model.propagate(mismatched), ValidationError);
  const auto half = build_ozawa_contractive(gaussian_state(GridSpec(64, 16.0), 0, 0, 1.0), 0.5);
  EXPECT_THROW(half.propagate(half.prepare(*half.probe())), ValidationError);
}

// Cross-validation contract: moments of M(dt), P(dt) from the io_map on the
// input agree with moments of the meter and object momentum on the
// propagated state.
void expect_moments_match(const MeasurementModel& model, const JointState& initial, double tol) {
  const auto final_state = model.propagate(initial);
  const auto momentum = model.layout() == FactorLayout::kParticlePair
                            ? LinearObservable::momentum_a(FactorLayout::kParticlePair)
                            : kP;
  const std::pair<LinearObservable, LinearObservable> checks[] = {{model.io_map().meter_out, model.meter()},
                                                                  {model.io_map().momentum_out, momentum}};
  for (const auto& [heisenberg, schroedinger] : checks) {
    const double m_h = expectation(heisenberg, initial);
    const double m_s = expectation(schroedinger, final_state);
    EXPECT_NEAR(m_h, m_s, tol) << model.name() << " " << heisenberg.describe();
    const double s_h = std_dev(heisenberg, initial);
    const double s_s = std_dev(schroedinger, final_state);
    EXPECT_NEAR(s_h * s_h + m_h * m_h, s_s * s_s + m_s * m_s, tol) << model.name() << " " << heisenberg.describe();
  }
}

TEST(PropagatorTest, MomentsMatchIoMapOnTheReferenceGrid) {
  const auto grid = reference_grid();
  Rng rng(8);
  for (int trial = 0; trial < 3; ++trial) {
    const auto psi = random_localized_state(grid, rng, {.max_sigma = 1.2, .max_abs_mean_q = 2.0});
    const auto vn = build_von_neumann(reference_probe());
    expect_moments_match(vn, vn.prepare(psi), 1e-3);
    const auto oz = build_ozawa_contractive(gaussian_state(grid, 0.3, -0.2, 1.0));
    expect_moments_match(oz, oz.prepare(psi), 1e-3);
  }
  // Fractional shifts exercise band-limited interpolation.
  const auto vn_frac = build_von_neumann(gaussian_state(GridSpec(512, 40.0), 0, 0, 0.5), 0.37);
  expect_moments_match(vn_frac, vn_frac.prepare(gaussian_state(grid, 0.5, 0.5, 1.0)), 1e-3);
}

TEST(HamiltonianMatrixTest, VonNeumannOracleReproducesIoMapAtN64) {
  const GridSpec grid(64, 16.0);
  const auto xi = gaussian_state(grid, 0.0, 0.0, 1.0);
  const auto psi = gaussian_state(grid, 0.5, 0.3, 1.0);
  const auto model = build_von_neumann(xi);
  const auto h = hamiltonian_matrix(model, grid, grid);
  EXPECT_LT(h.hermiticity_residual(), 1e-12);
  const auto initial = model.prepare(psi);
  const auto evolved = matrix_oracle_evolve(h, 1.0, to_coefficients(initial.vector()));
  const auto oracle = JointState::normalized(joint_from_coefficients(grid, grid, FactorLayout::kObjectProbe, evolved));
  // The oracle and the translation kernel agree amplitude by amplitude.
  const auto kernel = model.propagate(initial);
  double diff = 0.0;
  for (std::size_t k = 0; k < kernel.amplitudes().size(); ++k) diff = std::max(diff, std::abs(kernel.amplitudes()[k] - oracle.amplitudes()[k]));
  EXPECT_LT(diff, 1e-9);
  EXPECT_NEAR(expectation(kQ0, oracle), expectation(kQ0, initial) + expectation(kQ, initial), 1e-3);
  EXPECT_NEAR(expectation(kP, oracle), expectation(kP - kP0, initial), 1e-3);
}

TEST(HamiltonianMatrixTest, OzawaSymmetricFormIsHermitianAndLiteralFormIsNot) {
  const GridSpec grid(32, 12.0);
  const auto model = build_ozawa_contractive(reference_probe(1.0));
  const auto h = hamiltonian_matrix(model, grid, grid);
  EXPECT_LT(h.hermiticity_residual(), 1e-10);
  const auto literal = ozawa_literal_hamiltonian_matrix(1.0, grid, grid);
  EXPECT_GT(literal.hermiticity_residual(), 1.0);
  // The two forms differ only in their anti-Hermitian part.
  const Eigen::MatrixXcd herm_part = 0.5 * (literal.entries() + literal.entries().adjoint());
  EXPECT_LT((herm_part - h.entries()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(HamiltonianMatrixTest, GuardsAndTrivialModels) {
  const GridSpec big(128, 16.0);
  const auto model = build_von_neumann(gaussian_state(big, 0, 0, 1.0));
  EXPECT_THROW(hamiltonian_matrix(model, big, big), ValidationError);
  const GridSpec grid(16, 8.0);
  const auto zero = hamiltonian_matrix(build_epr_indirect(), grid, grid);
  EXPECT_EQ(zero.entries().cwiseAbs().maxCoeff(), 0.0);
  const auto custom = build_custom_model("c", reference_probe(), IoMap{kQ + kQ0, kP - kP0});
  EXPECT_THROW(hamiltonian_matrix(custom, grid, grid), ValidationError);
  EXPECT_EQ(probe_parity_matrix(GridSpec(8, 8.0)).entries()(0, 0), cplx(1.0));
  EXPECT_EQ(probe_parity_matrix(GridSpec(8, 8.0)).entries()(7, 1), cplx(1.0));
}

TEST(PairStateTest, RelativeVarianceEqualsAlphaSquared) {
  const auto grid = reference_grid();
  for (double alpha : {0.5, 0.2, 0.1}) {
    const auto pair = epr_correlated_state(grid, {.sigma_center = 1.0, .alpha = alpha});
    const auto rel = LinearObservable::position_a(FactorLayout::kParticlePair) -
                     LinearObservable::position_b(FactorLayout::kParticlePair);
    const auto routes = variance_routes(rel, pair);
    EXPECT_NEAR(routes.second_moment, alpha * alpha, 1e-10);
    double total = 0.0;
    for (double w : pair.marginal_a()) total += w;
    EXPECT_NEAR(total, 1.0, 1e-10);
  }
}

TEST(PairStateTest, GuardsNameTheMargin) {
  const auto grid = reference_grid();
  auto message = [&](PairStateParams p) -> std::string {
    try {
      epr_correlated_state(grid, p);
    } catch (const ValidationError& e) {
      return e.what();
    }
    return "";
  };
  EXPECT_NE(message({.alpha = 0.05}).find("resolution margin"), std::string::npos);
  EXPECT_NE(message({.center = 16.0}).find("position margin"), std::string::npos);
  EXPECT_NE(message({.momentum_relative = 30.0}).find("momentum margin"), std::string::npos);
  EXPECT_NE(message({.alpha = std::numeric_limits<double>::infinity()}).find("normalizable"), std::string::npos);
}

TEST(ModelJsonTest, RoundTripsEveryKind) {
  GaussianParams probe;
  probe.sigma_q = 0.5;
  GaussianParams oz_probe = probe;
  oz_probe.sigma_q = 1.0;
  const MeasurementModel models[] = {
      build_model(ModelKind::kVonNeumann, probe), build_model(ModelKind::kZeroCoupling, probe),
      build_model(ModelKind::kOzawa, oz_probe), build_model(ModelKind::kEpr, probe, 1.0, 0.25),
      with_probe_params(build_custom_model("mine", probe.state(), IoMap{kQ + kQ0, kP - kP0}), probe)};
  for (const auto& model : models) {
    const auto text = model_to_json(model);
    const auto back = model_from_json(text);
    EXPECT_EQ(back.kind(), model.kind());
    EXPECT_EQ(back.name(), model.name());
    EXPECT_EQ(back.io_map().meter_out, model.io_map().meter_out);
    EXPECT_EQ(back.io_map().momentum_out, model.io_map().momentum_out);
    EXPECT_EQ(back.readout_width(), model.readout_width());
    EXPECT_EQ(model_to_json(back), text);
  }
}

TEST(ModelJsonTest, RejectsMalformedDocuments) {
  GaussianParams probe;
  const auto text = model_to_json(build_model(ModelKind::kVonNeumann, probe));
  EXPECT_THROW(model_from_json("{"), ValidationError);
  EXPECT_THROW(model_from_json(text.substr(0, text.size() - 1) + ", \"extra\": 1}"), ValidationError);
  auto tampered = text;
  tampered.replace(tampered.find("\"q0\": 1.0"), 9, "\"q0\": 2.0");
  EXPECT_THROW(model_from_json(tampered), ValidationError);
  EXPECT_THROW(model_to_json(build_von_neumann(reference_probe())), ValidationError);
}

}  // namespace
}  // namespace edlab
