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

#include <gtest/gtest.h>

#include <cmath>

#include "edlab/error.hpp"
#include "edlab/hilbert/random_state.hpp"
#include "test_support.hpp"

namespace edlab {
namespace {

using testing::reference_grid;

StateVector reference_probe(double sigma) { return gaussian_state(reference_grid(), 0.0, 0.0, sigma); }

std::vector<MeasurementModel> three_models() {
  return {build_von_neumann(reference_probe(0.5)), build_ozawa_contractive(reference_probe(1.0)),
          build_epr_indirect()};
}

JointState initial_for(const MeasurementModel& model, Rng& rng) {
  if (model.layout() == FactorLayout::kParticlePair) return random_pair_state(reference_grid(), rng);
  return model.prepare(random_localized_state(reference_grid(), rng));
}

Eigen::MatrixXcd random_hermitian(Rng& rng, Eigen::Index dim) {
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
  }
  return 0.5 * (m + m.adjoint());
}

TEST(KennardTest, GaussiansSaturate) {
  for (double sigma : {1.0, 2.0}) {
    const auto r = check_kennard(gaussian_state(reference_grid(), 0.0, 0.0, sigma));
    EXPECT_NEAR(r.lhs, 0.5, 1e-6);
    EXPECT_TRUE(r.satisfied);
    EXPECT_EQ(r.relation, Relation::kKennard);
  }
}

TEST(KennardTest, SeparatedSuperpositionExceedsBound) {
  const auto& grid = reference_grid();
  const auto left = gaussian_state(grid, -3.0, 0.0, 1.0);
  const auto right = gaussian_state(grid, 3.0, 0.0, 1.0);
  std::vector<cplx> amps(grid.n_points());
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = left.amplitudes()[i] + right.amplitudes()[i];
  const auto r = check_kennard(StateVector::normalized(grid, amps));
  EXPECT_GT(r.lhs, 0.5 + 0.1);
  EXPECT_TRUE(r.satisfied);
}

TEST(RobertsonTest, EigenstateBoundary) {
  Eigen::MatrixXcd sz(2, 2), sx(2, 2);
  sz << 1, 0, 0, -1;
  sx << 0, 1, 1, 0;
  Eigen::VectorXcd up(2);
  up << 1, 0;
  const auto r = check_robertson(MatrixOperator(sz), MatrixOperator(sx), up);
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_EQ(r.rhs, 0.0);
  EXPECT_TRUE(r.satisfied);
}

TEST(RobertsonTest, EqualOperatorsHaveZeroBound) {
  Rng rng(31);
  const auto a = random_hermitian(rng, 4);
  Eigen::VectorXcd c = Eigen::VectorXcd::Ones(4);
  const auto r = check_robertson(MatrixOperator(a), MatrixOperator(a), c);
  EXPECT_NEAR(r.rhs, 0.0, 1e-15);
  EXPECT_TRUE(r.satisfied);
}

TEST(RobertsonTest, RandomPairsSatisfy) {
  Rng rng(32);
  double worst = 1e300;
  for (int trial = 0; trial < 100; ++trial) {
    const auto dim = static_cast<Eigen::Index>(2 + trial % 7);
    const auto a = random_hermitian(rng, dim);
    const auto b = random_hermitian(rng, dim);
    Eigen::VectorXcd c(dim);
    for (auto& v : c) v = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
    const auto r = check_robertson(MatrixOperator(a), MatrixOperator(b), c);
    EXPECT_TRUE(r.satisfied);
    worst = std::min(worst, r.margin);
  }
  EXPECT_GE(worst, -1e-12);
}

TEST(RobertsonTest, RejectsNonHermitian) {
  Eigen::MatrixXcd a(2, 2);
  a << 0, 1, 0, 0;
  EXPECT_THROW(check_robertson(MatrixOperator(a), MatrixOperator(a), Eigen::VectorXcd::Ones(2)), ValidationError);
}

TEST(HeisenbergTest, ReferenceModels) {
  const auto input = gaussian_state(reference_grid(), 0.0, 0.0, 1.0);
  const auto vn = build_von_neumann(reference_probe(0.5));
  const auto r = check_heisenberg(vn, vn.prepare(input));
  EXPECT_NEAR(r.lhs, 0.5, 1e-6);
  EXPECT_TRUE(r.satisfied);
  const auto oz = build_ozawa_contractive(reference_probe(1.0));
  const auto ro = check_heisenberg(oz, oz.prepare(input));
  EXPECT_EQ(ro.lhs, 0.0);
  EXPECT_FALSE(ro.satisfied);
  const auto epr = build_epr_indirect();
  EXPECT_FALSE(check_heisenberg(epr, epr_correlated_state(reference_grid(), {})).satisfied);
}

TEST(OzawaBoundTest, TermByTermValues) {
  const auto input = gaussian_state(reference_grid(), 0.0, 0.0, 1.0);
  const auto vn = build_von_neumann(reference_probe(0.5));
  EXPECT_NEAR(check_ozawa(vn, vn.prepare(input)).lhs, 1.75, 1e-6);
  // Ozawa: n^2 = <P0^2> + <P^2> = 0.25 + 0.25.
  const auto oz = build_ozawa_contractive(reference_probe(1.0));
  EXPECT_NEAR(check_ozawa(oz, oz.prepare(input)).lhs, std::sqrt(0.5), 1e-6);
}

TEST(OzawaBoundTest, UniversalOnRandomStates) {
  Rng rng(33);
  for (const auto& model : three_models()) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto initial = initial_for(model, rng);
      EXPECT_TRUE(check_ozawa(model, initial).satisfied) << model.name();
      EXPECT_TRUE(ozawa_derivation(model, initial).all_hold()) << model.name();
    }
  }
}

TEST(TypeBoundsTest, ApplicabilityAndBounds) {
  const auto vn = build_von_neumann(reference_probe(0.5));
  const auto [vi, vii] = check_type_bounds(vn, vn.prepare(reference_probe(1.0)));
  EXPECT_FALSE(vi.applicable);
  EXPECT_FALSE(vii.applicable);

  const auto oz = build_ozawa_contractive(reference_probe(1.0));
  for (double sigma : {0.5, 1.0, 2.0}) {
    const auto [i, ii] = check_type_bounds(oz, oz.prepare(gaussian_state(reference_grid(), 0.0, 0.0, sigma)));
    EXPECT_FALSE(i.applicable);
    EXPECT_TRUE(ii.applicable);
    EXPECT_GE(ii.lhs, 0.5 - 1e-6);
  }

  const auto epr = build_epr_indirect();
  for (double alpha : {0.5, 0.2, 0.1}) {
    PairStateParams params;
    params.alpha = alpha;
    const auto [i, ii] = check_type_bounds(epr, epr_correlated_state(reference_grid(), params));
    EXPECT_TRUE(i.applicable);
    EXPECT_FALSE(ii.applicable);
    EXPECT_GE(i.lhs, 0.5 - 1e-6);
  }
}

TEST(CommutatorIdentityTest, CoefficientAlgebraExact) {
  for (const auto& model : three_models()) {
    const auto r = check_commutator_identity(model);
    EXPECT_NEAR(r.lhs, -1.0, 1e-12) << model.name();
    EXPECT_TRUE(r.satisfied);
  }
  const auto scaled = build_epr_indirect(0.0, 2.0);
  EXPECT_NEAR(check_commutator_identity(scaled).lhs, -2.0, 1e-12);
}

TEST(CommutatorIdentityTest, GridPathOnRandomStates) {
  Rng rng(34);
  for (const auto& model : three_models()) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto r = check_commutator_identity(model, initial_for(model, rng));
      EXPECT_TRUE(r.satisfied) << model.name() << " margin " << r.margin;
    }
  }
}

TEST(IndependentInterventionTest, ReferenceModels) {
  const auto vn = check_independent_intervention(build_von_neumann(reference_probe(0.5)));
  EXPECT_TRUE(vn.independent);
  EXPECT_TRUE(vn.report.applicable);
  EXPECT_TRUE(vn.report.satisfied);
  EXPECT_FALSE(check_independent_intervention(build_ozawa_contractive(reference_probe(1.0))).independent);
  EXPECT_FALSE(check_independent_intervention(build_epr_indirect()).independent);
}

TEST(IndependentInterventionTest, ImpliesHeisenberg) {
  Rng rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    LocalizedStateOptions probe_options;
    probe_options.min_sigma = 0.5;
    probe_options.max_sigma = 1.0;
    probe_options.max_abs_mean_q = 1.0;
    const auto model = build_von_neumann(random_localized_state(reference_grid(), rng, probe_options));
    ASSERT_TRUE(check_independent_intervention(model).independent);
    const auto input = random_localized_state(reference_grid(), rng);
    EXPECT_TRUE(check_heisenberg(model, model.prepare(input)).satisfied);
  }
  // A rescaled pointer reads Q0 + kQ, so its noise acts on the object.
  EXPECT_FALSE(check_independent_intervention(build_von_neumann(reference_probe(0.5), 0.5)).independent);
}

TEST(ClassifyViolationTest, Classes) {
  EXPECT_EQ(classify_violation(0.5, 1.0), ViolationClass::kNone);
  EXPECT_EQ(classify_violation(0.0, 0.7), ViolationClass::kTypeII);
  EXPECT_EQ(classify_violation(0.2, 0.0), ViolationClass::kTypeI);
  EXPECT_THROW(classify_violation(0.0, 0.0), ValidationError);
  EXPECT_THROW(classify_violation(-1.0, 0.5), ValidationError);
}

TEST(ClassifyViolationTest, UniformOverInputs) {
  Rng rng(36);
  const auto vn = build_von_neumann(reference_probe(0.5));
  const auto oz = build_ozawa_contractive(reference_probe(1.0));
  for (int trial = 0; trial < 5; ++trial) {
    const auto input = random_localized_state(reference_grid(), rng);
    EXPECT_EQ(evaluate_relations(vn, vn.prepare(input)).classification, ViolationClass::kNone);
    EXPECT_EQ(evaluate_relations(oz, oz.prepare(input)).classification, ViolationClass::kTypeII);
  }
}

TEST(RelationTableTest, ContainsEveryRelation) {
  const auto epr = build_epr_indirect();
  const auto table = evaluate_relations(epr, epr_correlated_state(reference_grid(), {}));
  ASSERT_EQ(table.relations.size(), 6u);
  EXPECT_EQ(table.classification, ViolationClass::kTypeI);
  EXPECT_FALSE(table.relations[1].satisfied);  // Heisenberg
  EXPECT_TRUE(table.relations[2].satisfied);   // universal bound
  EXPECT_TRUE(table.derivation.all_hold());
}

}  // namespace
}  // namespace edlab
