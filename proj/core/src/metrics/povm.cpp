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

#include "edlab/metrics/povm.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "edlab/error.hpp"
#include "edlab/metrics/ensemble.hpp"

namespace edlab {
namespace {

constexpr double kPsdSlack = 1e-10;
constexpr double kCompleteness = 1e-8;

void require_size(std::size_t bins, std::size_t dimension) {
  if (dimension > kMaxOracleDimension) {
    throw ValidationError("POVM dimension " + std::to_string(dimension) + " exceeds the guard of " +
                          std::to_string(kMaxOracleDimension));
  }
  if (bins * dimension * dimension > kMaxPovmEntries) {
    throw ValidationError("POVM with " + std::to_string(bins) + " effects of dimension " + std::to_string(dimension) +
                          " exceeds the memory guard");
  }
}

std::vector<PovmBin> object_probe_bins(const MeasurementModel& model, const GridSpec& grid) {
  if (!model.has_propagator()) {
    throw ValidationError("model '" + model.name() + "' has no grid propagator; cannot extract its POVM");
  }
  const auto& probe = *model.probe();
  const std::size_t na = grid.n_points();
  const std::size_t nb = probe.grid().n_points();
  require_size(nb, na);
  if (na * nb > kMaxOracleDimension) {
    throw ValidationError("POVM joint dimension " + std::to_string(na * nb) + " exceeds the guard of " +
                          std::to_string(kMaxOracleDimension));
  }
  // phi[y](q, a): coefficient of |q, y> after propagating |a> (x) probe.
  std::vector<Eigen::MatrixXcd> phi(nb, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(na),
                                                                static_cast<Eigen::Index>(na)));
  const double cell = std::sqrt(grid.spacing() * probe.grid().spacing());
  std::vector<cplx> basis(na, cplx(0.0));
  for (std::size_t a = 0; a < na; ++a) {
    std::fill(basis.begin(), basis.end(), cplx(0.0));
    basis[a] = 1.0 / std::sqrt(grid.spacing());
    const auto out = model.propagate(model.prepare(StateVector::from_amplitudes(grid, basis)));
    const auto amps = out.amplitudes();
    for (std::size_t q = 0; q < na; ++q) {
      for (std::size_t y = 0; y < nb; ++y) {
        phi[y](static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(a)) = cell * amps[q * nb + y];
      }
    }
  }
  std::vector<PovmBin> bins;
  bins.reserve(nb);
  for (std::size_t y = 0; y < nb; ++y) {
    bins.push_back({probe.grid().position(y), MatrixOperator(phi[y].adjoint() * phi[y])});
  }
  return bins;
}

std::vector<PovmBin> pair_bins(const MeasurementModel& model, const GridSpec& grid) {
  const std::size_t n = grid.n_points();
  require_size(n, n * n);
  const auto kernel = readout_kernel(grid, model.readout_width());
  const auto dim = static_cast<Eigen::Index>(n * n);
  std::vector<PovmBin> bins;
  bins.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Eigen::VectorXcd diag(dim);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) diag(static_cast<Eigen::Index>(i * n + j)) = kernel[(k + n - j) % n];
    }
    bins.push_back({grid.position(k), MatrixOperator(Eigen::MatrixXcd(diag.asDiagonal()))});
  }
  return bins;
}

}  // namespace

Povm extract_povm(const MeasurementModel& model, const GridSpec& object_grid) {
  Povm povm;
  povm.bins = model.layout() == FactorLayout::kParticlePair ? pair_bins(model, object_grid)
                                                            : object_probe_bins(model, object_grid);
  povm.dimension = povm.bins.front().effect.dimension();
  const auto dim = static_cast<Eigen::Index>(povm.dimension);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  povm.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (const auto& bin : povm.bins) {
    sum += bin.effect.entries();
    const Eigen::MatrixXcd herm = 0.5 * (bin.effect.entries() + bin.effect.entries().adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm, Eigen::EigenvaluesOnly);
    povm.min_eigenvalue = std::min(povm.min_eigenvalue, eig.eigenvalues().minCoeff());
  }
  povm.completeness_residual = (sum - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (povm.min_eigenvalue < -kPsdSlack || povm.completeness_residual > kCompleteness) {
    std::ostringstream msg;
    msg << "POVM construction failed for model '" << model.name() << "': min eigenvalue " << povm.min_eigenvalue
        << ", completeness residual " << povm.completeness_residual;
    throw ConsistencyError(msg.str());
  }
  return povm;
}

MatrixOperator povm_target(const MeasurementModel& model, const GridSpec& object_grid) {
  if (model.layout() == FactorLayout::kParticlePair) {
    return kron(position_matrix(object_grid), identity_matrix(object_grid.n_points()));
  }
  return position_matrix(object_grid);
}

PovmDistance povm_distance(const Povm& povm, const MatrixOperator& target, const Eigen::VectorXcd& c) {
  const auto dim = static_cast<Eigen::Index>(povm.dimension);
  if (target.dimension() != povm.dimension || c.size() != dim) {
    throw ValidationError("POVM, target and state dimensions differ");
  }
  Eigen::MatrixXcd first = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd second = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& bin : povm.bins) {
    first += bin.value * bin.effect.entries();
    second += bin.value * bin.value * bin.effect.entries();
  }
  const Eigen::VectorXcd first_c = first * c;
  const double norm_sq = c.squaredNorm();
  PovmDistance d;
  d.intrinsic = (c.dot(second * c).real() - first_c.squaredNorm()) / norm_sq;
  if (d.intrinsic < -kPsdSlack * std::max(1.0, first_c.squaredNorm() / norm_sq)) {
    std::ostringstream msg;
    msg << "POVM intrinsic noise term is negative: " << d.intrinsic;
    throw ConsistencyError(msg.str());
  }
  d.intrinsic = std::max(0.0, d.intrinsic);
  const Eigen::VectorXcd target_c = target.entries() * c;
  d.bias = (first_c - target_c).squaredNorm() / norm_sq;
  // d^2 = sum_x <(x - A) c| Pi(x) |(x - A) c>: a sum of non-negative terms
  // equal to intrinsic + bias, but free of their cancellation.
  double total = 0.0;
  for (const auto& bin : povm.bins) {
    const Eigen::VectorXcd v = bin.value * c - target_c;
    total += v.dot(bin.effect.entries() * v).real();
  }
  d.distance = std::sqrt(std::max(0.0, total) / norm_sq);
  return d;
}

PovmDistance povm_distance(const Povm& povm, const MatrixOperator& target, const StateVector& state) {
  return povm_distance(povm, target, to_coefficients(state));
}

PovmDistance povm_distance(const Povm& povm, const MatrixOperator& target, const JointState& state) {
  return povm_distance(povm, target, to_coefficients(state.vector()));
}

}  // namespace edlab
