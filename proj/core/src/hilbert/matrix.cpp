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

#include "edlab/hilbert/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "edlab/error.hpp"
#include "edlab/hilbert/observable.hpp"

namespace edlab {
namespace {

constexpr double kObservableHermiticity = 1e-12;
constexpr double kKrylovTolerance = 1e-13;
constexpr int kKrylovDimension = 40;

double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_oracle_input(const MatrixOperator& h) {
  if (h.dimension() > kMaxOracleDimension) {
    throw ValidationError("matrix oracle dimension " + std::to_string(h.dimension()) + " exceeds the guard of " +
                          std::to_string(kMaxOracleDimension));
  }
  const double residual = h.hermiticity_residual();
  if (residual > kObservableHermiticity * std::max(1.0, max_abs(h.entries()))) {
    std::ostringstream msg;
    msg << "matrix oracle requires a Hermitian generator; residual " << residual;
    throw ValidationError(msg.str());
  }
}

// Matrix-vector product that picks a sparse representation for mostly-zero
// operators (Kronecker products with diagonal factors are typical here).
class MatVec {
 public:
  explicit MatVec(const Eigen::MatrixXcd& dense) : dense_(dense) {
    const auto nonzeros = (dense.array() != cplx(0.0)).count();
    if (static_cast<double>(nonzeros) < 0.25 * static_cast<double>(dense.size())) {
      sparse_ = dense.sparseView(1.0, 0.0);
      use_sparse_ = true;
    }
  }

  void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
    if (use_sparse_) {
      out.noalias() = sparse_ * in;
    } else {
      out.noalias() = dense_ * in;
    }
  }

 private:
  const Eigen::MatrixXcd& dense_;
  Eigen::SparseMatrix<cplx> sparse_;
  bool use_sparse_ = false;
};

}  // namespace

MatrixOperator::MatrixOperator(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw ValidationError("matrix operator must be square");
}

MatrixOperator MatrixOperator::observable(Eigen::MatrixXcd entries) {
  MatrixOperator op(std::move(entries));
  const double residual = op.hermiticity_residual();
  if (residual >= kObservableHermiticity * std::max(1.0, max_abs(op.entries_))) {
    std::ostringstream msg;
    msg << "matrix flagged as observable is not Hermitian: residual " << residual;
    throw ValidationError(msg.str());
  }
  return op;
}

double MatrixOperator::hermiticity_residual() const { return max_abs(entries_ - entries_.adjoint()); }

MatrixOperator identity_matrix(std::size_t dimension) {
  const auto n = static_cast<Eigen::Index>(dimension);
  return MatrixOperator(Eigen::MatrixXcd::Identity(n, n));
}

MatrixOperator position_matrix(const GridSpec& grid) {
  const auto n = static_cast<Eigen::Index>(grid.n_points());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = grid.position(static_cast<std::size_t>(i));
  return MatrixOperator(std::move(m));
}

MatrixOperator momentum_matrix(const GridSpec& grid) {
  const auto n = static_cast<Eigen::Index>(grid.n_points());
  Eigen::MatrixXcd m(n, n);
  std::vector<cplx> unit(grid.n_points());
  for (Eigen::Index j = 0; j < n; ++j) {
    std::fill(unit.begin(), unit.end(), cplx(0.0));
    unit[static_cast<std::size_t>(j)] = 1.0;
    const auto column = apply_momentum(grid, unit);
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = column[static_cast<std::size_t>(i)];
  }
  // Remove rounding-level asymmetry so the dense form is exactly Hermitian.
  Eigen::MatrixXcd hermitian = 0.5 * (m + m.adjoint());
  return MatrixOperator(std::move(hermitian));
}

MatrixOperator kron(const MatrixOperator& a, const MatrixOperator& b) {
  const auto& x = a.entries();
  const auto& y = b.entries();
  Eigen::MatrixXcd out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return MatrixOperator(std::move(out));
}

Eigen::VectorXcd to_coefficients(const StateVector& state) {
  const double w = std::sqrt(state.grid().spacing());
  Eigen::VectorXcd out(static_cast<Eigen::Index>(state.amplitudes().size()));
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = w * state.amplitudes()[static_cast<std::size_t>(i)];
  return out;
}

Eigen::VectorXcd to_coefficients(const JointVector& vector) {
  const double w = std::sqrt(vector.cell());
  Eigen::VectorXcd out(static_cast<Eigen::Index>(vector.amplitudes().size()));
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = w * vector.amplitudes()[static_cast<std::size_t>(i)];
  return out;
}

StateVector state_from_coefficients(const GridSpec& grid, const Eigen::VectorXcd& coefficients) {
  const double w = 1.0 / std::sqrt(grid.spacing());
  std::vector<cplx> amps(static_cast<std::size_t>(coefficients.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = w * coefficients(static_cast<Eigen::Index>(i));
  return StateVector::normalized(grid, std::move(amps));
}

JointVector joint_from_coefficients(const GridSpec& grid_a, const GridSpec& grid_b, FactorLayout layout,
                                    const Eigen::VectorXcd& coefficients) {
  const double w = 1.0 / std::sqrt(grid_a.spacing() * grid_b.spacing());
  std::vector<cplx> amps(static_cast<std::size_t>(coefficients.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = w * coefficients(static_cast<Eigen::Index>(i));
  return JointVector(grid_a, grid_b, layout, std::move(amps));
}

Eigen::VectorXcd matrix_oracle_evolve(const MatrixOperator& h, double duration, const Eigen::VectorXcd& state,
                                      double hbar) {
  require_oracle_input(h);
  if (static_cast<std::size_t>(state.size()) != h.dimension()) {
    throw ValidationError("state dimension does not match the generator");
  }
  const double norm0 = state.norm();
  if (norm0 == 0.0 || duration == 0.0) return state;

  const MatVec matvec(h.entries());
  const auto n = state.size();
  const int m_max = static_cast<int>(std::min<Eigen::Index>(kKrylovDimension, n));
  const double scale = duration / hbar;
  const double direction = scale > 0 ? 1.0 : -1.0;
  double remaining = std::abs(scale);

  Eigen::VectorXcd v = state;
  Eigen::MatrixXcd basis(n, m_max + 1);
  Eigen::VectorXcd w(n);
  double step = remaining;

  while (remaining > 0.0) {
    const double beta0 = v.norm();
    basis.col(0) = v / beta0;
    std::vector<double> alpha;
    std::vector<double> beta;
    int m = 0;
    bool invariant = false;
    double beta_last = 0.0;
    for (int j = 0; j < m_max; ++j) {
      matvec.apply(basis.col(j), w);
      const double a = basis.col(j).dot(w).real();
      alpha.push_back(a);
      // Full reorthogonalization (twice) keeps the basis orthonormal.
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXcd proj = basis.leftCols(j + 1).adjoint() * w;
        w.noalias() -= basis.leftCols(j + 1) * proj;
      }
      const double b = w.norm();
      m = j + 1;
      if (b <= 1e-14 * std::max(1.0, std::abs(a))) {
        invariant = true;
        break;
      }
      if (j + 1 < m_max) {
        beta.push_back(b);
        basis.col(j + 1) = w / b;
      } else {
        beta_last = b;
      }
    }

    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < m; ++j) t(j, j) = alpha[static_cast<std::size_t>(j)];
    for (int j = 0; j + 1 < m; ++j) {
      t(j, j + 1) = beta[static_cast<std::size_t>(j)];
      t(j + 1, j) = beta[static_cast<std::size_t>(j)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t);
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    const Eigen::MatrixXd& z = eig.eigenvectors();

    auto small_exp = [&](double tau) {
      Eigen::VectorXcd coeffs(m);
      for (int k = 0; k < m; ++k) coeffs(k) = std::exp(cplx(0.0, -direction * tau * lambda(k))) * z(0, k);
      return Eigen::VectorXcd(z.cast<cplx>() * coeffs);
    };

    double tau = invariant ? remaining : std::min(step, remaining);
    Eigen::VectorXcd y = small_exp(tau);
    if (!invariant) {
      while (beta_last * std::abs(y(m - 1)) > kKrylovTolerance && tau > 1e-14 * std::abs(scale)) {
        tau *= 0.5;
        y = small_exp(tau);
      }
    }
    v = beta0 * (basis.leftCols(m) * y);
    remaining -= tau;
    step = std::min(2.0 * tau, std::abs(scale));
    if (remaining < 1e-15 * std::abs(scale)) remaining = 0.0;
  }
  return v;
}

Eigen::MatrixXcd dense_propagator(const MatrixOperator& h, double duration, double hbar) {
  require_oracle_input(h);
  const Eigen::MatrixXcd herm = 0.5 * (h.entries() + h.entries().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm);
  const auto& lambda = eig.eigenvalues();
  Eigen::VectorXcd phases(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) phases(k) = std::exp(cplx(0.0, -duration * lambda(k) / hbar));
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

double unitarity_residual(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd gram = u.adjoint() * u;
  return max_abs(gram - Eigen::MatrixXcd::Identity(u.rows(), u.cols()));
}

}  // namespace edlab
