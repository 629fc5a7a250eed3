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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "edlab/error.hpp"
#include "edlab/hilbert/fft.hpp"

namespace edlab {
namespace {

constexpr double kSymplecticTolerance = 1e-12;
constexpr double kEdgeMassLimit = 1e-10;
constexpr double kHamiltonianHermiticity = 1e-10;
constexpr double kIntegerShiftTolerance = 1e-12;

Eigen::Vector4d coefficients(const LinearObservable& obs) { return {obs.q, obs.p, obs.q0, obs.p0}; }

void require_localized_probe(const StateVector& probe) {
  const double mass = edge_mass(probe);
  if (mass > kEdgeMassLimit) {
    std::ostringstream msg;
    msg << "probe is not localized: edge mass " << mass << " exceeds " << kEdgeMassLimit
        << " (keep the probe 6 widths inside both the position and momentum grids)";
    throw ValidationError(msg.str());
  }
}

void require_commuting_outputs(const IoMap& io, double hbar) {
  if (commutator_scalar(io.meter_out, io.momentum_out, hbar) != std::complex<double>(0.0, 0.0)) {
    throw ValidationError("io_map outputs must commute: [M(dt), P(dt)] = " +
                          std::to_string(commutator_scalar(io.meter_out, io.momentum_out, hbar).imag()) + "i");
  }
}

// Row i of `out` is a copy of row i of `in` shifted by `shift` along the
// probe coordinate: out(y) = in(y - shift).
void shift_row(std::span<const cplx> in, const GridSpec& grid, double shift, std::span<cplx> out) {
  const auto n = static_cast<std::ptrdiff_t>(grid.n_points());
  const double steps = shift / grid.spacing();
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) <= kIntegerShiftTolerance * std::max(1.0, std::abs(steps))) {
    const auto offset = static_cast<std::ptrdiff_t>(rounded);
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      const std::ptrdiff_t src = ((j - offset) % n + n) % n;
      out[static_cast<std::size_t>(j)] = in[static_cast<std::size_t>(src)];
    }
    return;
  }
  std::copy(in.begin(), in.end(), out.begin());
  fft::forward(out);
  for (std::size_t m = 0; m < out.size(); ++m) {
    out[m] *= std::exp(cplx(0.0, -grid.momentum(m) * shift / grid.hbar()));
  }
  fft::inverse(out);
}

JointState translation_kernel(const JointState& initial, double coupling) {
  const auto& ga = initial.grid_a();
  const auto& gb = initial.grid_b();
  JointVector out = JointVector::zeros(ga, gb, initial.layout());
  const std::size_t cols = gb.n_points();
  auto dst = out.mutable_amplitudes();
  for (std::size_t i = 0; i < ga.n_points(); ++i) {
    shift_row(initial.amplitudes().subspan(i * cols, cols), gb, coupling * ga.position(i), dst.subspan(i * cols, cols));
  }
  return JointState::from_vector(std::move(out));
}

JointState point_transform(const JointState& initial) {
  if (!(initial.grid_a() == initial.grid_b())) {
    throw ValidationError("the exact contractive-state propagator needs identical object and probe grids");
  }
  const std::size_t n = initial.grid_a().n_points();
  JointVector out = JointVector::zeros(initial.grid_a(), initial.grid_b(), initial.layout());
  const auto& in = initial.vector();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) out.at(a, b) = in.at(b, (a + n + n / 2 - b) % n);
  }
  return JointState::from_vector(std::move(out));
}

Eigen::Matrix4d von_neumann_matrix(double k) {
  Eigen::Matrix4d s = Eigen::Matrix4d::Identity();
  s(1, 3) = -k;  // P(dt) = P - k P0
  s(2, 0) = k;   // Q0(dt) = Q0 + k Q
  return s;
}

// Heisenberg map of the contractive-state interaction preceded by the probe
// reflection (Q0, P0) -> (-Q0, -P0). The interaction alone rotates (Q, Q0)
// by cos(t) I + sin(t)/sqrt(3) [[1, -2], [2, -1]] and (P, P0) by
// cos(t) I + sin(t)/sqrt(3) [[-1, -2], [2, 1]] with t = (pi/3) * coupling.
Eigen::Matrix4d ozawa_matrix(double k) {
  const double t = std::numbers::pi / 3.0 * k;
  const double c = std::cos(t);
  const double s = std::sin(t) / std::sqrt(3.0);
  Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
  h(0, 0) = c + s;
  h(0, 2) = -2 * s;
  h(2, 0) = 2 * s;
  h(2, 2) = c - s;
  h(1, 1) = c - s;
  h(1, 3) = -2 * s;
  h(3, 1) = 2 * s;
  h(3, 3) = c + s;
  Eigen::Matrix4d parity = Eigen::Vector4d(1, 1, -1, -1).asDiagonal();
  Eigen::Matrix4d out = h * parity;
  // Snap rounding dust so the coupling-1 map has exact integer entries.
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double r = std::round(out(i, j));
      if (std::abs(out(i, j) - r) < 1e-14) out(i, j) = r;
    }
  }
  return out;
}

Eigen::Vector4d solve_min_norm(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const char* what) {
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  const Eigen::VectorXd x = cod.solve(b);
  if ((a * x - b).norm() > kSymplecticTolerance * std::max(1.0, b.norm())) {
    throw ValidationError(std::string("no symplectic completion exists: cannot solve for ") + what);
  }
  return x;
}

void require_dimension(const GridSpec& a, const GridSpec& b) {
  const std::size_t dim = a.n_points() * b.n_points();
  if (dim > kMaxOracleDimension) {
    throw ValidationError("joint dimension " + std::to_string(dim) + " exceeds the oracle guard of " +
                          std::to_string(kMaxOracleDimension));
  }
}

MatrixOperator checked_hamiltonian(Eigen::MatrixXcd h) {
  MatrixOperator op(std::move(h));
  const double scale = op.dimension() == 0 ? 1.0 : std::max(1.0, op.entries().cwiseAbs().maxCoeff());
  if (op.hermiticity_residual() > kHamiltonianHermiticity * scale) {
    std::ostringstream msg;
    msg << "Hamiltonian matrix is not Hermitian: residual " << op.hermiticity_residual();
    throw ConsistencyError(msg.str());
  }
  return op;
}

// h += scale * (a (x) b), without materializing the product.
void add_kron(Eigen::MatrixXcd& h, cplx scale, const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const Eigen::Index nb = b.rows();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) != cplx(0.0)) h.block(i * nb, j * nb, nb, nb) += (scale * a(i, j)) * b;
    }
  }
}

// c {2 (Q (x) P0 - P (x) Q0) + (X (x) I - I (x) X0)} with c = K pi / (3 sqrt 3)
// and X, X0 the chosen discretization of QP and Q0P0.
Eigen::MatrixXcd ozawa_terms(double coupling, const Eigen::MatrixXcd& qa, const Eigen::MatrixXcd& pa,
                             const Eigen::MatrixXcd& qb, const Eigen::MatrixXcd& pb, const Eigen::MatrixXcd& xa,
                             const Eigen::MatrixXcd& xb) {
  const double c = coupling * std::numbers::pi / (3.0 * std::sqrt(3.0));
  const Eigen::Index na = qa.rows();
  const Eigen::Index nb = qb.rows();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(na * nb, na * nb);
  add_kron(h, 2.0 * c, qa, pb);
  add_kron(h, -2.0 * c, pa, qb);
  add_kron(h, c, xa, Eigen::MatrixXcd::Identity(nb, nb));
  add_kron(h, -c, Eigen::MatrixXcd::Identity(na, na), xb);
  return h;
}

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kVonNeumann: return "von-neumann";
    case ModelKind::kZeroCoupling: return "zero-coupling";
    case ModelKind::kOzawa: return "ozawa";
    case ModelKind::kEpr: return "epr";
    case ModelKind::kCustom: return "custom";
  }
  return "custom";
}

ModelKind model_kind_from_string(const std::string& name) {
  for (auto kind : {ModelKind::kVonNeumann, ModelKind::kZeroCoupling, ModelKind::kOzawa, ModelKind::kEpr,
                    ModelKind::kCustom}) {
    if (to_string(kind) == name) return kind;
  }
  throw ValidationError("unknown model '" + name + "' (expected von-neumann, zero-coupling, ozawa, epr or custom)");
}

std::string to_string(PropagatorKind kind) {
  switch (kind) {
    case PropagatorKind::kNone: return "none";
    case PropagatorKind::kIdentity: return "identity";
    case PropagatorKind::kTranslationKernel: return "translation-kernel";
    case PropagatorKind::kPointTransform: return "point-transform";
  }
  return "none";
}

// SymplecticMap ---------------------------------------------------------------

Eigen::Matrix4d SymplecticMap::form() {
  Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
  j(0, 1) = 1;
  j(1, 0) = -1;
  j(2, 3) = 1;
  j(3, 2) = -1;
  return j;
}

double SymplecticMap::symplectic_residual() const {
  const Eigen::Matrix4d j = form();
  return (matrix.transpose() * j * matrix - j).cwiseAbs().maxCoeff();
}

LinearObservable SymplecticMap::row(int i, FactorLayout layout) const {
  return {matrix(i, 0), matrix(i, 1), matrix(i, 2), matrix(i, 3), shift(i), layout};
}

SymplecticMap complete_symplectic(const Eigen::Vector4d& momentum_row, const Eigen::Vector4d& meter_row) {
  const Eigen::Matrix4d j = SymplecticMap::form();
  const Eigen::Vector4d& p = momentum_row;
  const Eigen::Vector4d& m = meter_row;
  if (std::abs(m.dot(j * p)) > kSymplecticTolerance) {
    throw ValidationError("no symplectic completion exists: M(dt) and P(dt) do not commute");
  }
  // Row 0 (a): w(a, p) = 1, w(a, m) = 0 with w(x, y) = x^T J y.
  Eigen::MatrixXd lhs_a(2, 4);
  lhs_a.row(0) = (j * p).transpose();
  lhs_a.row(1) = (j * m).transpose();
  const Eigen::Vector4d a = solve_min_norm(lhs_a, Eigen::Vector2d(1, 0), "the Q(dt) row");
  // Row 3 (b): w(m, b) = 1, w(p, b) = 0, w(a, b) = 0.
  Eigen::MatrixXd lhs_b(3, 4);
  lhs_b.row(0) = (j.transpose() * m).transpose();
  lhs_b.row(1) = (j.transpose() * p).transpose();
  lhs_b.row(2) = (j.transpose() * a).transpose();
  const Eigen::Vector4d b = solve_min_norm(lhs_b, Eigen::Vector3d(1, 0, 0), "the conjugate meter row");
  SymplecticMap out;
  out.matrix.row(0) = a.transpose();
  out.matrix.row(1) = p.transpose();
  out.matrix.row(2) = m.transpose();
  out.matrix.row(3) = b.transpose();
  if (out.symplectic_residual() > kSymplecticTolerance) {
    throw ValidationError("no symplectic completion exists: residual " + std::to_string(out.symplectic_residual()));
  }
  return out;
}

// MeasurementModel -------------------------------------------------------------

void MeasurementModel::finalize() {
  if (probe_ && probe_->grid().hbar() != hbar_) throw ValidationError("probe grid hbar differs from the model's");
  io_map_.meter_out.layout = layout_;
  io_map_.momentum_out.layout = layout_;
  meter_.layout = layout_;
  require_commuting_outputs(io_map_, hbar_);
}

JointState MeasurementModel::prepare(const StateVector& object) const {
  if (!probe_) throw ValidationError("model '" + name_ + "' takes a two-particle input state, not object (x) probe");
  if (object.grid().hbar() != hbar_) throw ValidationError("input grid hbar differs from the model's");
  return tensor(object, *probe_, layout_);
}

JointState MeasurementModel::propagate(const JointState& initial) const {
  if (initial.layout() != layout_) throw ValidationError("input state layout does not match model '" + name_ + "'");
  switch (propagator_) {
    case PropagatorKind::kNone:
      throw ValidationError("model '" + name_ + "' has no Schroedinger propagator; use the Heisenberg-picture metrics "
                            "or the matrix oracle (hamiltonian_matrix)");
    case PropagatorKind::kIdentity: return initial;
    case PropagatorKind::kTranslationKernel: return translation_kernel(initial, coupling_);
    case PropagatorKind::kPointTransform: return point_transform(initial);
  }
  return initial;
}

MeasurementModel build_von_neumann(const StateVector& probe, double coupling) {
  require_localized_probe(probe);
  if (!std::isfinite(coupling)) throw ValidationError("coupling must be finite");
  if (coupling == 0.0) return build_zero_coupling(probe);
  MeasurementModel m;
  m.name_ = "von-neumann";
  m.kind_ = ModelKind::kVonNeumann;
  m.probe_ = probe;
  m.coupling_ = coupling;
  m.hbar_ = probe.grid().hbar();
  m.symplectic_.matrix = von_neumann_matrix(coupling);
  m.io_map_ = {m.symplectic_.row(2, m.layout_), m.symplectic_.row(1, m.layout_)};
  m.propagator_ = PropagatorKind::kTranslationKernel;
  m.finalize();
  return m;
}

MeasurementModel build_zero_coupling(const StateVector& probe) {
  require_localized_probe(probe);
  MeasurementModel m;
  m.name_ = "zero-coupling";
  m.kind_ = ModelKind::kZeroCoupling;
  m.probe_ = probe;
  m.coupling_ = 0.0;
  m.hbar_ = probe.grid().hbar();
  m.io_map_ = {LinearObservable::position_b(), LinearObservable::momentum_a()};
  m.propagator_ = PropagatorKind::kIdentity;
  m.finalize();
  return m;
}

MeasurementModel build_ozawa_contractive(const StateVector& probe, double coupling) {
  require_localized_probe(probe);
  if (!std::isfinite(coupling)) throw ValidationError("coupling must be finite");
  MeasurementModel m;
  m.name_ = "ozawa";
  m.kind_ = ModelKind::kOzawa;
  m.probe_ = probe;
  m.coupling_ = coupling;
  m.hbar_ = probe.grid().hbar();
  m.symplectic_.matrix = ozawa_matrix(coupling);
  m.io_map_ = {m.symplectic_.row(2, m.layout_), m.symplectic_.row(1, m.layout_)};
  m.propagator_ = coupling == 1.0 ? PropagatorKind::kPointTransform : PropagatorKind::kNone;
  m.finalize();
  return m;
}

MeasurementModel build_epr_indirect(double readout_width, double hbar) {
  if (!(readout_width >= 0.0) || !std::isfinite(readout_width)) {
    throw ValidationError("readout width must be finite and non-negative");
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw ValidationError("hbar must be positive and finite");
  MeasurementModel m;
  m.name_ = "epr";
  m.kind_ = ModelKind::kEpr;
  m.layout_ = FactorLayout::kParticlePair;
  m.coupling_ = 1.0;
  m.hbar_ = hbar;
  m.readout_width_ = readout_width;
  m.io_map_ = {LinearObservable::position_b(m.layout_), LinearObservable::momentum_a(m.layout_)};
  m.propagator_ = PropagatorKind::kIdentity;
  m.finalize();
  return m;
}

MeasurementModel build_custom_model(const std::string& name, const StateVector& probe, const IoMap& io_map) {
  require_localized_probe(probe);
  if (io_map.meter_out.layout != FactorLayout::kObjectProbe || io_map.momentum_out.layout != FactorLayout::kObjectProbe) {
    throw ValidationError("custom models use the object-probe layout");
  }
  MeasurementModel m;
  m.name_ = name.empty() ? "custom" : name;
  m.kind_ = ModelKind::kCustom;
  m.probe_ = probe;
  m.hbar_ = probe.grid().hbar();
  m.io_map_ = io_map;
  m.finalize();
  m.symplectic_ = complete_symplectic(coefficients(io_map.momentum_out), coefficients(io_map.meter_out));
  m.symplectic_.shift(1) = io_map.momentum_out.constant;
  m.symplectic_.shift(2) = io_map.meter_out.constant;
  m.propagator_ = PropagatorKind::kNone;
  return m;
}

MeasurementModel with_probe_params(MeasurementModel model, const GaussianParams& params) {
  if (!model.probe_ || !(model.probe_->grid() == params.grid())) {
    throw ValidationError("probe parameters do not describe the model's probe grid");
  }
  model.probe_params_ = params;
  return model;
}

SymplecticMap symplectic_map(const MeasurementModel& model) {
  const auto& s = model.symplectic();
  if (s.symplectic_residual() > kSymplecticTolerance) {
    throw ConsistencyError("model '" + model.name() + "' map violates S^T J S = J by " +
                           std::to_string(s.symplectic_residual()));
  }
  if (!(s.row(2, model.layout()) == model.io_map().meter_out) || !(s.row(1, model.layout()) == model.io_map().momentum_out)) {
    throw ConsistencyError("model '" + model.name() + "' symplectic rows do not reproduce its io_map");
  }
  return s;
}

// Matrix oracle ------------------------------------------------------------------

MatrixOperator probe_parity_matrix(const GridSpec& grid) {
  const auto n = static_cast<Eigen::Index>(grid.n_points());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) m((n - j) % n, j) = 1.0;
  return MatrixOperator(std::move(m));
}

MatrixOperator ozawa_literal_hamiltonian_matrix(double coupling, const GridSpec& grid_a, const GridSpec& grid_b) {
  require_dimension(grid_a, grid_b);
  const auto qa = position_matrix(grid_a).entries();
  const auto pa = momentum_matrix(grid_a).entries();
  const auto qb = position_matrix(grid_b).entries();
  const auto pb = momentum_matrix(grid_b).entries();
  return MatrixOperator(ozawa_terms(coupling, qa, pa, qb, pb, qa * pa, qb * pb));
}

MatrixOperator hamiltonian_matrix(const MeasurementModel& model, const GridSpec& grid_a, const GridSpec& grid_b) {
  require_dimension(grid_a, grid_b);
  const auto dim = static_cast<Eigen::Index>(grid_a.n_points() * grid_b.n_points());
  switch (model.kind()) {
    case ModelKind::kZeroCoupling:
    case ModelKind::kEpr: return checked_hamiltonian(Eigen::MatrixXcd::Zero(dim, dim));
    case ModelKind::kVonNeumann:
      return checked_hamiltonian(model.coupling() * kron(position_matrix(grid_a), momentum_matrix(grid_b)).entries());
    case ModelKind::kOzawa: {
      const auto qa = position_matrix(grid_a).entries();
      const auto pa = momentum_matrix(grid_a).entries();
      const auto qb = position_matrix(grid_b).entries();
      const auto pb = momentum_matrix(grid_b).entries();
      const Eigen::MatrixXcd wa = 0.5 * (qa * pa + pa * qa);
      const Eigen::MatrixXcd wb = 0.5 * (qb * pb + pb * qb);
      return checked_hamiltonian(ozawa_terms(model.coupling(), qa, pa, qb, pb, wa, wb));
    }
    case ModelKind::kCustom: break;
  }
  throw ValidationError("model '" + model.name() + "' has no Hamiltonian representation");
}

// States ---------------------------------------------------------------------------

double edge_mass(const StateVector& state) {
  const std::size_t n = state.grid().n_points();
  const std::size_t band = std::max<std::size_t>(1, n / 16);
  const auto probs = state.probabilities();
  double position = 0.0;
  for (std::size_t i = 0; i < band; ++i) position += probs[i] + probs[n - 1 - i];
  std::vector<cplx> work(state.amplitudes().begin(), state.amplitudes().end());
  fft::forward(work);
  double total = 0.0;
  double edge = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const double w = std::norm(work[m]);
    total += w;
    // Momentum index m' in [-n/2, n/2); the band holds the largest |m'|.
    const auto signed_m = static_cast<std::ptrdiff_t>(m) - (m < n / 2 ? 0 : static_cast<std::ptrdiff_t>(n));
    if (static_cast<std::size_t>(std::abs(signed_m)) + band > n / 2) edge += w;
  }
  return position + edge / total;
}

JointState epr_correlated_state(const GridSpec& grid, const PairStateParams& p) {
  const double hbar = grid.hbar();
  std::ostringstream msg;
  if (!std::isfinite(p.alpha) || !(p.alpha > 0.0) || !std::isfinite(p.sigma_center) || !(p.sigma_center > 0.0)) {
    throw ValidationError("pair state: widths must be positive and finite (<(Q1 - Q2)^2> must be normalizable)");
  }
  if (p.alpha < 1.2 * grid.spacing()) {
    msg << "pair state: resolution margin violated: alpha=" << p.alpha << " < 1.2*spacing=" << 1.2 * grid.spacing();
    throw ValidationError(msg.str());
  }
  const double sigma_q = std::sqrt(p.sigma_center * p.sigma_center + 0.25 * p.alpha * p.alpha);
  if (std::abs(p.center) + 6.0 * sigma_q > grid.max_position()) {
    msg << "pair state: position margin violated: |center| + 6*sigma(Q1) = " << std::abs(p.center) + 6.0 * sigma_q
        << " exceeds " << grid.max_position();
    throw ValidationError(msg.str());
  }
  const double sigma_p = std::sqrt(std::pow(hbar / (4.0 * p.sigma_center), 2) + std::pow(hbar / (2.0 * p.alpha), 2));
  const double mean_p = std::max(std::abs(0.5 * p.momentum_center + p.momentum_relative),
                                 std::abs(0.5 * p.momentum_center - p.momentum_relative));
  if (mean_p + 6.0 * sigma_p > grid.max_momentum()) {
    msg << "pair state: momentum margin violated: |<P>| + 6*sigma(P1) = " << mean_p + 6.0 * sigma_p
        << " exceeds max momentum " << grid.max_momentum();
    throw ValidationError(msg.str());
  }
  const std::size_t n = grid.n_points();
  std::vector<cplx> amps(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double q1 = grid.position(i);
    for (std::size_t j = 0; j < n; ++j) {
      const double q2 = grid.position(j);
      const double big_r = 0.5 * (q1 + q2) - p.center;
      const double r = q1 - q2;
      const double re = -big_r * big_r / (4.0 * p.sigma_center * p.sigma_center) - r * r / (4.0 * p.alpha * p.alpha);
      const double im = (p.momentum_center * big_r + p.momentum_relative * r) / hbar;
      amps[i * n + j] = std::exp(cplx(re, im));
    }
  }
  return JointState::normalized(JointVector(grid, grid, FactorLayout::kParticlePair, std::move(amps)));
}

JointState random_pair_state(const GridSpec& grid, Rng& rng) {
  PairStateParams p;
  p.sigma_center = uniform(rng, 0.7, 1.3);
  p.alpha = uniform(rng, 0.15, 0.8);
  p.center = uniform(rng, -2.0, 2.0);
  p.momentum_center = uniform(rng, -1.0, 1.0);
  p.momentum_relative = uniform(rng, -1.0, 1.0);
  return epr_correlated_state(grid, p);
}

}  // namespace edlab
