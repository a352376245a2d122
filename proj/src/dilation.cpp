// Copyright 2026 The qreduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qreduce/dilation.hpp"

#include <cmath>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "qreduce/matrix_ops.hpp"
#include "qreduce/rng.hpp"

namespace qreduce {

IndirectModel::IndirectModel(int sys_dim, int probe_dim,
                             DensityOperator probe_state, Matrix unitary,
                             DiscreteObservable probe_observable,
                             double unitarity_tolerance)
    : sys_dim_(sys_dim),
      probe_dim_(probe_dim),
      probe_state_(std::move(probe_state)),
      unitary_(std::move(unitary)),
      probe_observable_(std::move(probe_observable)) {
  const Eigen::Index total = static_cast<Eigen::Index>(sys_dim_) * probe_dim_;
  if (probe_state_.dim() != probe_dim_ || probe_observable_.dim() != probe_dim_)
    throw DimensionError("IndirectModel: probe state/observable dimension mismatch");
  if (unitary_.rows() != total || unitary_.cols() != total)
    throw DimensionError("IndirectModel: unitary must act on H⊗K");
  if (max_abs(unitary_.adjoint() * unitary_ - Matrix::Identity(total, total)) >
      unitarity_tolerance)
    throw InvalidOperator("IndirectModel: interaction is not unitary");
}

Apparatus realize(const IndirectModel& model, std::string label) {
  const int d = model.sys_dim();
  const int k = model.probe_dim();
  const Matrix& u = model.unitary();
  const Matrix& sigma = model.probe_state().matrix();
  const Matrix identity_h = Matrix::Identity(d, d);

  // Evolved matrix units, shared across probe outcomes.
  std::vector<Matrix> evolved;
  evolved.reserve(d * d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      Matrix unit = Matrix::Zero(d, d);
      unit(i, j) = 1.0;
      evolved.push_back(u * tensor(unit, sigma) * u.adjoint());
    }
  }

  std::vector<OperationalDistribution::Entry> entries;
  entries.reserve(model.probe_observable().size());
  for (const auto& o : model.probe_observable().outcomes()) {
    const Matrix meas = tensor(identity_h, o.projection);
    // One column of the transfer matrix per matrix unit |i⟩⟨j|.
    Matrix transfer(d * d, d * d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i)
        transfer.col(i + d * j) =
            vectorize(partial_trace_second(meas * evolved[i + d * j], d, k));
    entries.push_back({o.value, SuperOperator(d, std::move(transfer))});
  }
  return Apparatus(std::move(label),
                   OperationalDistribution(d, std::move(entries)));
}

Matrix model_effect(const IndirectModel& model, double outcome) {
  const int d = model.sys_dim();
  const int k = model.probe_dim();
  const Matrix meas =
      tensor(Matrix::Identity(d, d), model.probe_observable().projection_for(outcome));
  const Matrix sigma_ext =
      tensor(Matrix::Identity(d, d), model.probe_state().matrix());
  return partial_trace_second(
      model.unitary().adjoint() * meas * model.unitary() * sigma_ext, d, k);
}

Matrix complete_isometry_to_unitary(const Matrix& v, int total_dim,
                                    double tolerance) {
  const int cols = static_cast<int>(v.cols());
  if (v.rows() != total_dim || cols > total_dim)
    throw DimensionError("complete_isometry_to_unitary: bad shape");
  if (max_abs(v.adjoint() * v - Matrix::Identity(cols, cols)) > tolerance)
    throw NotIsometry("complete_isometry_to_unitary: columns are not orthonormal");
  if (cols == total_dim) return v;

  // Full QR of V: the trailing Q columns span the orthogonal complement
  // of col(V), so [V | Q_rest] is unitary and keeps V untouched.
  Eigen::HouseholderQR<Matrix> qr(v);
  const Matrix q = qr.householderQ();
  Matrix out(total_dim, total_dim);
  out.leftCols(cols) = v;
  out.rightCols(total_dim - cols) = q.rightCols(total_dim - cols);
  return out;
}

IndirectModel construct_nondegenerate_dilation(
    const DiscreteObservable& a, const std::vector<DensityOperator>& states) {
  if (!a.nondegenerate())
    throw DegenerateObservable("construct_nondegenerate_dilation: observable "
                               "has a spectral projection of rank > 1");
  if (states.size() != a.size())
    throw CountMismatch("construct_nondegenerate_dilation: need one state per outcome");
  const int d = a.dim();
  const int probe_dim = d * d;
  const int total = d * probe_dim;

  // Eigenvector φ_n of each rank-1 spectral projection.
  std::vector<Vector> phi(d);
  for (int n = 0; n < d; ++n) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a.outcomes()[n].projection);
    phi[n] = es.eigenvectors().col(d - 1);  // eigenvalue 1 is the largest
  }

  Matrix domain(total, d);
  Matrix image(total, d);
  for (int n = 0; n < d; ++n) {
    domain.col(n) = tensor(Matrix(phi[n]), tensor(Matrix(phi[0]), Matrix(phi[0])));
    Eigen::SelfAdjointEigenSolver<Matrix> es(states[n].matrix());
    Vector img = Vector::Zero(total);
    for (int j = 0; j < d; ++j) {
      const double lambda = es.eigenvalues()(j);
      if (lambda <= 1e-12) continue;
      const Vector eta = es.eigenvectors().col(j);
      img += std::sqrt(lambda) *
             Vector(tensor(Matrix(eta), tensor(Matrix(phi[j]), Matrix(phi[n]))));
    }
    image.col(n) = img;
  }

  const Matrix u_range = complete_isometry_to_unitary(image, total);
  const Matrix u_domain = complete_isometry_to_unitary(domain, total);
  Matrix u = u_range * u_domain.adjoint();

  // σ = |φ₀⊗φ₀⟩⟨φ₀⊗φ₀|, M = I⊗A.
  const Vector probe_vec = Vector(tensor(Matrix(phi[0]), Matrix(phi[0])));
  DensityOperator probe_state(outer(probe_vec));
  std::vector<DiscreteObservable::Outcome> m_outcomes;
  m_outcomes.reserve(a.size());
  for (const auto& o : a.outcomes())
    m_outcomes.push_back({o.value, tensor(Matrix::Identity(d, d), o.projection)});
  DiscreteObservable m(probe_dim, std::move(m_outcomes));

  return IndirectModel(d, probe_dim, std::move(probe_state), std::move(u),
                       std::move(m));
}

IndirectModel dilate_cp_distribution(const OperationalDistribution& opdist,
                                     double cp_tol) {
  const int d = opdist.dim();

  struct Block {
    double outcome;
    std::vector<Matrix> kraus;
  };
  std::vector<Block> blocks;
  int probe_dim = 0;
  for (const auto& e : opdist.entries()) {
    KrausSet set = kraus_decompose(e.operation, tol::kraus_rank, cp_tol);
    probe_dim += static_cast<int>(set.operators.size());
    blocks.push_back({e.outcome, std::move(set.operators)});
  }
  if (probe_dim == 0)
    throw InvalidDistribution("dilate_cp_distribution: all entries are zero maps");

  // Isometry V: H → H⊗K stacking the Kraus operators block by block;
  // V†V = Σ M†M = I by the normalization of the distribution.
  const int total = d * probe_dim;
  Matrix v = Matrix::Zero(total, d);
  int block_start = 0;
  std::vector<DiscreteObservable::Outcome> m_outcomes;
  for (const auto& block : blocks) {
    if (block.kraus.empty()) continue;  // zero map: no probe block
    Matrix proj = Matrix::Zero(probe_dim, probe_dim);
    for (std::size_t r = 0; r < block.kraus.size(); ++r) {
      const int slot = block_start + static_cast<int>(r);
      proj(slot, slot) = 1.0;
      // Row (i, slot) of V is row i of the Kraus operator.
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          v(i * probe_dim + slot, j) = block.kraus[r](i, j);
    }
    m_outcomes.push_back({block.outcome, std::move(proj)});
    block_start += static_cast<int>(block.kraus.size());
  }

  // U must map |ψ⊗e₀⟩ to Vψ; complete both orthonormal families.
  Matrix domain = Matrix::Zero(total, d);
  for (int i = 0; i < d; ++i) domain(i * probe_dim + 0, i) = 1.0;
  const Matrix u_range = complete_isometry_to_unitary(v, total);
  const Matrix u_domain = complete_isometry_to_unitary(domain, total);
  Matrix u = u_range * u_domain.adjoint();

  Vector probe_vec = Vector::Zero(probe_dim);
  probe_vec(0) = 1.0;
  return IndirectModel(d, probe_dim, DensityOperator(outer(probe_vec)),
                       std::move(u),
                       DiscreteObservable(probe_dim, std::move(m_outcomes)));
}

double verify_realization(const IndirectModel& model,
                          const OperationalDistribution& opdist,
                          int samples, std::uint64_t seed) {
  if (model.sys_dim() != opdist.dim())
    throw DimensionError("verify_realization: dimension mismatch");
  const Apparatus realized = realize(model);

  std::vector<double> xs = realized.opdist().outcomes();
  for (const double x : opdist.outcomes()) {
    bool known = false;
    for (const double y : xs)
      if (std::abs(x - y) <= tol::outcome) known = true;
    if (!known) xs.push_back(x);
  }

  Rng rng(seed);
  double deviation = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Matrix rho = random_density(opdist.dim(), rng);
    for (const double x : xs) {
      const Matrix lhs = realized.opdist().operation_or_zero(x).apply(rho);
      const Matrix rhs = opdist.operation_or_zero(x).apply(rho);
      deviation = std::max(deviation, trace_norm(lhs - rhs));
    }
  }
  return deviation;
}

}  // namespace qreduce
