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

#include "qreduce/superop.hpp"

#include <cmath>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "qreduce/matrix_ops.hpp"
#include "qreduce/rng.hpp"

namespace qreduce {

namespace {

// Permutation C with C vec(M) = vec(Mᵀ).
Matrix transpose_permutation(int dim) {
  const int d2 = dim * dim;
  Matrix c = Matrix::Zero(d2, d2);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) c(i + dim * j, j + dim * i) = 1.0;
  return c;
}

}  // namespace

SuperOperator::SuperOperator(int dim, Matrix transfer)
    : dim_(dim), transfer_(std::move(transfer)) {
  const Eigen::Index d2 = static_cast<Eigen::Index>(dim) * dim;
  if (transfer_.rows() != d2 || transfer_.cols() != d2)
    throw DimensionError("SuperOperator: transfer matrix must be dim^2 x dim^2");
  if (!all_finite(transfer_))
    throw InvalidOperator("SuperOperator: transfer has non-finite entries");
}

SuperOperator SuperOperator::identity(int dim) {
  return SuperOperator(dim, Matrix::Identity(dim * dim, dim * dim));
}

SuperOperator SuperOperator::zero(int dim) {
  return SuperOperator(dim, Matrix::Zero(dim * dim, dim * dim));
}

SuperOperator SuperOperator::sandwich(const Matrix& a) {
  const int d = static_cast<int>(a.rows());
  return SuperOperator(d, tensor(a.conjugate(), a));
}

SuperOperator SuperOperator::left_multiply(const Matrix& a) {
  const int d = static_cast<int>(a.rows());
  return SuperOperator(d, tensor(Matrix::Identity(d, d), a));
}

SuperOperator SuperOperator::right_multiply(const Matrix& a) {
  const int d = static_cast<int>(a.rows());
  return SuperOperator(d, tensor(a.transpose(), Matrix::Identity(d, d)));
}

SuperOperator SuperOperator::from_kraus(const std::vector<Matrix>& ops) {
  if (ops.empty()) throw InvalidOperator("from_kraus: empty operator list");
  const int d = static_cast<int>(ops.front().rows());
  Matrix t = Matrix::Zero(d * d, d * d);
  for (const Matrix& m : ops) {
    if (m.rows() != d || m.cols() != d)
      throw DimensionError("from_kraus: inconsistent operator dimensions");
    t += tensor(m.conjugate(), m);
  }
  return SuperOperator(d, std::move(t));
}

SuperOperator SuperOperator::state_preparation(const Matrix& state,
                                               const Matrix& effect) {
  const int d = static_cast<int>(state.rows());
  if (effect.rows() != d || effect.cols() != d || state.cols() != d)
    throw DimensionError("state_preparation: dimension mismatch");
  // Tr[Xρ] = vec(X†)† vec(ρ)
  Matrix t = vectorize(state) * vectorize(effect.adjoint()).adjoint();
  return SuperOperator(d, std::move(t));
}

Matrix SuperOperator::apply(const Matrix& sigma) const {
  if (sigma.rows() != dim_ || sigma.cols() != dim_)
    throw DimensionError("SuperOperator::apply: operand dimension mismatch");
  return unvectorize(transfer_ * vectorize(sigma), dim_);
}

SuperOperator& SuperOperator::operator+=(const SuperOperator& other) {
  if (other.dim_ != dim_)
    throw DimensionError("SuperOperator::operator+=: dimension mismatch");
  transfer_ += other.transfer_;
  return *this;
}

DualSuperOperator::DualSuperOperator(int dim, Matrix transfer)
    : dim_(dim), transfer_(std::move(transfer)) {
  const Eigen::Index d2 = static_cast<Eigen::Index>(dim) * dim;
  if (transfer_.rows() != d2 || transfer_.cols() != d2)
    throw DimensionError("DualSuperOperator: transfer must be dim^2 x dim^2");
}

Matrix DualSuperOperator::apply(const Matrix& a) const {
  if (a.rows() != dim_ || a.cols() != dim_)
    throw DimensionError("DualSuperOperator::apply: operand dimension mismatch");
  return unvectorize(transfer_ * vectorize(a), dim_);
}

DualSuperOperator dual(const SuperOperator& l) {
  const Matrix c = transpose_permutation(l.dim());
  return DualSuperOperator(l.dim(), c * l.transfer().transpose() * c);
}

SuperOperator dual(const DualSuperOperator& l) {
  const Matrix c = transpose_permutation(l.dim());
  return SuperOperator(l.dim(), c * l.transfer().transpose() * c);
}

SuperOperator compose(const SuperOperator& l2, const SuperOperator& l1) {
  if (l1.dim() != l2.dim())
    throw DimensionError("compose: dimension mismatch");
  return SuperOperator(l1.dim(), l2.transfer() * l1.transfer());
}

ChoiMatrix choi(const SuperOperator& l) {
  const int d = l.dim();
  Matrix c(d * d, d * d);
  const Matrix& t = l.transfer();
  for (int i = 0; i < d; ++i)
    for (int a = 0; a < d; ++a)
      for (int j = 0; j < d; ++j)
        for (int b = 0; b < d; ++b)
          c(i * d + a, j * d + b) = t(a + d * b, i + d * j);
  return {d, std::move(c)};
}

SuperOperator from_choi(const ChoiMatrix& c) {
  const int d = c.dim;
  if (c.matrix.rows() != d * d || c.matrix.cols() != d * d)
    throw DimensionError("from_choi: matrix must be dim^2 x dim^2");
  Matrix t(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int a = 0; a < d; ++a)
      for (int j = 0; j < d; ++j)
        for (int b = 0; b < d; ++b)
          t(a + d * b, i + d * j) = c.matrix(i * d + a, j * d + b);
  return SuperOperator(d, std::move(t));
}

CpVerdict is_completely_positive(const SuperOperator& l, double tolerance) {
  const ChoiMatrix c = choi(l);
  const double herm_err = max_abs(c.matrix - c.matrix.adjoint());
  const Matrix h = 0.5 * (c.matrix + c.matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  return {herm_err <= tolerance && min_eig >= -tolerance, min_eig, herm_err};
}

PositivityVerdict check_positivity(const SuperOperator& l, int samples,
                                   std::uint64_t seed, double tolerance) {
  if (samples < 1) throw Error("check_positivity: samples must be >= 1");
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Matrix rho = (s % 2 == 0) ? random_pure_density(l.dim(), rng)
                                    : random_density(l.dim(), rng);
    const Matrix out = l.apply(rho);
    const Matrix h = 0.5 * (out + out.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -tolerance || max_abs(out - out.adjoint()) > tolerance)
      return {PositivityWitness{rho, min_eig}};
  }
  return {std::nullopt};
}

ContractivityReport contractivity_report(const SuperOperator& l,
                                         double tolerance) {
  const int d = l.dim();
  const Matrix li = dual(l).apply(Matrix::Identity(d, d));
  const double li_herm_err = max_abs(li - li.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(0.5 * (li + li.adjoint())),
                                           Eigen::EigenvaluesOnly);
  const bool identity_bound = li_herm_err <= tolerance &&
                              es.eigenvalues().minCoeff() >= -tolerance &&
                              es.eigenvalues().maxCoeff() <= 1.0 + tolerance;

  bool trace_bound = true;
  bool trace_preserving = true;
  for (const Matrix& rho : canonical_spanning_densities(d)) {
    const Complex t = l.apply(rho).trace();
    if (std::abs(t.imag()) > tolerance || t.real() < -tolerance ||
        t.real() > 1.0 + tolerance)
      trace_bound = false;
    if (std::abs(t - Complex(1.0, 0.0)) > tolerance) trace_preserving = false;
  }

  const bool unital = max_abs(li - Matrix::Identity(d, d)) <= tolerance;
  return {identity_bound, identity_bound, trace_bound, identity_bound,
          trace_preserving, unital};
}

SuperOperator KrausSet::to_superoperator() const {
  if (operators.empty()) return SuperOperator::zero(dim);
  return SuperOperator::from_kraus(operators);
}

bool KrausSet::trace_preserving(double tolerance) const {
  Matrix sum = Matrix::Zero(dim, dim);
  for (const Matrix& m : operators) sum += m.adjoint() * m;
  return max_abs(sum - Matrix::Identity(dim, dim)) <= tolerance;
}

KrausSet kraus_decompose(const SuperOperator& l, double rank_tol, double cp_tol) {
  const CpVerdict verdict = is_completely_positive(l, cp_tol);
  if (!verdict.cp)
    throw NotCP("kraus_decompose: Choi minimum eigenvalue " +
                std::to_string(verdict.min_eigenvalue));
  const int d = l.dim();
  const ChoiMatrix c = choi(l);
  Eigen::SelfAdjointEigenSolver<Matrix> es(
      Matrix(0.5 * (c.matrix + c.matrix.adjoint())));
  KrausSet out{d, {}};
  for (int k = 0; k < d * d; ++k) {
    const double mu = es.eigenvalues()(k);
    if (mu <= rank_tol) continue;
    const Vector v = es.eigenvectors().col(k);
    Matrix m(d, d);
    for (int i = 0; i < d; ++i)
      for (int a = 0; a < d; ++a) m(a, i) = std::sqrt(mu) * v(i * d + a);
    out.operators.push_back(std::move(m));
  }
  return out;
}

std::vector<Matrix> canonical_spanning_densities(int dim) {
  std::vector<Matrix> family;
  family.reserve(dim * dim);
  const Complex i(0, 1);
  for (int j = 0; j < dim; ++j) family.push_back(outer(basis_vector(dim, j)));
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      Vector plus = (basis_vector(dim, j) + basis_vector(dim, k)) / std::sqrt(2.0);
      Vector imag = (basis_vector(dim, j) + i * basis_vector(dim, k)) / std::sqrt(2.0);
      family.push_back(outer(plus));
      family.push_back(outer(imag));
    }
  }
  return family;
}

SuperOperator linear_extension(const DensityAction& action, int dim,
                               double agree_tol, int check_samples,
                               std::uint64_t seed) {
  const Complex i(0, 1);
  // Images of the basis densities.
  std::vector<Matrix> diag(dim);
  for (int j = 0; j < dim; ++j)
    diag[j] = action(outer(basis_vector(dim, j)));

  Matrix transfer(dim * dim, dim * dim);
  for (int j = 0; j < dim; ++j) transfer.col(j + dim * j) = vectorize(diag[j]);
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      Vector plus = (basis_vector(dim, j) + basis_vector(dim, k)) / std::sqrt(2.0);
      Vector imag = (basis_vector(dim, j) + i * basis_vector(dim, k)) / std::sqrt(2.0);
      const Matrix a = action(outer(plus));
      const Matrix b = action(outer(imag));
      const Matrix s = 2.0 * a - diag[j] - diag[k];
      const Matrix t = 2.0 * b - diag[j] - diag[k];
      transfer.col(j + dim * k) = vectorize(0.5 * (s + i * t));  // L(|j⟩⟨k|)
      transfer.col(k + dim * j) = vectorize(0.5 * (s - i * t));  // L(|k⟩⟨j|)
    }
  }
  SuperOperator extension(dim, std::move(transfer));

  // The extension is well defined only if the action respects mixtures;
  // checked by comparing against the action on random densities.
  Rng rng(seed);
  for (int s = 0; s < check_samples; ++s) {
    const Matrix rho = (s % 2 == 0) ? random_pure_density(dim, rng)
                                    : random_density(dim, rng);
    if (max_abs(extension.apply(rho) - action(rho)) > agree_tol)
      throw InconsistentAction(
          "linear_extension: action disagrees with its linear extension");
  }
  return extension;
}

SuperOperator linear_extension_from_family(const DensityAction& action,
                                           const std::vector<Matrix>& family) {
  if (family.empty()) throw CountMismatch("linear_extension_from_family: empty family");
  const int dim = static_cast<int>(family.front().rows());
  const int d2 = dim * dim;
  if (static_cast<int>(family.size()) < d2)
    throw CountMismatch("linear_extension_from_family: need at least dim^2 states");
  Matrix inputs(d2, family.size());
  Matrix images(d2, family.size());
  for (std::size_t n = 0; n < family.size(); ++n) {
    inputs.col(n) = vectorize(family[n]);
    images.col(n) = vectorize(action(family[n]));
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(inputs.transpose());
  if (qr.rank() < d2)
    throw InconsistentAction(
        "linear_extension_from_family: family does not span the operator space");
  // Solve transfer · inputs = images.
  Matrix transfer = qr.solve(images.transpose()).transpose();
  return SuperOperator(dim, std::move(transfer));
}

}  // namespace qreduce
