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

#include "qreduce/operators.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Eigenvalues>

#include "qreduce/matrix_ops.hpp"

namespace qreduce {

namespace {

void require_square_finite(const Matrix& m, const char* what) {
  if (m.rows() != m.cols())
    throw InvalidOperator(std::string(what) + ": matrix is not square");
  if (!all_finite(m))
    throw InvalidOperator(std::string(what) + ": matrix has non-finite entries");
}

}  // namespace

HermitianOperator::HermitianOperator(Matrix m, double tolerance)
    : matrix_(std::move(m)) {
  require_square_finite(matrix_, "HermitianOperator");
  if (!is_hermitian(matrix_, tolerance))
    throw InvalidOperator("HermitianOperator: not Hermitian within tolerance");
}

DensityOperator::DensityOperator(Matrix m, double psd_tolerance,
                                 double trace_tolerance, double herm_tolerance)
    : matrix_(std::move(m)) {
  require_square_finite(matrix_, "DensityOperator");
  if (!is_hermitian(matrix_, herm_tolerance))
    throw InvalidOperator("DensityOperator: not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -psd_tolerance)
    throw InvalidOperator("DensityOperator: negative eigenvalue " +
                          std::to_string(es.eigenvalues().minCoeff()));
  if (std::abs(matrix_.trace().real() - 1.0) > trace_tolerance ||
      std::abs(matrix_.trace().imag()) > trace_tolerance)
    throw InvalidOperator("DensityOperator: trace is not 1 within tolerance");
}

DensityOperator DensityOperator::maximally_mixed(int dim) {
  return DensityOperator(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

Projection::Projection(Matrix m, double idem_tolerance, double herm_tolerance)
    : matrix_(std::move(m)) {
  require_square_finite(matrix_, "Projection");
  if (!is_hermitian(matrix_, herm_tolerance))
    throw InvalidOperator("Projection: not Hermitian within tolerance");
  if (max_abs(matrix_ * matrix_ - matrix_) > idem_tolerance)
    throw InvalidOperator("Projection: not idempotent within tolerance");
}

int Projection::rank() const {
  return static_cast<int>(std::lround(matrix_.trace().real()));
}

DiscreteObservable::DiscreteObservable(int dim, std::vector<Outcome> outcomes,
                                       double tolerance)
    : dim_(dim), outcomes_(std::move(outcomes)) {
  if (outcomes_.empty())
    throw InvalidOperator("DiscreteObservable: no outcomes");
  std::sort(outcomes_.begin(), outcomes_.end(),
            [](const Outcome& a, const Outcome& b) { return a.value < b.value; });
  Matrix sum = Matrix::Zero(dim_, dim_);
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    const Matrix& e = outcomes_[i].projection;
    if (e.rows() != dim_ || e.cols() != dim_)
      throw DimensionError("DiscreteObservable: projection dimension mismatch");
    Projection check(e, tolerance, tolerance);  // validates
    // separation beyond the outcome-matching tolerance keeps
    // projection_for lookups unambiguous
    if (i > 0 && outcomes_[i].value - outcomes_[i - 1].value <= tol::outcome)
      throw InvalidOperator("DiscreteObservable: eigenvalues are not distinct");
    for (std::size_t j = 0; j < i; ++j)
      if (max_abs(outcomes_[j].projection * e) > tolerance)
        throw InvalidOperator("DiscreteObservable: projections are not orthogonal");
    sum += e;
  }
  if (max_abs(sum - Matrix::Identity(dim_, dim_)) > tolerance)
    throw InvalidOperator("DiscreteObservable: projections do not sum to identity");
}

bool DiscreteObservable::nondegenerate() const {
  for (const auto& o : outcomes_)
    if (std::lround(o.projection.trace().real()) != 1) return false;
  return true;
}

Matrix DiscreteObservable::projection_for(double x, double tolerance) const {
  for (const auto& o : outcomes_)
    if (std::abs(o.value - x) <= tolerance) return o.projection;
  return Matrix::Zero(dim_, dim_);
}

bool DiscreteObservable::has_outcome(double x, double tolerance) const {
  for (const auto& o : outcomes_)
    if (std::abs(o.value - x) <= tolerance) return true;
  return false;
}

Matrix DiscreteObservable::to_operator() const {
  Matrix a = Matrix::Zero(dim_, dim_);
  for (const auto& o : outcomes_) a += o.value * o.projection;
  return a;
}

DiscreteObservable DiscreteObservable::from_basis(
    const std::vector<double>& values, const Matrix& basis_columns) {
  const int d = static_cast<int>(basis_columns.rows());
  if (static_cast<int>(values.size()) != d ||
      basis_columns.cols() != basis_columns.rows())
    throw CountMismatch("from_basis: need one value per basis column");
  std::vector<Outcome> outcomes;
  outcomes.reserve(values.size());
  for (int k = 0; k < d; ++k)
    outcomes.push_back({values[k], outer(basis_columns.col(k))});
  return DiscreteObservable(d, std::move(outcomes));
}

DiscreteObservable spectral_decompose(const HermitianOperator& h,
                                      double group_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  const auto& vals = es.eigenvalues();  // ascending
  const Matrix& vecs = es.eigenvectors();
  const int d = h.dim();

  std::vector<DiscreteObservable::Outcome> outcomes;
  int start = 0;
  while (start < d) {
    int end = start + 1;
    while (end < d && vals(end) - vals(end - 1) <= group_tol) ++end;
    Matrix proj = Matrix::Zero(d, d);
    double value = 0.0;
    for (int k = start; k < end; ++k) {
      proj += outer(vecs.col(k));
      value += vals(k);
    }
    value /= static_cast<double>(end - start);
    outcomes.push_back({value, proj});
    start = end;
  }
  return DiscreteObservable(d, std::move(outcomes));
}

namespace {

// Positive/negative eigenpart split of a Hermitian matrix: H = P − N with
// P, N ≥ 0; returns ((Tr P, P/Tr P), (Tr N, N/Tr N)), maximally mixed
// placeholders for vanishing parts.
std::pair<std::pair<double, Matrix>, std::pair<double, Matrix>> positive_split(
    const Matrix& h) {
  const int d = static_cast<int>(h.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Matrix pos = Matrix::Zero(d, d);
  Matrix neg = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const double v = es.eigenvalues()(k);
    if (v > 0)
      pos += v * outer(es.eigenvectors().col(k));
    else if (v < 0)
      neg -= v * outer(es.eigenvectors().col(k));
  }
  const Matrix mixed = Matrix::Identity(d, d) / static_cast<double>(d);
  const double tp = pos.trace().real();
  const double tn = neg.trace().real();
  return {{tp, tp > 0 ? Matrix(pos / tp) : mixed},
          {tn, tn > 0 ? Matrix(neg / tn) : mixed}};
}

}  // namespace

Matrix FourDensityDecomposition::recompose() const {
  const Complex i(0, 1);
  return weights[0] * states[0].matrix() - weights[1] * states[1].matrix() +
         i * weights[2] * states[2].matrix() -
         i * weights[3] * states[3].matrix();
}

FourDensityDecomposition decompose_four_densities(const Matrix& sigma) {
  require_square_finite(sigma, "decompose_four_densities");
  const Complex i(0, 1);
  const Matrix re = 0.5 * (sigma + sigma.adjoint());
  const Matrix im = (sigma - sigma.adjoint()) / (2.0 * i);
  const auto [re_pos, re_neg] = positive_split(re);
  const auto [im_pos, im_neg] = positive_split(im);

  FourDensityDecomposition out;
  out.weights = {re_pos.first, re_neg.first, im_pos.first, im_neg.first};
  out.states.reserve(4);
  for (const Matrix& s : {re_pos.second, re_neg.second, im_pos.second, im_neg.second})
    out.states.emplace_back(s);
  return out;
}

}  // namespace qreduce
