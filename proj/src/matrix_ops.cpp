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

#include "qreduce/matrix_ops.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "qreduce/errors.hpp"
#include "qreduce/rng.hpp"

namespace qreduce {

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

bool is_hermitian(const Matrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tolerance;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix partial_trace_second(const Matrix& m, int dim_h, int dim_k) {
  const Eigen::Index total = static_cast<Eigen::Index>(dim_h) * dim_k;
  if (m.rows() != total || m.cols() != total)
    throw DimensionError("partial_trace_second: matrix is not (dim_h*dim_k) square");
  Matrix out = Matrix::Zero(dim_h, dim_h);
  for (int i = 0; i < dim_h; ++i)
    for (int j = 0; j < dim_h; ++j)
      for (int k = 0; k < dim_k; ++k)
        out(i, j) += m(i * dim_k + k, j * dim_k + k);
  return out;
}

Matrix partial_trace_first(const Matrix& m, int dim_h, int dim_k) {
  const Eigen::Index total = static_cast<Eigen::Index>(dim_h) * dim_k;
  if (m.rows() != total || m.cols() != total)
    throw DimensionError("partial_trace_first: matrix is not (dim_h*dim_k) square");
  Matrix out = Matrix::Zero(dim_k, dim_k);
  for (int k = 0; k < dim_k; ++k)
    for (int l = 0; l < dim_k; ++l)
      for (int i = 0; i < dim_h; ++i)
        out(k, l) += m(i * dim_k + k, i * dim_k + l);
  return out;
}

double trace_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

double trace_distance(const Matrix& a, const Matrix& b) {
  return 0.5 * trace_norm(a - b);
}

Vector vectorize(const Matrix& m) {
  Vector v(m.rows() * m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) v(i + m.rows() * j) = m(i, j);
  return v;
}

Matrix unvectorize(const Vector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim)
    throw DimensionError("unvectorize: length does not match dim^2");
  Matrix m(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) m(i, j) = v(i + dim * j);
  return m;
}

Vector basis_vector(int dim, int k) {
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return v;
}

Matrix outer(const Vector& v) { return v * v.adjoint(); }

Matrix random_matrix(int dim, Rng& rng) {
  Matrix m(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) m(i, j) = rng.cgauss();
  return m;
}

Matrix random_hermitian(int dim, Rng& rng) {
  Matrix g = random_matrix(dim, rng);
  return 0.5 * (g + g.adjoint());
}

Matrix random_unitary(int dim, Rng& rng) {
  Matrix g = random_matrix(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is Haar.
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= (std::abs(d) > 0) ? d / std::abs(d) : Complex(1, 0);
  }
  return q;
}

Matrix random_pure_density(int dim, Rng& rng) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.cgauss();
  v.normalize();
  return outer(v);
}

Matrix random_density(int dim, Rng& rng, int rank) {
  if (rank <= 0 || rank > dim) rank = dim;
  Matrix g(dim, rank);
  for (int j = 0; j < rank; ++j)
    for (int i = 0; i < dim; ++i) g(i, j) = rng.cgauss();
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

}  // namespace qreduce
