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

#ifndef QREDUCE_OPERATORS_HPP
#define QREDUCE_OPERATORS_HPP

#include <vector>

#include "qreduce/errors.hpp"
#include "qreduce/types.hpp"

namespace qreduce {

/// Hermitian operator; construction validates ‖M − M†‖_max.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix m, double tolerance = tol::hermiticity);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }

 private:
  Matrix matrix_;
};

/// Positive semidefinite operator with unit trace.
class DensityOperator {
 public:
  explicit DensityOperator(Matrix m, double psd_tolerance = tol::psd,
                           double trace_tolerance = tol::trace,
                           double herm_tolerance = tol::hermiticity);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }

  static DensityOperator maximally_mixed(int dim);

 private:
  Matrix matrix_;
};

/// Hermitian idempotent.
class Projection {
 public:
  explicit Projection(Matrix m, double idem_tolerance = tol::idempotency,
                      double herm_tolerance = tol::hermiticity);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  int rank() const;
  const Matrix& matrix() const { return matrix_; }

 private:
  Matrix matrix_;
};

/// Discrete observable: pairwise-distinct eigenvalues with mutually
/// orthogonal spectral projections summing to the identity.
class DiscreteObservable {
 public:
  struct Outcome {
    double value;
    Matrix projection;
  };

  DiscreteObservable(int dim, std::vector<Outcome> outcomes,
                     double tolerance = tol::hermiticity);

  int dim() const { return dim_; }
  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  std::size_t size() const { return outcomes_.size(); }

  bool nondegenerate() const;

  // Spectral projection for x; the zero matrix when x is not an
  // eigenvalue (matching within `tolerance`).
  Matrix projection_for(double x, double tolerance = tol::outcome) const;

  bool has_outcome(double x, double tolerance = tol::outcome) const;

  // Σ_n a_n E(a_n).
  Matrix to_operator() const;

  // Rank-1 observable from an orthonormal basis given as matrix columns.
  static DiscreteObservable from_basis(const std::vector<double>& values,
                                       const Matrix& basis_columns);

 private:
  int dim_;
  std::vector<Outcome> outcomes_;  // sorted by value, ascending
};

/// Eigendecomposition with eigenvalues closer than group_tol merged into
/// a single spectral projection; outcomes sorted ascending.
DiscreteObservable spectral_decompose(const HermitianOperator& h,
                                      double group_tol = tol::group);

/// σ = λ₁σ₁ − λ₂σ₂ + iλ₃σ₃ − iλ₄σ₄ with densities σᵢ and λᵢ ≥ 0.
/// Vanishing parts carry λ = 0 paired with the maximally mixed state, so
/// the decomposition is total.
struct FourDensityDecomposition {
  std::array<double, 4> weights;
  std::vector<DensityOperator> states;  // always 4 entries

  Matrix recompose() const;
};

FourDensityDecomposition decompose_four_densities(const Matrix& sigma);

}  // namespace qreduce

#endif  // QREDUCE_OPERATORS_HPP
