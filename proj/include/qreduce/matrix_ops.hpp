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

#ifndef QREDUCE_MATRIX_OPS_HPP
#define QREDUCE_MATRIX_OPS_HPP

#include "qreduce/types.hpp"

namespace qreduce {

// Largest entry magnitude; zero for empty matrices.
double max_abs(const Matrix& m);

bool all_finite(const Matrix& m);

bool is_hermitian(const Matrix& m, double tolerance = tol::hermiticity);

// Kronecker product: (A⊗B)[(i*rB + k), (j*cB + l)] = A[i,j] * B[k,l].
Matrix tensor(const Matrix& a, const Matrix& b);

// Trace over the second factor of H⊗K: result[i,j] = Σ_k M[(i,k),(j,k)].
Matrix partial_trace_second(const Matrix& m, int dim_h, int dim_k);

// Trace over the first factor of H⊗K.
Matrix partial_trace_first(const Matrix& m, int dim_h, int dim_k);

// Sum of singular values.
double trace_norm(const Matrix& m);

// Half the trace norm of the difference.
double trace_distance(const Matrix& a, const Matrix& b);

// Column-major vectorization: vec(M)[i + dim*j] = M[i,j].
Vector vectorize(const Matrix& m);

Matrix unvectorize(const Vector& v, int dim);

// |k⟩, the k-th standard basis column.
Vector basis_vector(int dim, int k);

// v v† (the input need not be normalized).
Matrix outer(const Vector& v);

}  // namespace qreduce

#endif  // QREDUCE_MATRIX_OPS_HPP
