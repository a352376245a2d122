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

#ifndef QREDUCE_TYPES_HPP
#define QREDUCE_TYPES_HPP

#include <complex>

#include <Eigen/Dense>

namespace qreduce {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Default numerical tolerances. Every check that uses one of these also
// accepts an explicit override parameter.
namespace tol {
inline constexpr double hermiticity = 1e-9;
inline constexpr double idempotency = 1e-9;
inline constexpr double trace = 1e-9;
inline constexpr double psd = 1e-9;
inline constexpr double group = 1e-8;        // eigenvalue merging
inline constexpr double cp = 1e-10;          // Choi minimum eigenvalue
inline constexpr double kraus_rank = 1e-10;  // Choi eigenvalue cutoff
inline constexpr double normalization = 1e-9;
inline constexpr double compat = 1e-9;      // effect vs spectral projection
inline constexpr double commutant = 1e-8;   // [L*(B), A] residual
inline constexpr double outcome = 1e-9;     // outcome key matching
inline constexpr double prob_floor = 1e-12; // below this the output state is indefinite
}  // namespace tol

}  // namespace qreduce

#endif  // QREDUCE_TYPES_HPP
