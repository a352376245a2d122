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

#ifndef QREDUCE_DILATION_HPP
#define QREDUCE_DILATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qreduce/apparatus.hpp"
#include "qreduce/operators.hpp"

namespace qreduce {

/// Indirect measurement model: probe space K, probe state σ, measuring
/// interaction U on H⊗K, probe observable M. The composite index order
/// is system-major: (i_H, i_K) ↦ i_H·probe_dim + i_K.
class IndirectModel {
 public:
  IndirectModel(int sys_dim, int probe_dim, DensityOperator probe_state,
                Matrix unitary, DiscreteObservable probe_observable,
                double unitarity_tolerance = 1e-9);

  int sys_dim() const { return sys_dim_; }
  int probe_dim() const { return probe_dim_; }
  const DensityOperator& probe_state() const { return probe_state_; }
  const Matrix& unitary() const { return unitary_; }
  const DiscreteObservable& probe_observable() const { return probe_observable_; }

 private:
  int sys_dim_;
  int probe_dim_;
  DensityOperator probe_state_;
  Matrix unitary_;
  DiscreteObservable probe_observable_;
};

/// The apparatus realized by the model:
/// X(x)ρ = Tr_K[(I⊗E^M(x)) U (ρ⊗σ) U†] for each eigenvalue x of M.
Apparatus realize(const IndirectModel& model, std::string label = "realized");

/// X(x) = Tr_K[U†(I⊗E^M(x))U(I⊗σ)], the effect of the realized apparatus.
Matrix model_effect(const IndirectModel& model, double outcome);

/// Extends a matrix V with orthonormal columns to a total_dim×total_dim
/// unitary whose leading columns are exactly V.
Matrix complete_isometry_to_unitary(const Matrix& v, int total_dim,
                                    double tolerance = 1e-10);

/// Explicit model for an apparatus prescribed by output states over a
/// nondegenerate observable: probe K = H⊗H prepared in |φ₀⊗φ₀⟩, probe
/// observable I⊗A, and a unitary sending |φ_n⊗φ₀⊗φ₀⟩ to
/// Σ_j √λ_{nj} |η_{nj}⊗φ_j⊗φ_n⟩ with ϱ_n = Σ_j λ_{nj}|η_{nj}⟩⟨η_{nj}|.
IndirectModel construct_nondegenerate_dilation(
    const DiscreteObservable& a, const std::vector<DensityOperator>& states);

/// General dilation of a completely positive distribution: the Kraus
/// operators of each entry occupy one probe block, the probe starts in
/// the pure state |0⟩, and M carries the outcome on each block. Throws
/// NotCP when an entry fails the Choi test.
IndirectModel dilate_cp_distribution(const OperationalDistribution& opdist,
                                     double cp_tol = tol::cp);

/// Max over outcomes and random densities of
/// ‖realize(model).X(x)ρ − opdist.X(x)ρ‖_tr (missing entries count as
/// the zero map).
double verify_realization(const IndirectModel& model,
                          const OperationalDistribution& opdist,
                          int samples = 50, std::uint64_t seed = 0xd11a7e5u);

}  // namespace qreduce

#endif  // QREDUCE_DILATION_HPP
