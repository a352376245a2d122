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

#ifndef QREDUCE_SUPEROP_HPP
#define QREDUCE_SUPEROP_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qreduce/errors.hpp"
#include "qreduce/types.hpp"

namespace qreduce {

/// Linear map on operators, stored as its transfer matrix acting on
/// column-vectorized operators: vec(L σ) = transfer · vec(σ).
class SuperOperator {
 public:
  SuperOperator(int dim, Matrix transfer);

  static SuperOperator identity(int dim);
  static SuperOperator zero(int dim);
  /// ρ ↦ A ρ A†.
  static SuperOperator sandwich(const Matrix& a);
  /// ρ ↦ A ρ.
  static SuperOperator left_multiply(const Matrix& a);
  /// ρ ↦ ρ A.
  static SuperOperator right_multiply(const Matrix& a);
  /// ρ ↦ Σ_k M_k ρ M_k†.
  static SuperOperator from_kraus(const std::vector<Matrix>& ops);
  /// ρ ↦ Tr[effect · ρ] · state (rank one).
  static SuperOperator state_preparation(const Matrix& state, const Matrix& effect);

  int dim() const { return dim_; }
  const Matrix& transfer() const { return transfer_; }

  Matrix apply(const Matrix& sigma) const;

  SuperOperator& operator+=(const SuperOperator& other);
  friend SuperOperator operator+(SuperOperator a, const SuperOperator& b) {
    return a += b;
  }
  friend SuperOperator operator*(double s, const SuperOperator& l) {
    return SuperOperator(l.dim_, s * l.transfer_);
  }

 private:
  int dim_;
  Matrix transfer_;  // dim² × dim²
};

/// Heisenberg-picture map defined by Tr[A (Lρ)] = Tr[(L*A) ρ].
class DualSuperOperator {
 public:
  DualSuperOperator(int dim, Matrix transfer);

  int dim() const { return dim_; }
  const Matrix& transfer() const { return transfer_; }

  Matrix apply(const Matrix& a) const;

 private:
  int dim_;
  Matrix transfer_;
};

DualSuperOperator dual(const SuperOperator& l);
SuperOperator dual(const DualSuperOperator& l);

/// compose(L2, L1) σ = L2(L1 σ).
SuperOperator compose(const SuperOperator& l2, const SuperOperator& l1);

/// Σ_{ij} |i⟩⟨j| ⊗ L(|i⟩⟨j|); PSD exactly when L is completely positive.
struct ChoiMatrix {
  int dim;
  Matrix matrix;  // dim² × dim²
};

ChoiMatrix choi(const SuperOperator& l);
SuperOperator from_choi(const ChoiMatrix& c);

struct CpVerdict {
  bool cp;
  double min_eigenvalue;     // of the Hermitian part of the Choi matrix
  double hermiticity_error;  // ‖C − C†‖_max
};

CpVerdict is_completely_positive(const SuperOperator& l, double tolerance = tol::cp);

struct PositivityWitness {
  Matrix rho;
  double negative_eigenvalue;
};

/// Result of randomized positivity checking. The empty case does not
/// certify positivity; it only reports that sampling found no violation.
struct PositivityVerdict {
  std::optional<PositivityWitness> counterexample;

  bool no_counterexample_found() const { return !counterexample.has_value(); }
};

PositivityVerdict check_positivity(const SuperOperator& l, int samples,
                                   std::uint64_t seed, double tolerance = tol::psd);

/// Equivalent contractivity conditions for a positive superoperator, plus
/// the trace-preservation/unitality pair. The two contractivity flags are
/// evaluated through the dual condition 0 ≤ L*(I) ≤ I; trace_bound checks
/// 0 ≤ Tr[Lρ] ≤ 1 independently on a spanning family of densities.
struct ContractivityReport {
  bool contractive_tr_norm;
  bool dual_contractive;
  bool trace_bound;
  bool dual_identity_bound;
  bool trace_preserving;
  bool dual_unital;
};

ContractivityReport contractivity_report(const SuperOperator& l,
                                         double tolerance = 1e-9);

/// Kraus operators of a completely positive map.
struct KrausSet {
  int dim;
  std::vector<Matrix> operators;

  SuperOperator to_superoperator() const;
  bool trace_preserving(double tolerance = tol::trace) const;
};

/// Choi eigendecomposition; eigenvalues above rank_tol each yield one
/// Kraus operator. Throws NotCP when the map is not completely positive.
KrausSet kraus_decompose(const SuperOperator& l,
                         double rank_tol = tol::kraus_rank,
                         double cp_tol = tol::cp);

/// A state change given only pointwise on density operators.
using DensityAction = std::function<Matrix(const Matrix&)>;

/// The d² pure states |j⟩⟨j|, |e⁺_{jk}⟩⟨e⁺_{jk}|, |eⁱ_{jk}⟩⟨eⁱ_{jk}| with
/// e⁺ = (|j⟩+|k⟩)/√2 and eⁱ = (|j⟩+i|k⟩)/√2; spans the operator space.
std::vector<Matrix> canonical_spanning_densities(int dim);

/// Extends an action on density operators to the unique linear map that
/// agrees with it, then cross-checks the extension on random densities.
/// Throws InconsistentAction when the action does not respect mixtures.
SuperOperator linear_extension(const DensityAction& action, int dim,
                               double agree_tol = 1e-9, int check_samples = 50,
                               std::uint64_t seed = 0x713ea11u);

/// Solves for the linear map matching the action on an arbitrary spanning
/// family of densities (no consistency check).
SuperOperator linear_extension_from_family(const DensityAction& action,
                                           const std::vector<Matrix>& family);

}  // namespace qreduce

#endif  // QREDUCE_SUPEROP_HPP
