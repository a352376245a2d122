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

#ifndef QREDUCE_APPARATUS_HPP
#define QREDUCE_APPARATUS_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qreduce/operators.hpp"
#include "qreduce/superop.hpp"

namespace qreduce {

/// Finite family {X(x)} of per-outcome operations. Entries are kept
/// sorted by outcome; keys are exact reals.
class OperationalDistribution {
 public:
  struct Entry {
    double outcome;
    SuperOperator operation;
  };

  OperationalDistribution(int dim, std::vector<Entry> entries);

  int dim() const { return dim_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  std::vector<double> outcomes() const;
  const SuperOperator* find(double outcome, double tolerance = tol::outcome) const;
  /// The operation for `outcome`, the zero map when absent.
  SuperOperator operation_or_zero(double outcome,
                                  double tolerance = tol::outcome) const;

  /// Σ_x X(x), the state change when the outcome is ignored.
  SuperOperator total() const;

  /// ‖Σ_x X(x)*(I) − I‖_max.
  double normalization_deviation() const;

  /// Smallest Hermitian-part eigenvalue of any entry applied to `samples`
  /// random densities (negative values witness a positivity violation).
  double positivity_floor(int samples, std::uint64_t seed) const;

 private:
  int dim_;
  std::vector<Entry> entries_;
};

/// The positive operators X(x) = X(x)*(I); determines all outcome
/// probabilities.
struct EffectDistribution {
  int dim;
  std::vector<std::pair<double, Matrix>> effects;  // sorted by outcome

  /// ‖Σ_x X(x) − I‖_max.
  double completeness_deviation() const;
};

/// A measuring apparatus: a labelled operational distribution whose
/// entries are positive (sampled at construction) and whose effects sum
/// to the identity.
class Apparatus {
 public:
  Apparatus(std::string label, OperationalDistribution opdist,
            double norm_tolerance = tol::normalization,
            int positivity_samples = 100);

  const std::string& label() const { return label_; }
  const OperationalDistribution& opdist() const { return opdist_; }
  int dim() const { return opdist_.dim(); }

 private:
  std::string label_;
  OperationalDistribution opdist_;
};

/// Output distribution together with the per-outcome output states; a
/// state is absent (indefinite) exactly when its probability is at or
/// below the floor.
struct OutcomeStatistics {
  struct Entry {
    double probability;
    std::optional<DensityOperator> state;
  };

  std::vector<std::pair<double, Entry>> entries;  // sorted by outcome

  double total_probability() const;
  const Entry& at(double outcome, double tolerance = tol::outcome) const;
};

EffectDistribution effect_distribution(const OperationalDistribution& opdist);
EffectDistribution effect_distribution(const Apparatus& app);

/// T = Σ_x X(x); trace preserving and positive for any valid apparatus.
SuperOperator nonselective_operation(const Apparatus& app);

OutcomeStatistics measure(const Apparatus& app, const DensityOperator& rho,
                          double prob_floor = tol::prob_floor);

/// True iff X(x)*(I) = E^A(x) for every outcome of A and the operations
/// at outcomes outside A's spectrum vanish.
bool is_a_compatible(const OperationalDistribution& opdist,
                     const DiscreteObservable& a, double tolerance = tol::compat);

/// Maximum deviation, over outcomes and random trace-class operators, of
/// the identities X(x)σ = T[E^A(x)σ] = T[σE^A(x)] = T[E^A(x)σE^A(x)] and
/// their duals X(x)*B = E^A(x)T*(B) = T*(B)E^A(x) = E^A(x)T*(B)E^A(x).
/// Throws NotCompatible unless is_a_compatible holds.
double verify_decomposition(const OperationalDistribution& opdist,
                            const DiscreteObservable& a, int samples = 50,
                            std::uint64_t seed = 0xdecff5u,
                            double tolerance = tol::compat);

/// The unique A-compatible distribution with total operation T, via
/// X(x)ρ = T[E^A(x)ρ]. Requires T trace preserving, positive (sampled),
/// with dual range in the commutant of A; throws NotCompatible otherwise.
Apparatus from_nonselective(const SuperOperator& t, const DiscreteObservable& a,
                            std::string label = "from-nonselective",
                            double commutant_tolerance = tol::commutant);

/// Apparatus measuring nondegenerate A that leaves the system in
/// states[n] whenever outcome n occurs: X(a_n)ρ = ⟨φ_n|ρ|φ_n⟩ ϱ_n.
Apparatus from_output_states(const DiscreteObservable& a,
                             const std::vector<DensityOperator>& states,
                             std::string label = "output-states");

/// X(x)ρ = E^A(x) ρ E^A(x); works for degenerate observables.
Apparatus projection_postulate_apparatus(const DiscreteObservable& a,
                                         std::string label = "projection-postulate");

/// Apparatus measuring f(x): Y(y) = Σ_{x: f(x)=y} X(x).
Apparatus coarse_grain(const Apparatus& app,
                       const std::function<double(double)>& f,
                       std::string label = "coarse-grained");

/// True iff an immediate repetition yields the same outcome with
/// probability one: Tr[E^A(x) X(x)ρ] = Tr[X(x)ρ] on a spanning family.
bool is_repeatable(const Apparatus& app, const DiscreteObservable& a,
                   double tolerance = tol::compat);

/// True iff the effect distribution coincides with A's spectral
/// projections, i.e. the apparatus measures the observable A.
bool measures_observable(const Apparatus& app, const DiscreteObservable& a,
                         double tolerance = tol::compat);

}  // namespace qreduce

#endif  // QREDUCE_APPARATUS_HPP
