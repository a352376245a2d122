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

#ifndef QREDUCE_SEQUENTIAL_HPP
#define QREDUCE_SEQUENTIAL_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "qreduce/apparatus.hpp"

namespace qreduce {

/// Joint outcome distribution of two successive measurements.
struct JointDistribution {
  std::map<std::pair<double, double>, double> entries;

  double total() const;
  /// Entry matched within `tolerance`; zero when absent.
  double probability_of(double x, double y, double tolerance = tol::outcome) const;
  std::map<double, double> marginal_first() const;
  std::map<double, double> marginal_second() const;
  double max_abs_diff(const JointDistribution& other) const;
};

/// Pr{x=x, y=y ‖ ρ} = Tr[Y(y) X(x) ρ], by composition.
JointDistribution joint_distribution(const Apparatus& first,
                                     const Apparatus& second,
                                     const DensityOperator& rho);

/// The same distribution assembled from the statistical property:
/// Pr{y=y ‖ ρ_{x=x}} · Pr{x=x ‖ ρ}, with zero-probability first outcomes
/// contributing exact zeros.
JointDistribution joint_via_conditional(const Apparatus& first,
                                        const Apparatus& second,
                                        const DensityOperator& rho,
                                        double prob_floor = tol::prob_floor);

using JointFunction = std::function<JointDistribution(const DensityOperator&)>;

/// Max entrywise violation of
/// J(αρ₁+(1−α)ρ₂) = αJ(ρ₁) + (1−α)J(ρ₂).
double check_mixing_law(const JointFunction& joint, const DensityOperator& rho1,
                        const DensityOperator& rho2, double alpha);

double check_mixing_law(const Apparatus& first, const Apparatus& second,
                        const DensityOperator& rho1, const DensityOperator& rho2,
                        double alpha);

/// Set-indexed view of an operational distribution:
/// E(Δ) = Σ_{x∈Δ} X(x).
class PsvMeasureView {
 public:
  explicit PsvMeasureView(OperationalDistribution opdist)
      : opdist_(std::move(opdist)) {}

  const OperationalDistribution& opdist() const { return opdist_; }
  int dim() const { return opdist_.dim(); }

  SuperOperator measure_of(const std::set<double>& delta) const;

 private:
  OperationalDistribution opdist_;
};

/// Pr{x∈Δ ‖ ρ} = Σ_{x∈Δ} Tr[X(x)ρ], accumulated in ascending outcome order.
double psv_probability(const PsvMeasureView& view, const std::set<double>& delta,
                       const DensityOperator& rho);

/// ρ_{x∈Δ} = E(Δ)ρ / Tr[E(Δ)ρ]; throws ZeroProbability at or below the floor.
DensityOperator psv_output_state(const PsvMeasureView& view,
                                 const std::set<double>& delta,
                                 const DensityOperator& rho,
                                 double prob_floor = tol::prob_floor);

/// Pr{x∈ℝ, b=b_m ‖ ρ} = Tr[E^B(b_m) Tρ], the statistics of measuring B
/// after a nonselective measurement.
std::map<double, double> nonselective_marginal(const Apparatus& app,
                                               const DiscreteObservable& b,
                                               const DensityOperator& rho);

struct TrajectoryStep {
  double outcome;
  DensityOperator state;
};

/// One seeded run through a chain of apparatuses: at each step the
/// outcome is drawn from the output distribution and the state advances
/// to the output state. Deterministic in the seed.
std::vector<TrajectoryStep> sample_trajectory(const std::vector<Apparatus>& chain,
                                              const DensityOperator& initial,
                                              std::uint64_t seed,
                                              double prob_floor = tol::prob_floor);

}  // namespace qreduce

#endif  // QREDUCE_SEQUENTIAL_HPP
