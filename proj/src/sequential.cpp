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

#include "qreduce/sequential.hpp"

#include <algorithm>
#include <cmath>

#include "qreduce/rng.hpp"

namespace qreduce {

double JointDistribution::total() const {
  double sum = 0.0;
  for (const auto& [xy, p] : entries) sum += p;
  return sum;
}

double JointDistribution::probability_of(double x, double y,
                                         double tolerance) const {
  for (const auto& [xy, p] : entries)
    if (std::abs(xy.first - x) <= tolerance && std::abs(xy.second - y) <= tolerance)
      return p;
  return 0.0;
}

std::map<double, double> JointDistribution::marginal_first() const {
  std::map<double, double> out;
  for (const auto& [xy, p] : entries) out[xy.first] += p;
  return out;
}

std::map<double, double> JointDistribution::marginal_second() const {
  std::map<double, double> out;
  for (const auto& [xy, p] : entries) out[xy.second] += p;
  return out;
}

double JointDistribution::max_abs_diff(const JointDistribution& other) const {
  double dev = 0.0;
  for (const auto& [xy, p] : entries) {
    const auto it = other.entries.find(xy);
    dev = std::max(dev, std::abs(p - (it == other.entries.end() ? 0.0 : it->second)));
  }
  for (const auto& [xy, p] : other.entries)
    if (entries.find(xy) == entries.end()) dev = std::max(dev, std::abs(p));
  return dev;
}

JointDistribution joint_distribution(const Apparatus& first,
                                     const Apparatus& second,
                                     const DensityOperator& rho) {
  if (first.dim() != second.dim() || rho.dim() != first.dim())
    throw DimensionError("joint_distribution: dimension mismatch");
  JointDistribution joint;
  for (const auto& ex : first.opdist().entries())
    for (const auto& ey : second.opdist().entries())
      joint.entries[{ex.outcome, ey.outcome}] =
          compose(ey.operation, ex.operation).apply(rho.matrix()).trace().real();
  return joint;
}

JointDistribution joint_via_conditional(const Apparatus& first,
                                        const Apparatus& second,
                                        const DensityOperator& rho,
                                        double prob_floor) {
  if (first.dim() != second.dim() || rho.dim() != first.dim())
    throw DimensionError("joint_via_conditional: dimension mismatch");
  JointDistribution joint;
  const OutcomeStatistics stats = measure(first, rho, prob_floor);
  for (const auto& [x, entry] : stats.entries) {
    if (!entry.state.has_value()) {
      for (const auto& ey : second.opdist().entries())
        joint.entries[{x, ey.outcome}] = 0.0;
      continue;
    }
    const OutcomeStatistics conditional = measure(second, *entry.state, prob_floor);
    for (const auto& [y, centry] : conditional.entries)
      joint.entries[{x, y}] = centry.probability * entry.probability;
  }
  return joint;
}

double check_mixing_law(const JointFunction& joint, const DensityOperator& rho1,
                        const DensityOperator& rho2, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error("check_mixing_law: alpha must lie in (0,1)");
  const DensityOperator mix(alpha * rho1.matrix() + (1.0 - alpha) * rho2.matrix());
  const JointDistribution lhs = joint(mix);
  JointDistribution rhs;
  const JointDistribution j1 = joint(rho1);
  const JointDistribution j2 = joint(rho2);
  for (const auto& [xy, p] : j1.entries) rhs.entries[xy] += alpha * p;
  for (const auto& [xy, p] : j2.entries) rhs.entries[xy] += (1.0 - alpha) * p;
  return lhs.max_abs_diff(rhs);
}

double check_mixing_law(const Apparatus& first, const Apparatus& second,
                        const DensityOperator& rho1, const DensityOperator& rho2,
                        double alpha) {
  return check_mixing_law(
      [&](const DensityOperator& rho) {
        return joint_distribution(first, second, rho);
      },
      rho1, rho2, alpha);
}

SuperOperator PsvMeasureView::measure_of(const std::set<double>& delta) const {
  SuperOperator sum = SuperOperator::zero(opdist_.dim());
  for (const double x : delta) sum += opdist_.operation_or_zero(x);
  return sum;
}

double psv_probability(const PsvMeasureView& view, const std::set<double>& delta,
                       const DensityOperator& rho) {
  if (rho.dim() != view.dim())
    throw DimensionError("psv_probability: dimension mismatch");
  double sum = 0.0;  // std::set iterates in ascending order
  for (const double x : delta)
    sum += view.opdist().operation_or_zero(x).apply(rho.matrix()).trace().real();
  return sum;
}

DensityOperator psv_output_state(const PsvMeasureView& view,
                                 const std::set<double>& delta,
                                 const DensityOperator& rho, double prob_floor) {
  if (rho.dim() != view.dim())
    throw DimensionError("psv_output_state: dimension mismatch");
  const double p = psv_probability(view, delta, rho);
  if (p <= prob_floor)
    throw ZeroProbability("psv_output_state: outcome set has probability " +
                          std::to_string(p));
  return DensityOperator(view.measure_of(delta).apply(rho.matrix()) / p);
}

std::map<double, double> nonselective_marginal(const Apparatus& app,
                                               const DiscreteObservable& b,
                                               const DensityOperator& rho) {
  if (app.dim() != b.dim() || rho.dim() != app.dim())
    throw DimensionError("nonselective_marginal: dimension mismatch");
  const Matrix post = nonselective_operation(app).apply(rho.matrix());
  std::map<double, double> out;
  for (const auto& o : b.outcomes())
    out[o.value] = (o.projection * post).trace().real();
  return out;
}

std::vector<TrajectoryStep> sample_trajectory(const std::vector<Apparatus>& chain,
                                              const DensityOperator& initial,
                                              std::uint64_t seed,
                                              double prob_floor) {
  Rng rng(seed);
  std::vector<TrajectoryStep> steps;
  steps.reserve(chain.size());
  DensityOperator state = initial;
  for (const Apparatus& app : chain) {
    const OutcomeStatistics stats = measure(app, state, prob_floor);
    const double u = rng.uniform() * stats.total_probability();
    double cumulative = 0.0;
    const std::pair<double, OutcomeStatistics::Entry>* chosen = nullptr;
    for (const auto& entry : stats.entries) {
      cumulative += entry.second.probability;
      if (u < cumulative && entry.second.state.has_value()) {
        chosen = &entry;
        break;
      }
    }
    if (chosen == nullptr) {
      // u landed on the rounding boundary; take the last definite outcome.
      for (const auto& entry : stats.entries)
        if (entry.second.state.has_value()) chosen = &entry;
    }
    if (chosen == nullptr)
      throw ZeroProbability("sample_trajectory: every outcome is indefinite");
    state = *chosen->second.state;
    steps.push_back({chosen->first, state});
  }
  return steps;
}

}  // namespace qreduce
