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

#include "qreduce/apparatus.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Eigenvalues>

#include "qreduce/matrix_ops.hpp"
#include "qreduce/rng.hpp"

namespace qreduce {

namespace {
constexpr std::uint64_t kConstructionSeed = 0xc0ff5eed;
}

OperationalDistribution::OperationalDistribution(int dim,
                                                 std::vector<Entry> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (entries_.empty())
    throw InvalidDistribution("OperationalDistribution: no entries");
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.outcome < b.outcome; });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].operation.dim() != dim_)
      throw DimensionError("OperationalDistribution: entry dimension mismatch");
    if (i > 0 && !(entries_[i - 1].outcome < entries_[i].outcome))
      throw InvalidDistribution("OperationalDistribution: duplicate outcome key");
  }
}

std::vector<double> OperationalDistribution::outcomes() const {
  std::vector<double> xs;
  xs.reserve(entries_.size());
  for (const auto& e : entries_) xs.push_back(e.outcome);
  return xs;
}

const SuperOperator* OperationalDistribution::find(double outcome,
                                                   double tolerance) const {
  for (const auto& e : entries_)
    if (std::abs(e.outcome - outcome) <= tolerance) return &e.operation;
  return nullptr;
}

SuperOperator OperationalDistribution::operation_or_zero(double outcome,
                                                         double tolerance) const {
  const SuperOperator* op = find(outcome, tolerance);
  return op ? *op : SuperOperator::zero(dim_);
}

SuperOperator OperationalDistribution::total() const {
  SuperOperator t = SuperOperator::zero(dim_);
  for (const auto& e : entries_) t += e.operation;
  return t;
}

double OperationalDistribution::normalization_deviation() const {
  const Matrix identity = Matrix::Identity(dim_, dim_);
  Matrix sum = Matrix::Zero(dim_, dim_);
  for (const auto& e : entries_) sum += dual(e.operation).apply(identity);
  return max_abs(sum - identity);
}

double OperationalDistribution::positivity_floor(int samples,
                                                 std::uint64_t seed) const {
  Rng base(seed);
  double floor = 0.0;
  for (std::size_t n = 0; n < entries_.size(); ++n) {
    Rng rng = base.split(n);
    for (int s = 0; s < samples; ++s) {
      const Matrix rho = (s % 2 == 0) ? random_pure_density(dim_, rng)
                                      : random_density(dim_, rng);
      const Matrix out = entries_[n].operation.apply(rho);
      Eigen::SelfAdjointEigenSolver<Matrix> es(
          Matrix(0.5 * (out + out.adjoint())), Eigen::EigenvaluesOnly);
      floor = std::min(floor, es.eigenvalues().minCoeff());
    }
  }
  return floor;
}

double EffectDistribution::completeness_deviation() const {
  Matrix sum = Matrix::Zero(dim, dim);
  for (const auto& [x, e] : effects) sum += e;
  return max_abs(sum - Matrix::Identity(dim, dim));
}

Apparatus::Apparatus(std::string label, OperationalDistribution opdist,
                     double norm_tolerance, int positivity_samples)
    : label_(std::move(label)), opdist_(std::move(opdist)) {
  const double dev = opdist_.normalization_deviation();
  if (dev > norm_tolerance)
    throw InvalidDistribution("Apparatus '" + label_ +
                              "': effects do not sum to identity, deviation " +
                              std::to_string(dev));
  if (positivity_samples > 0) {
    const double floor = opdist_.positivity_floor(positivity_samples, kConstructionSeed);
    if (floor < -tol::psd)
      throw InvalidDistribution("Apparatus '" + label_ +
                                "': operation maps a state to an operator with "
                                "eigenvalue " + std::to_string(floor));
  }
}

double OutcomeStatistics::total_probability() const {
  double sum = 0.0;
  for (const auto& [x, e] : entries) sum += e.probability;
  return sum;
}

const OutcomeStatistics::Entry& OutcomeStatistics::at(double outcome,
                                                      double tolerance) const {
  for (const auto& [x, e] : entries)
    if (std::abs(x - outcome) <= tolerance) return e;
  throw Error("OutcomeStatistics: no such outcome");
}

EffectDistribution effect_distribution(const OperationalDistribution& opdist) {
  const Matrix identity = Matrix::Identity(opdist.dim(), opdist.dim());
  EffectDistribution out{opdist.dim(), {}};
  out.effects.reserve(opdist.size());
  for (const auto& e : opdist.entries())
    out.effects.emplace_back(e.outcome, dual(e.operation).apply(identity));
  return out;
}

EffectDistribution effect_distribution(const Apparatus& app) {
  return effect_distribution(app.opdist());
}

SuperOperator nonselective_operation(const Apparatus& app) {
  return app.opdist().total();
}

OutcomeStatistics measure(const Apparatus& app, const DensityOperator& rho,
                          double prob_floor) {
  if (rho.dim() != app.dim())
    throw DimensionError("measure: state dimension mismatch");
  OutcomeStatistics stats;
  for (const auto& e : app.opdist().entries()) {
    const Matrix out = e.operation.apply(rho.matrix());
    const double p = out.trace().real();
    OutcomeStatistics::Entry entry{p, std::nullopt};
    if (p > prob_floor) entry.state = DensityOperator(out / p);
    stats.entries.emplace_back(e.outcome, std::move(entry));
  }
  return stats;
}

bool is_a_compatible(const OperationalDistribution& opdist,
                     const DiscreteObservable& a, double tolerance) {
  if (opdist.dim() != a.dim()) return false;
  const Matrix identity = Matrix::Identity(a.dim(), a.dim());
  for (const auto& o : a.outcomes()) {
    const SuperOperator* op = opdist.find(o.value);
    if (op == nullptr) return false;
    if (max_abs(dual(*op).apply(identity) - o.projection) > tolerance)
      return false;
  }
  for (const auto& e : opdist.entries())
    if (!a.has_outcome(e.outcome) && max_abs(e.operation.transfer()) > tolerance)
      return false;
  return true;
}

double verify_decomposition(const OperationalDistribution& opdist,
                            const DiscreteObservable& a, int samples,
                            std::uint64_t seed, double tolerance) {
  if (!is_a_compatible(opdist, a, tolerance))
    throw NotCompatible("verify_decomposition: distribution is not compatible "
                        "with the observable");
  const SuperOperator t = opdist.total();
  const DualSuperOperator t_dual = dual(t);
  struct OutcomeOps {
    Matrix projection;
    SuperOperator op;
    DualSuperOperator op_dual;
  };
  std::vector<OutcomeOps> per_outcome;
  per_outcome.reserve(a.size());
  for (const auto& o : a.outcomes()) {
    SuperOperator op = opdist.operation_or_zero(o.value);
    DualSuperOperator op_dual = dual(op);
    per_outcome.push_back({o.projection, std::move(op), std::move(op_dual)});
  }

  Rng rng(seed);
  double deviation = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Matrix sigma = random_matrix(a.dim(), rng);
    const Matrix b = random_matrix(a.dim(), rng);
    for (const auto& oo : per_outcome) {
      const Matrix& e = oo.projection;
      const Matrix x_sigma = oo.op.apply(sigma);
      deviation = std::max(deviation, max_abs(x_sigma - t.apply(e * sigma)));
      deviation = std::max(deviation, max_abs(x_sigma - t.apply(sigma * e)));
      deviation = std::max(deviation, max_abs(x_sigma - t.apply(e * sigma * e)));

      const Matrix x_dual_b = oo.op_dual.apply(b);
      const Matrix tb = t_dual.apply(b);
      deviation = std::max(deviation, max_abs(x_dual_b - e * tb));
      deviation = std::max(deviation, max_abs(x_dual_b - tb * e));
      deviation = std::max(deviation, max_abs(x_dual_b - e * tb * e));
      // the dual range commutes with every spectral projection
      deviation = std::max(deviation, max_abs(e * tb - tb * e));
    }
  }
  return deviation;
}

Apparatus from_nonselective(const SuperOperator& t, const DiscreteObservable& a,
                            std::string label, double commutant_tolerance) {
  if (t.dim() != a.dim())
    throw DimensionError("from_nonselective: dimension mismatch");
  const int d = a.dim();
  const DualSuperOperator t_dual = dual(t);
  const Matrix identity = Matrix::Identity(d, d);
  if (max_abs(t_dual.apply(identity) - identity) > tol::normalization)
    throw NotCompatible("from_nonselective: superoperator is not trace preserving");
  if (!check_positivity(t, 100, kConstructionSeed).no_counterexample_found())
    throw NotCompatible("from_nonselective: superoperator is not positive");

  // Dual range must lie in the commutant of A; sufficient to test the
  // matrix-unit basis.
  const Matrix a_op = a.to_operator();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Matrix b = basis_vector(d, i) * basis_vector(d, j).adjoint();
      const Matrix tb = t_dual.apply(b);
      if (max_abs(tb * a_op - a_op * tb) > commutant_tolerance)
        throw NotCompatible("from_nonselective: dual range does not commute "
                            "with the observable");
    }
  }

  std::vector<OperationalDistribution::Entry> entries;
  entries.reserve(a.size());
  for (const auto& o : a.outcomes())
    entries.push_back(
        {o.value, compose(t, SuperOperator::left_multiply(o.projection))});
  return Apparatus(std::move(label), OperationalDistribution(d, std::move(entries)));
}

Apparatus from_output_states(const DiscreteObservable& a,
                             const std::vector<DensityOperator>& states,
                             std::string label) {
  if (!a.nondegenerate())
    throw DegenerateObservable("from_output_states: observable has a spectral "
                               "projection of rank > 1");
  if (states.size() != a.size())
    throw CountMismatch("from_output_states: need one state per outcome");
  std::vector<OperationalDistribution::Entry> entries;
  entries.reserve(states.size());
  for (std::size_t n = 0; n < states.size(); ++n) {
    if (states[n].dim() != a.dim())
      throw DimensionError("from_output_states: state dimension mismatch");
    entries.push_back(
        {a.outcomes()[n].value,
         SuperOperator::state_preparation(states[n].matrix(),
                                          a.outcomes()[n].projection)});
  }
  return Apparatus(std::move(label),
                   OperationalDistribution(a.dim(), std::move(entries)));
}

Apparatus projection_postulate_apparatus(const DiscreteObservable& a,
                                         std::string label) {
  std::vector<OperationalDistribution::Entry> entries;
  entries.reserve(a.size());
  for (const auto& o : a.outcomes())
    entries.push_back({o.value, SuperOperator::sandwich(o.projection)});
  return Apparatus(std::move(label),
                   OperationalDistribution(a.dim(), std::move(entries)));
}

Apparatus coarse_grain(const Apparatus& app,
                       const std::function<double(double)>& f,
                       std::string label) {
  std::map<double, SuperOperator> pooled;
  for (const auto& e : app.opdist().entries()) {
    const double y = f(e.outcome);
    auto it = pooled.find(y);
    if (it == pooled.end())
      pooled.emplace(y, e.operation);
    else
      it->second += e.operation;
  }
  std::vector<OperationalDistribution::Entry> entries;
  entries.reserve(pooled.size());
  for (auto& [y, op] : pooled) entries.push_back({y, std::move(op)});
  return Apparatus(std::move(label),
                   OperationalDistribution(app.dim(), std::move(entries)));
}

bool is_repeatable(const Apparatus& app, const DiscreteObservable& a,
                   double tolerance) {
  if (!is_a_compatible(app.opdist(), a, tolerance))
    throw NotCompatible("is_repeatable: apparatus does not measure the observable");
  for (const auto& o : a.outcomes()) {
    const SuperOperator* op = app.opdist().find(o.value);
    for (const Matrix& rho : canonical_spanning_densities(a.dim())) {
      const Matrix out = op->apply(rho);
      const Complex repeated = (o.projection * out).trace();
      if (std::abs(repeated - out.trace()) > tolerance) return false;
    }
  }
  return true;
}

bool measures_observable(const Apparatus& app, const DiscreteObservable& a,
                         double tolerance) {
  return is_a_compatible(app.opdist(), a, tolerance);
}

}  // namespace qreduce
