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

#ifndef QREDUCE_IO_HPP
#define QREDUCE_IO_HPP

#include <string>

#include <json.hpp>

#include "qreduce/apparatus.hpp"
#include "qreduce/dilation.hpp"
#include "qreduce/sequential.hpp"

namespace qreduce {

using Json = nlohmann::json;

// All parsers throw ParseError on malformed input.

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json observable_to_json(const DiscreteObservable& a);
DiscreteObservable observable_from_json(const Json& j);

Json superoperator_to_json(const SuperOperator& l);
SuperOperator superoperator_from_json(const Json& j);

Json opdist_to_json(const OperationalDistribution& opdist, const std::string& label);

/// Parsed apparatus content before the Apparatus invariants are enforced;
/// `verify` reports on these, every other consumer constructs an
/// Apparatus (which validates).
struct ParsedApparatus {
  std::string label;
  OperationalDistribution opdist;

  Apparatus to_apparatus() const { return Apparatus(label, opdist); }
};

/// Accepts both the entries form and the compact observable/output_states
/// form.
ParsedApparatus apparatus_from_json(const Json& j);

Json apparatus_to_json(const Apparatus& app);

Json model_to_json(const IndirectModel& model);
IndirectModel model_from_json(const Json& j);

Json density_to_json(const DensityOperator& rho);
DensityOperator density_from_json(const Json& j);

Json joint_to_json(const JointDistribution& joint);
Json statistics_to_json(const OutcomeStatistics& stats);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace qreduce

#endif  // QREDUCE_IO_HPP
