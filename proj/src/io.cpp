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

#include "qreduce/io.hpp"

#include <fstream>

namespace qreduce {

namespace {

const Json& require(const Json& j, const char* field) {
  if (!j.is_object() || !j.contains(field))
    throw ParseError(std::string("missing field '") + field + "'");
  return j.at(field);
}

double require_number(const Json& j, const char* field) {
  const Json& v = require(j, field);
  if (!v.is_number()) throw ParseError(std::string("field '") + field + "' is not a number");
  return v.get<double>();
}

int require_dim(const Json& j, const char* field) {
  const Json& v = require(j, field);
  if (!v.is_number_integer() || v.get<int>() < 1)
    throw ParseError(std::string("field '") + field + "' is not a positive integer");
  return v.get<int>();
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  const int d = static_cast<int>(m.rows());
  Json re = Json::array();
  Json im = Json::array();
  for (int i = 0; i < d; ++i) {
    Json re_row = Json::array();
    Json im_row = Json::array();
    for (int j = 0; j < d; ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return Json{{"dim", d}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const Json& j) {
  const int d = require_dim(j, "dim");
  const Json& re = require(j, "re");
  const Json& im = require(j, "im");
  if (!re.is_array() || !im.is_array() || static_cast<int>(re.size()) != d ||
      static_cast<int>(im.size()) != d)
    throw ParseError("matrix: 're'/'im' must be dim rows");
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) {
    const Json& re_row = re.at(i);
    const Json& im_row = im.at(i);
    if (!re_row.is_array() || !im_row.is_array() ||
        static_cast<int>(re_row.size()) != d || static_cast<int>(im_row.size()) != d)
      throw ParseError("matrix: row length does not match dim");
    for (int k = 0; k < d; ++k) {
      if (!re_row.at(k).is_number() || !im_row.at(k).is_number())
        throw ParseError("matrix: entries must be numbers");
      m(i, k) = Complex(re_row.at(k).get<double>(), im_row.at(k).get<double>());
    }
  }
  if (!m.allFinite()) throw ParseError("matrix: non-finite entry");
  return m;
}

Json observable_to_json(const DiscreteObservable& a) {
  Json outcomes = Json::array();
  for (const auto& o : a.outcomes())
    outcomes.push_back(Json{{"value", o.value},
                            {"projection", matrix_to_json(o.projection)}});
  return Json{{"dim", a.dim()}, {"outcomes", std::move(outcomes)}};
}

DiscreteObservable observable_from_json(const Json& j) {
  const int d = require_dim(j, "dim");
  const Json& outcomes = require(j, "outcomes");
  if (!outcomes.is_array() || outcomes.empty())
    throw ParseError("observable: 'outcomes' must be a non-empty array");
  std::vector<DiscreteObservable::Outcome> parsed;
  parsed.reserve(outcomes.size());
  for (const Json& o : outcomes)
    parsed.push_back({require_number(o, "value"),
                      matrix_from_json(require(o, "projection"))});
  return DiscreteObservable(d, std::move(parsed));
}

Json superoperator_to_json(const SuperOperator& l) {
  return Json{{"dim", l.dim()},
              {"kind", "transfer"},
              {"data", matrix_to_json(l.transfer())}};
}

SuperOperator superoperator_from_json(const Json& j) {
  const int d = require_dim(j, "dim");
  const Json& kind = require(j, "kind");
  const Json& data = require(j, "data");
  if (kind == "transfer") return SuperOperator(d, matrix_from_json(data));
  if (kind == "choi") return from_choi({d, matrix_from_json(data)});
  if (kind == "kraus") {
    if (!data.is_array()) throw ParseError("superoperator: kraus data must be an array");
    std::vector<Matrix> ops;
    ops.reserve(data.size());
    for (const Json& m : data) ops.push_back(matrix_from_json(m));
    return ops.empty() ? SuperOperator::zero(d) : SuperOperator::from_kraus(ops);
  }
  throw ParseError("superoperator: unknown kind '" + kind.dump() + "'");
}

Json opdist_to_json(const OperationalDistribution& opdist, const std::string& label) {
  Json entries = Json::array();
  for (const auto& e : opdist.entries())
    entries.push_back(Json{{"outcome", e.outcome},
                           {"superoperator", superoperator_to_json(e.operation)}});
  return Json{{"label", label}, {"dim", opdist.dim()}, {"entries", std::move(entries)}};
}

ParsedApparatus apparatus_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("apparatus: expected an object");
  if (j.contains("label") && !j.at("label").is_string())
    throw ParseError("apparatus: 'label' must be a string");
  const std::string label = j.contains("label") ? j.at("label").get<std::string>() : "";

  if (j.contains("observable") && j.contains("output_states")) {
    DiscreteObservable a = observable_from_json(j.at("observable"));
    const Json& states = j.at("output_states");
    if (!states.is_array())
      throw ParseError("apparatus: 'output_states' must be an array");
    std::vector<DensityOperator> parsed;
    parsed.reserve(states.size());
    for (const Json& s : states) parsed.emplace_back(matrix_from_json(s));
    Apparatus app = from_output_states(a, parsed, label);
    return {app.label(), app.opdist()};
  }

  const int d = require_dim(j, "dim");
  const Json& entries = require(j, "entries");
  if (!entries.is_array() || entries.empty())
    throw ParseError("apparatus: 'entries' must be a non-empty array");
  std::vector<OperationalDistribution::Entry> parsed;
  parsed.reserve(entries.size());
  for (const Json& e : entries)
    parsed.push_back({require_number(e, "outcome"),
                      superoperator_from_json(require(e, "superoperator"))});
  return {label, OperationalDistribution(d, std::move(parsed))};
}

Json apparatus_to_json(const Apparatus& app) {
  return opdist_to_json(app.opdist(), app.label());
}

Json model_to_json(const IndirectModel& model) {
  return Json{{"sys_dim", model.sys_dim()},
              {"probe_dim", model.probe_dim()},
              {"probe_state", matrix_to_json(model.probe_state().matrix())},
              {"unitary", matrix_to_json(model.unitary())},
              {"probe_observable", observable_to_json(model.probe_observable())}};
}

IndirectModel model_from_json(const Json& j) {
  const int sys_dim = require_dim(j, "sys_dim");
  const int probe_dim = require_dim(j, "probe_dim");
  // Invariant violations (non-unitary interaction, invalid probe state)
  // propagate as domain errors, not parse errors.
  return IndirectModel(sys_dim, probe_dim,
                       DensityOperator(matrix_from_json(require(j, "probe_state"))),
                       matrix_from_json(require(j, "unitary")),
                       observable_from_json(require(j, "probe_observable")));
}

Json density_to_json(const DensityOperator& rho) {
  return matrix_to_json(rho.matrix());
}

DensityOperator density_from_json(const Json& j) {
  return DensityOperator(matrix_from_json(j));
}

Json joint_to_json(const JointDistribution& joint) {
  Json entries = Json::array();
  for (const auto& [xy, p] : joint.entries)
    entries.push_back(Json{{"x", xy.first}, {"y", xy.second}, {"p", p}});
  return Json{{"entries", std::move(entries)}};
}

Json statistics_to_json(const OutcomeStatistics& stats) {
  Json entries = Json::array();
  for (const auto& [x, e] : stats.entries) {
    Json record{{"outcome", x}, {"probability", e.probability}};
    record["state"] = e.state.has_value() ? matrix_to_json(e.state->matrix())
                                          : Json(nullptr);
    entries.push_back(std::move(record));
  }
  return Json{{"entries", std::move(entries)}};
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace qreduce
