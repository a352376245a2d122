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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qreduce/io.hpp"
#include "test_support.hpp"

using namespace qreduce;
using namespace qreduce::testing;

TEST_CASE("matrix serialization round-trips bit for bit") {
  Rng rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 1 + static_cast<int>(rng.uniform() * 5);
    const Matrix m = random_matrix(dim, rng);
    const Matrix back = matrix_from_json(matrix_to_json(m));
    CHECK(max_abs(back - m) == 0.0);
    // emit -> parse -> emit is stable
    CHECK(matrix_to_json(back) == matrix_to_json(m));
  }
}

TEST_CASE("observable serialization round-trips") {
  Rng rng(102);
  const DiscreteObservable a = random_observable_with_ranks({2, 1, 1}, rng);
  const DiscreteObservable back = observable_from_json(observable_to_json(a));
  REQUIRE(back.size() == a.size());
  for (std::size_t n = 0; n < a.size(); ++n) {
    CHECK(back.outcomes()[n].value == a.outcomes()[n].value);
    CHECK(max_abs(back.outcomes()[n].projection - a.outcomes()[n].projection) ==
          0.0);
  }
}

TEST_CASE("superoperator serialization: transfer round-trip, kraus and choi "
          "parse to the same map") {
  Rng rng(103);
  const Matrix k1 = random_matrix(2, rng);
  const Matrix k2 = random_matrix(2, rng);
  const SuperOperator l = SuperOperator::from_kraus({k1, k2});

  const SuperOperator back = superoperator_from_json(superoperator_to_json(l));
  CHECK(max_abs(back.transfer() - l.transfer()) == 0.0);

  const Json kraus_form{
      {"dim", 2},
      {"kind", "kraus"},
      {"data", Json::array({matrix_to_json(k1), matrix_to_json(k2)})}};
  CHECK(max_abs(superoperator_from_json(kraus_form).transfer() - l.transfer()) <
        1e-15);

  const Json choi_form{{"dim", 2},
                       {"kind", "choi"},
                       {"data", matrix_to_json(choi(l).matrix)}};
  CHECK(max_abs(superoperator_from_json(choi_form).transfer() - l.transfer()) <
        1e-14);

  CHECK_THROWS_AS(
      superoperator_from_json(Json{{"dim", 2}, {"kind", "magic"}, {"data", 1}}),
      ParseError);
}

TEST_CASE("apparatus serialization: entries form round-trips value-identically") {
  Rng rng(104);
  const Apparatus app = random_cp_apparatus(2, 3, 1, rng);
  const Json j = apparatus_to_json(app);
  const ParsedApparatus parsed = apparatus_from_json(j);
  CHECK(parsed.label == app.label());
  REQUIRE(parsed.opdist.size() == app.opdist().size());
  for (std::size_t n = 0; n < parsed.opdist.size(); ++n) {
    CHECK(parsed.opdist.entries()[n].outcome ==
          app.opdist().entries()[n].outcome);
    CHECK(max_abs(parsed.opdist.entries()[n].operation.transfer() -
                  app.opdist().entries()[n].operation.transfer()) == 0.0);
  }
  CHECK(apparatus_to_json(parsed.to_apparatus()) == j);
}

TEST_CASE("apparatus serialization: compact output-state form") {
  Rng rng(105);
  const DiscreteObservable a = random_nondegenerate_observable(2, rng);
  std::vector<DensityOperator> states{DensityOperator(random_density(2, rng)),
                                      DensityOperator(random_density(2, rng))};
  Json j{{"label", "compact"},
         {"observable", observable_to_json(a)},
         {"output_states",
          Json::array({matrix_to_json(states[0].matrix()),
                       matrix_to_json(states[1].matrix())})}};
  const ParsedApparatus parsed = apparatus_from_json(j);
  const Apparatus expected = from_output_states(a, states, "compact");
  CHECK(parsed.label == "compact");
  for (std::size_t n = 0; n < parsed.opdist.size(); ++n)
    CHECK(max_abs(parsed.opdist.entries()[n].operation.transfer() -
                  expected.opdist().entries()[n].operation.transfer()) == 0.0);
}

TEST_CASE("model serialization round-trips") {
  Rng rng(106);
  const DiscreteObservable a = random_nondegenerate_observable(2, rng);
  std::vector<DensityOperator> states{DensityOperator(random_density(2, rng)),
                                      DensityOperator(random_density(2, rng, 1))};
  const IndirectModel model = construct_nondegenerate_dilation(a, states);
  const IndirectModel back = model_from_json(model_to_json(model));
  CHECK(back.sys_dim() == model.sys_dim());
  CHECK(back.probe_dim() == model.probe_dim());
  CHECK(max_abs(back.unitary() - model.unitary()) == 0.0);
  CHECK(max_abs(back.probe_state().matrix() - model.probe_state().matrix()) == 0.0);
  CHECK(verify_realization(back, realize(model).opdist()) < 1e-12);
}

TEST_CASE("parse errors: malformed structure") {
  CHECK_THROWS_AS(matrix_from_json(Json{{"dim", 2}, {"re", 3}, {"im", 4}}),
                  ParseError);
  CHECK_THROWS_AS(matrix_from_json(Json{{"dim", 2},
                                        {"re", Json::array({Json::array({1, 2})})},
                                        {"im", Json::array()}}),
                  ParseError);
  CHECK_THROWS_AS(observable_from_json(Json{{"dim", 2}}), ParseError);
  CHECK_THROWS_AS(apparatus_from_json(Json(3)), ParseError);
  CHECK_THROWS_AS(apparatus_from_json(Json{{"dim", 2}, {"entries", Json::array()}}),
                  ParseError);
}

TEST_CASE("semantic violations are domain errors, not parse errors") {
  // trace 2 is structurally a fine matrix but not a density operator
  const Json not_density = matrix_to_json(Matrix(2.0 * ket0_bra0()));
  CHECK_THROWS_AS(density_from_json(not_density), InvalidOperator);

  // projections that do not sum to the identity
  Json bad_obs{{"dim", 2},
               {"outcomes", Json::array({Json{{"value", 0.0},
                                              {"projection",
                                               matrix_to_json(ket0_bra0())}}})}};
  CHECK_THROWS_AS(observable_from_json(bad_obs), InvalidOperator);
}

TEST_CASE("file loading: missing file and invalid JSON") {
  CHECK_THROWS_AS(load_json_file("/nonexistent/path.json"), ParseError);
  const std::string path = "/tmp/qreduce_io_test_garbage.json";
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_json_file(path), ParseError);
  write_json_file(path, Json{{"ok", true}});
  CHECK(load_json_file(path).at("ok") == Json(true));
}

TEST_CASE("joint and statistics serialization shapes") {
  const Apparatus z_app = projection_postulate_apparatus(observable_z());
  const DensityOperator plus(outer(ket_plus()));
  const Json j = joint_to_json(joint_distribution(z_app, z_app, plus));
  REQUIRE(j.contains("entries"));
  CHECK(j.at("entries").size() == 4);
  for (const auto& e : j.at("entries")) {
    CHECK(e.contains("x"));
    CHECK(e.contains("y"));
    CHECK(e.contains("p"));
  }

  const Json s = statistics_to_json(measure(z_app, DensityOperator(ket0_bra0())));
  REQUIRE(s.at("entries").size() == 2);
  CHECK(s.at("entries")[0].at("state").is_null());      // outcome -1: indefinite
  CHECK(s.at("entries")[1].at("state").is_object());
}
