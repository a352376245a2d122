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

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qreduce/dilation.hpp"
#include "qreduce/io.hpp"
#include "qreduce/matrix_ops.hpp"
#include "qreduce/rng.hpp"
#include "qreduce/sequential.hpp"

namespace {

using namespace qreduce;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitParse = 2;

struct Options {
  std::string format = "table";
  double tol_cp = tol::cp;
  double tol_herm = tol::hermiticity;
  double tol_norm = tol::normalization;
  double tol_compat = tol::compat;
  double tol_psd = tol::psd;
  double tol_mixing = 1e-12;
  double prob_floor = tol::prob_floor;
  std::optional<std::uint64_t> seed;

  std::uint64_t seed_or(std::uint64_t fallback) const {
    return seed.value_or(fallback);
  }
};

struct Check {
  std::string name;
  bool pass;
  double deviation;
  std::string reference;
};

struct Report {
  std::string command;
  std::string input;
  std::vector<Check> checks;

  bool overall() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return c.pass; });
  }
};

std::string format_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void print_report(const Report& r, const std::string& format) {
  if (format == "json") {
    Json checks = Json::array();
    for (const Check& c : r.checks)
      checks.push_back(Json{{"name", c.name},
                            {"pass", c.pass},
                            {"deviation", c.deviation},
                            {"reference", c.reference}});
    Json out{{"command", r.command},
             {"input", r.input},
             {"checks", std::move(checks)},
             {"overall", r.overall() ? "pass" : "fail"}};
    std::cout << out.dump(2) << "\n";
    return;
  }
  std::cout << "== qreduce " << r.command << ": " << r.input << "\n";
  std::printf("%-34s %-6s %-22s %s\n", "check", "result", "deviation", "reference");
  for (const Check& c : r.checks)
    std::printf("%-34s %-6s %-22s %s\n", c.name.c_str(),
                c.pass ? "pass" : "FAIL", format_g12(c.deviation).c_str(),
                c.reference.c_str());
  std::cout << "overall: " << (r.overall() ? "pass" : "FAIL") << "\n";
}

// Joint distribution of two raw distributions by composition; usable
// before the apparatus invariants have been established.
JointDistribution raw_joint(const OperationalDistribution& first,
                            const OperationalDistribution& second,
                            const Matrix& rho) {
  JointDistribution joint;
  for (const auto& ex : first.entries())
    for (const auto& ey : second.entries())
      joint.entries[{ex.outcome, ey.outcome}] =
          compose(ey.operation, ex.operation).apply(rho).trace().real();
  return joint;
}

void apparatus_checks(const OperationalDistribution& opdist, const Options& opt,
                      Report& report) {
  const int d = opdist.dim();

  const double norm_dev = opdist.normalization_deviation();
  report.checks.push_back({"normalization", norm_dev <= opt.tol_norm, norm_dev,
                           "sum_x X(x)*I = I"});

  const double floor = opdist.positivity_floor(100, opt.seed_or(1));
  report.checks.push_back({"positivity-sampling", floor >= -opt.tol_psd,
                           std::max(0.0, -floor),
                           "every X(x) maps states to positive operators"});

  double worst_choi = 0.0;
  for (const auto& e : opdist.entries())
    worst_choi = std::min(worst_choi,
                          is_completely_positive(e.operation, opt.tol_cp).min_eigenvalue);
  report.checks.push_back({"complete-positivity", worst_choi >= -opt.tol_cp,
                           std::max(0.0, -worst_choi),
                           "Choi matrix of every X(x) is PSD"});

  const double eff_dev = effect_distribution(opdist).completeness_deviation();
  report.checks.push_back({"effect-completeness", eff_dev <= opt.tol_norm,
                           eff_dev, "sum_x X(x)*I = I (effects)"});

  const SuperOperator total = opdist.total();
  const Matrix ti = dual(total).apply(Matrix::Identity(d, d));
  const double tp_dev = max_abs(ti - Matrix::Identity(d, d));
  report.checks.push_back({"total-trace-preserving", tp_dev <= opt.tol_norm,
                           tp_dev, "T*(I) = I"});

  Rng rng(opt.seed_or(2));
  const DensityOperator rho1(random_density(d, rng));
  const DensityOperator rho2(random_density(d, rng));
  const double mix_dev = check_mixing_law(
      [&](const DensityOperator& rho) {
        return raw_joint(opdist, opdist, rho.matrix());
      },
      rho1, rho2, 0.37);
  report.checks.push_back({"mixing-law", mix_dev <= opt.tol_mixing, mix_dev,
                           "J(a r1 + (1-a) r2) = a J(r1) + (1-a) J(r2)"});

  // When the effects are projections the file claims to measure an
  // observable; check the compatibility identities against it.
  const EffectDistribution effects = effect_distribution(opdist);
  bool projective = true;
  for (const auto& [x, e] : effects.effects)
    if (!is_hermitian(e, opt.tol_herm) || max_abs(e * e - e) > 1e-7)
      projective = false;
  if (projective && norm_dev <= opt.tol_norm) {
    std::vector<DiscreteObservable::Outcome> outcomes;
    for (const auto& [x, e] : effects.effects) {
      // Round the sampled effect to an exact projection for the test.
      outcomes.push_back({x, e});
    }
    try {
      DiscreteObservable a(d, std::move(outcomes), 1e-7);
      const bool compat = is_a_compatible(opdist, a, opt.tol_compat);
      report.checks.push_back({"observable-compatibility", compat,
                               compat ? 0.0 : 1.0, "X(x)*I = E^A(x)"});
      if (compat) {
        const double dec_dev =
            verify_decomposition(opdist, a, 50, opt.seed_or(3), opt.tol_compat);
        report.checks.push_back(
            {"decomposition-identities", dec_dev <= 1e-10, dec_dev,
             "X(x)s = T[E s] = T[s E] = T[E s E], and duals"});
      }
    } catch (const Error&) {
      // effects are near-projections but do not form an observable;
      // nothing further to check
    }
  }
}

void superoperator_checks(const SuperOperator& l, const Options& opt,
                          Report& report) {
  const PositivityVerdict pos = check_positivity(l, 1000, opt.seed_or(1), opt.tol_psd);
  report.checks.push_back({"positivity-sampling", pos.no_counterexample_found(),
                           pos.counterexample
                               ? -pos.counterexample->negative_eigenvalue
                               : 0.0,
                           "L maps states to positive operators"});

  const CpVerdict cp = is_completely_positive(l, opt.tol_cp);
  report.checks.push_back({"complete-positivity", cp.cp,
                           std::max(0.0, -cp.min_eigenvalue),
                           "Choi matrix of L is PSD"});

  const ContractivityReport cr = contractivity_report(l, opt.tol_norm);
  const Matrix li = dual(l).apply(Matrix::Identity(l.dim(), l.dim()));
  report.checks.push_back({"contractivity", cr.dual_identity_bound,
                           std::max(0.0, max_abs(li) - 1.0),
                           "0 <= L*(I) <= I"});
}

void model_checks(const IndirectModel& model, const Options& opt, Report& report) {
  const int total = model.sys_dim() * model.probe_dim();
  const double unit_dev = max_abs(model.unitary().adjoint() * model.unitary() -
                                  Matrix::Identity(total, total));
  report.checks.push_back({"unitarity", unit_dev <= 1e-9, unit_dev, "U†U = I"});

  const Apparatus realized = realize(model);
  apparatus_checks(realized.opdist(), opt, report);

  double eff_dev = 0.0;
  const Matrix identity = Matrix::Identity(model.sys_dim(), model.sys_dim());
  for (const auto& e : realized.opdist().entries())
    eff_dev = std::max(eff_dev, max_abs(dual(e.operation).apply(identity) -
                                        model_effect(model, e.outcome)));
  report.checks.push_back({"effect-formula", eff_dev <= 1e-10, eff_dev,
                           "X(x) = Tr_K[U†(I⊗E^M(x))U(I⊗σ)]"});
}

int cmd_verify(const std::string& path, const Options& opt) {
  const Json j = load_json_file(path);
  Report report{"verify", path, {}};
  if (j.is_object() && j.contains("unitary")) {
    model_checks(model_from_json(j), opt, report);
  } else if (j.is_object() && j.contains("kind")) {
    superoperator_checks(superoperator_from_json(j), opt, report);
  } else {
    apparatus_checks(apparatus_from_json(j).opdist, opt, report);
  }
  print_report(report, opt.format);
  return report.overall() ? kExitPass : kExitFail;
}

int cmd_dilate(const std::string& path, const std::string& out_path,
               const Options& opt) {
  const Json j = load_json_file(path);
  Report report{"dilate", path, {}};

  std::optional<IndirectModel> model;
  std::optional<OperationalDistribution> reference;
  if (j.is_object() && j.contains("observable") && j.contains("output_states")) {
    const DiscreteObservable a = observable_from_json(j.at("observable"));
    std::vector<DensityOperator> states;
    for (const Json& s : j.at("output_states"))
      states.emplace_back(matrix_from_json(s));
    model = construct_nondegenerate_dilation(a, states);
    reference = from_output_states(a, states).opdist();
  } else {
    ParsedApparatus parsed = apparatus_from_json(j);
    model = dilate_cp_distribution(parsed.opdist, opt.tol_cp);
    reference = std::move(parsed.opdist);
  }

  const double dev = verify_realization(*model, *reference, 50, opt.seed_or(4));
  report.checks.push_back({"realization-deviation", dev <= 1e-9, dev,
                           "X(x)r = Tr_K[(I⊗E^M(x))U(r⊗σ)U†]"});
  write_json_file(out_path, model_to_json(*model));
  print_report(report, opt.format);
  std::cout << "model written to " << out_path << "\n";
  return report.overall() ? kExitPass : kExitFail;
}

int cmd_realize(const std::string& path, const std::string& out_path,
                const Options& opt) {
  const IndirectModel model = model_from_json(load_json_file(path));
  Report report{"realize", path, {}};
  const Apparatus realized = realize(model);
  apparatus_checks(realized.opdist(), opt, report);
  write_json_file(out_path, apparatus_to_json(realized));
  print_report(report, opt.format);
  std::cout << "apparatus written to " << out_path << "\n";
  return report.overall() ? kExitPass : kExitFail;
}

int cmd_measure(const std::string& app_path, const std::string& state_path,
                const Options& opt) {
  const Apparatus app = apparatus_from_json(load_json_file(app_path)).to_apparatus();
  const DensityOperator rho = density_from_json(load_json_file(state_path));
  const OutcomeStatistics stats = measure(app, rho, opt.prob_floor);
  if (opt.format == "json") {
    std::cout << statistics_to_json(stats).dump(2) << "\n";
    return kExitPass;
  }
  std::printf("%-18s %-22s %s\n", "outcome", "probability", "output state");
  for (const auto& [x, e] : stats.entries)
    std::printf("%-18s %-22s %s\n", format_g12(x).c_str(),
                format_g12(e.probability).c_str(),
                e.state.has_value() ? "definite" : "indefinite");
  return kExitPass;
}

int cmd_joint(const std::string& app1_path, const std::string& app2_path,
              const std::string& state_path, const Options& opt) {
  const Apparatus app1 = apparatus_from_json(load_json_file(app1_path)).to_apparatus();
  const Apparatus app2 = apparatus_from_json(load_json_file(app2_path)).to_apparatus();
  const DensityOperator rho = density_from_json(load_json_file(state_path));
  const JointDistribution joint = joint_distribution(app1, app2, rho);
  if (opt.format == "json") {
    std::cout << joint_to_json(joint).dump(2) << "\n";
    return kExitPass;
  }
  std::printf("%-18s %-18s %s\n", "x", "y", "p");
  for (const auto& [xy, p] : joint.entries)
    std::printf("%-18s %-18s %s\n", format_g12(xy.first).c_str(),
                format_g12(xy.second).c_str(), format_g12(p).c_str());
  return kExitPass;
}

std::vector<Apparatus> chain_from_json(const Json& j) {
  std::vector<Apparatus> chain;
  if (j.is_array()) {
    for (const Json& a : j) chain.push_back(apparatus_from_json(a).to_apparatus());
  } else if (j.is_object() && j.contains("chain")) {
    for (const Json& a : j.at("chain"))
      chain.push_back(apparatus_from_json(a).to_apparatus());
  } else {
    chain.push_back(apparatus_from_json(j).to_apparatus());
  }
  if (chain.empty()) throw ParseError("simulate: empty apparatus chain");
  return chain;
}

int cmd_simulate(const std::string& chain_path, const std::string& state_path,
                 int runs, bool summary, const Options& opt) {
  if (!opt.seed.has_value())
    throw Error("simulate: a seed is required (--seed or QREDUCE_SEED)");
  const std::vector<Apparatus> chain = chain_from_json(load_json_file(chain_path));
  const DensityOperator rho0 = density_from_json(load_json_file(state_path));

  const Rng master(*opt.seed);
  std::map<std::vector<double>, long> counts;
  for (int r = 0; r < runs; ++r) {
    const auto trajectory =
        sample_trajectory(chain, rho0, master.split(r).seed(), opt.prob_floor);
    std::vector<double> outcomes;
    for (std::size_t k = 0; k < trajectory.size(); ++k) {
      outcomes.push_back(trajectory[k].outcome);
      Json record{{"step", k},
                  {"outcome", trajectory[k].outcome},
                  {"state", matrix_to_json(trajectory[k].state.matrix())}};
      if (runs > 1) record["run"] = r;
      std::cout << record.dump() << "\n";
    }
    ++counts[outcomes];
  }
  if (summary) {
    Json freq = Json::array();
    for (const auto& [outcomes, count] : counts)
      freq.push_back(Json{{"outcomes", outcomes},
                          {"count", count},
                          {"frequency", static_cast<double>(count) / runs}});
    Json line{{"summary",
               Json{{"runs", runs},
                    {"chain_length", chain.size()},
                    {"frequencies", std::move(freq)}}}};
    std::cout << line.dump() << "\n";
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"qreduce: measuring-apparatus calculus on finite-dimensional "
               "quantum systems"};
  cli.require_subcommand(1);
  cli.fallthrough();  // global options may follow the subcommand

  Options opt;
  cli.add_option("--format", opt.format, "output format: table|json")
      ->check(CLI::IsMember({"table", "json"}));
  cli.add_option("--tol-cp", opt.tol_cp, "Choi PSD tolerance");
  cli.add_option("--tol-herm", opt.tol_herm, "hermiticity tolerance");
  cli.add_option("--tol-norm", opt.tol_norm, "normalization tolerance");
  cli.add_option("--tol-compat", opt.tol_compat, "compatibility tolerance");
  cli.add_option("--tol-psd", opt.tol_psd, "positivity tolerance");
  cli.add_option("--tol-mixing", opt.tol_mixing, "mixing-law tolerance");
  cli.add_option("--prob-floor", opt.prob_floor,
                 "probability below which output states are indefinite");
  std::uint64_t seed_flag = 0;
  auto* seed_opt = cli.add_option("--seed", seed_flag, "random seed");

  std::string in1, in2, in3, out_path = "out.json";
  int runs = 1;
  bool summary = false;

  auto* verify = cli.add_subcommand("verify", "run the verification suite on a file");
  verify->add_option("file", in1)->required();

  auto* dilate = cli.add_subcommand(
      "dilate", "build an indirect measurement model for an apparatus");
  dilate->add_option("file", in1)->required();
  dilate->add_option("-o,--output", out_path, "model output path");

  auto* realize_cmd = cli.add_subcommand(
      "realize", "realize the apparatus of an indirect measurement model");
  realize_cmd->add_option("model", in1)->required();
  realize_cmd->add_option("-o,--output", out_path, "apparatus output path");

  auto* measure_cmd =
      cli.add_subcommand("measure", "output statistics of one measurement");
  measure_cmd->add_option("apparatus", in1)->required();
  measure_cmd->add_option("state", in2)->required();

  auto* joint = cli.add_subcommand(
      "joint", "joint outcome distribution of two successive measurements");
  joint->add_option("apparatus1", in1)->required();
  joint->add_option("apparatus2", in2)->required();
  joint->add_option("state", in3)->required();

  auto* simulate = cli.add_subcommand("simulate", "sample seeded trajectories");
  simulate->add_option("chain", in1)->required();
  simulate->add_option("state", in2)->required();
  simulate->add_option("--runs", runs, "number of trajectories");
  simulate->add_flag("--summary", summary, "append a frequency summary line");

  CLI11_PARSE(cli, argc, argv);

  if (seed_opt->count() > 0) {
    opt.seed = seed_flag;
  } else if (const char* env = std::getenv("QREDUCE_SEED")) {
    try {
      opt.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: QREDUCE_SEED is not an integer\n";
      return kExitParse;
    }
  }

  try {
    if (verify->parsed()) return cmd_verify(in1, opt);
    if (dilate->parsed()) return cmd_dilate(in1, out_path, opt);
    if (realize_cmd->parsed()) return cmd_realize(in1, out_path, opt);
    if (measure_cmd->parsed()) return cmd_measure(in1, in2, opt);
    if (joint->parsed()) return cmd_joint(in1, in2, in3, opt);
    if (simulate->parsed()) return cmd_simulate(in1, in2, runs, summary, opt);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitPass;
}
