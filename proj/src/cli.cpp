// Copyright 2026 The ricsim Authors
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

#include "ricsim/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "ricsim/analysis.hpp"
#include "ricsim/pauli.hpp"
#include "ricsim/protocol.hpp"
#include "ricsim/states.hpp"

namespace ricsim::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kFidelityFloor = 1.0 - kAccumulatedTolerance;
constexpr std::uint64_t kDefaultSeed = 42;

/// Usage problems discovered after flag parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string resource = "ghz";
  double alpha = 0.6;
  std::optional<double> beta;
  double p = 0.7;
  std::uint64_t shots = 64000;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "json";
  std::string output;
  // leak
  std::string prior_path;
  // verify
  std::string grid = "default";
  bool negative_control = false;
  bool skip_sampling = false;
};

std::string number(double x) { return fmt::format("{:.17g}", x); }

std::uint64_t default_seed() {
  const char* env = std::getenv("RICSIM_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  std::uint64_t value = 0;
  std::istringstream in(env);
  in >> value;
  if (in.fail() || !in.eof()) {
    throw UsageError(std::string("RICSIM_SEED is not an unsigned integer: ") + env);
  }
  return value;
}

ResourceKind resource_of(const RunConfig& config) {
  const std::optional<ResourceKind> kind = parse_resource(config.resource);
  if (!kind) throw UsageError("unknown resource: " + config.resource);
  return *kind;
}

TelecloningParams params_of(const RunConfig& config, std::ostream& err) {
  TelecloningParams params = [&] {
    try {
      return TelecloningParams::make(config.alpha, config.beta, config.p);
    } catch (const ContractViolation& e) {
      throw UsageError(std::string("invalid parameters: ") + e.what());
    }
  }();
  if (!params.is_asymmetric_regime()) {
    err << "warning: p <= q (p = " << number(params.p())
        << "); the nominal regime is p > q\n";
  }
  return params;
}

Json meta_json(std::string_view command, const RunConfig& config,
               std::optional<ResourceKind> kind) {
  Json meta;
  meta["tool"] = kToolName;
  meta["version"] = kToolVersion;
  meta["command"] = command;
  meta["resource"] = kind ? Json(resource_name(*kind)) : Json(nullptr);
  meta["seed"] = config.seed;
  return meta;
}

Json params_json(const TelecloningParams& params) {
  Json j;
  j["alpha"] = params.alpha();
  j["beta"] = params.beta();
  j["p"] = params.p();
  j["q"] = params.q();
  j["normalizer"] = params.normalizer();
  return j;
}

Json outcome_json(const OutcomeTriple& o) {
  return Json::array({o.ae.value(), o.bf.value(), o.cg.value()});
}

std::string csv_outcome(const OutcomeTriple& o) {
  return fmt::format("{},{},{}", o.ae.value(), o.bf.value(), o.cg.value());
}

void emit(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (config.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(config.output, std::ios::binary);
  if (!file) throw UsageError("cannot open output file: " + config.output);
  file << text;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const ResourceKind kind = resource_of(config);
  const TelecloningParams params = params_of(config, err);
  if (config.shots == 0) throw UsageError("--shots must be at least 1");

  const SampleSummary summary = sample_runs(kind, params, config.shots, config.seed);
  const RunResult first = run_once(kind, params, config.seed);

  if (config.format == "csv") {
    std::string text = "l,j,k,count\n";
    for (const OutcomeTriple& o : all_outcomes()) {
      text += fmt::format("{},{}\n", csv_outcome(o), summary.counts[o.index()]);
    }
    emit(config, text, out);
  } else {
    Json transcript;
    Json messages = Json::array();
    for (const ClassicalMessage& m : first.transcript.messages) {
      messages.push_back({{"sender", party_name(m.sender)}, {"outcome", m.outcome.value()}});
    }
    transcript["messages"] = messages;
    transcript["correction"] = to_int(first.transcript.correction);
    transcript["applied_by"] = party_name(first.transcript.applied_by);

    Json counts = Json::array();
    for (const OutcomeTriple& o : all_outcomes()) {
      counts.push_back({{"outcome", outcome_json(o)}, {"count", summary.counts[o.index()]}});
    }
    Json results;
    results["shots"] = summary.shots;
    results["mean_fidelity"] = summary.mean_fidelity;
    results["min_fidelity"] = summary.min_fidelity;
    results["first_run_transcript"] = transcript;
    results["counts"] = counts;

    Json doc;
    doc["meta"] = meta_json("run", config, kind);
    Json p = params_json(params);
    p["shots"] = config.shots;
    doc["params"] = p;
    doc["results"] = results;
    emit(config, dump(doc), out);
  }

  if (summary.min_fidelity < kFidelityFloor) {
    err << "protocol violation: a run ended with fidelity "
        << number(summary.min_fidelity) << "\n";
    return kExitProtocolFailure;
  }
  return kExitOk;
}

int cmd_branches(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const ResourceKind kind = resource_of(config);
  const TelecloningParams params = params_of(config, err);
  const std::vector<BranchRecord> branches = enumerate_branches(kind, params);

  double worst = 1.0;
  double total = 0.0;
  for (const BranchRecord& b : branches) {
    worst = std::min(worst, b.fidelity);
    total += b.probability;
  }

  if (config.format == "csv") {
    std::string text = "l,j,k,probability,correction,fidelity,reachable\n";
    for (const BranchRecord& b : branches) {
      text += fmt::format("{},{},{},{},{}\n", csv_outcome(b.outcome),
                          number(b.probability), to_int(b.correction),
                          number(b.fidelity), b.reachable ? 1 : 0);
    }
    emit(config, text, out);
  } else {
    Json rows = Json::array();
    for (const BranchRecord& b : branches) {
      Json row;
      row["outcome"] = outcome_json(b.outcome);
      row["probability"] = b.probability;
      row["correction"] = to_int(b.correction);
      row["correction_pauli"] = pauli_name(b.correction);
      row["class"] = class_name(b.correction);
      row["fidelity"] = b.fidelity;
      row["reachable"] = b.reachable;
      rows.push_back(row);
    }
    Json results;
    results["probability_total"] = total;
    results["min_fidelity"] = worst;
    results["branches"] = rows;

    Json doc;
    doc["meta"] = meta_json("branches", config, kind);
    doc["params"] = params_json(params);
    doc["results"] = results;
    emit(config, dump(doc), out);
  }

  if (worst < kFidelityFloor) {
    err << "protocol violation: branch fidelity " << number(worst) << "\n";
    return kExitProtocolFailure;
  }
  return kExitOk;
}

std::vector<Hypothesis> read_prior(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw UsageError("cannot open prior file: " + path);
  Json doc;
  try {
    doc = Json::parse(file);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("malformed prior file: ") + e.what());
  }
  if (!doc.is_array() || doc.empty()) {
    throw UsageError("prior file must be a non-empty JSON array of {weight, alpha, p}");
  }
  std::vector<Hypothesis> prior;
  for (const Json& entry : doc) {
    if (!entry.is_object() || !entry.contains("weight") || !entry.contains("alpha") ||
        !entry.contains("p") || !entry["weight"].is_number() ||
        !entry["alpha"].is_number() || !entry["p"].is_number() ||
        (entry.contains("beta") && !entry["beta"].is_number())) {
      throw UsageError("prior entry must be an object with numeric weight, alpha, p");
    }
    std::optional<double> beta;
    if (entry.contains("beta")) beta = entry["beta"].get<double>();
    try {
      prior.push_back({entry["weight"].get<double>(),
                       TelecloningParams::make(entry["alpha"].get<double>(), beta,
                                               entry["p"].get<double>())});
    } catch (const ContractViolation& e) {
      throw UsageError(std::string("invalid prior entry: ") + e.what());
    }
  }
  return prior;
}

int cmd_leak(const RunConfig& config, std::ostream& out) {
  const ResourceKind kind = resource_of(config);
  const std::vector<Hypothesis> prior = read_prior(config.prior_path);
  const LeakageReport report = [&] {
    try {
      return mutual_information(kind, prior);
    } catch (const ContractViolation& e) {
      throw UsageError(std::string("invalid prior: ") + e.what());
    }
  }();

  if (config.format == "csv") {
    std::string text = "weight,alpha,beta,p,entropy_bits\n";
    for (std::size_t i = 0; i < prior.size(); ++i) {
      const TelecloningParams& params = prior[i].params;
      text += fmt::format("{},{},{},{},{}\n", number(prior[i].weight),
                          number(params.alpha()), number(params.beta()),
                          number(params.p()),
                          number(shannon_entropy_bits(report.conditionals[i].probabilities)));
    }
    text += fmt::format("# mutual_information_bits,{}\n",
                        number(report.mutual_information_bits));
    emit(config, text, out);
    return kExitOk;
  }

  Json hypotheses = Json::array();
  for (std::size_t i = 0; i < prior.size(); ++i) {
    Json h = params_json(prior[i].params);
    h["weight"] = prior[i].weight;
    h["entropy_bits"] = shannon_entropy_bits(report.conditionals[i].probabilities);
    hypotheses.push_back(h);
  }
  Json doc;
  doc["meta"] = meta_json("leak", config, kind);
  doc["params"] = {{"prior", hypotheses}};
  doc["results"] = {{"mutual_information_bits", report.mutual_information_bits},
                    {"max_bits", std::log2(static_cast<double>(prior.size()))}};
  emit(config, dump(doc), out);
  return kExitOk;
}

// Swaps the I and Z labels everywhere, so every class-I and class-II branch
// gets the wrong correction.
CorrectionTable corrupted_table() {
  CorrectionTable table = standard_correction_table();
  for (PauliLabel& c : table) {
    if (c == PauliLabel::kI) {
      c = PauliLabel::kZ;
    } else if (c == PauliLabel::kZ) {
      c = PauliLabel::kI;
    }
  }
  return table;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  if (config.shots == 0) throw UsageError("--shots must be at least 1");
  const std::vector<TelecloningParams> grid =
      config.grid == "dense" ? dense_grid() : default_grid();
  VerifyOptions options;
  options.include_sampling = !config.skip_sampling;
  options.shots = config.shots;
  options.seed = config.seed;
  if (config.negative_control) options.corrections = corrupted_table();
  const VerificationReport report = verify_all(grid, options);

  if (config.format == "csv") {
    std::string text = "section,name,relation,bound,observed,passed\n";
    for (const CheckResult& c : report.checks()) {
      text += fmt::format("{},\"{}\",{},{},{},{}\n", c.section, c.name,
                          relation_symbol(c.relation), number(c.bound),
                          number(c.observed), c.passed ? 1 : 0);
    }
    emit(config, text, out);
  } else {
    Json checks = Json::array();
    for (const CheckResult& c : report.checks()) {
      Json j;
      j["section"] = c.section;
      j["name"] = c.name;
      j["relation"] = relation_symbol(c.relation);
      j["bound"] = c.bound;
      j["observed"] = c.observed;
      j["passed"] = c.passed;
      checks.push_back(j);
    }
    Json doc;
    doc["meta"] = meta_json("verify", config, std::nullopt);
    doc["params"] = {{"grid", config.grid},
                     {"grid_points", grid.size()},
                     {"shots", config.skip_sampling ? 0 : config.shots},
                     {"negative_control", config.negative_control}};
    doc["results"] = {{"passed", report.all_passed()},
                      {"failures", report.failure_count()},
                      {"checks", checks}};
    emit(config, dump(doc), out);
  }
  return report.all_passed() ? kExitOk : kExitProtocolFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  RunConfig config;
  try {
    config.seed = default_seed();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App app{"Remote quantum information concentration simulator", std::string(kToolName)};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", config.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--output,-o", config.output, "Write the report to this file");
    cmd->add_option("--seed", config.seed, "Root seed (default: $RICSIM_SEED or 42)");
  };
  const auto add_resource = [&](CLI::App* cmd) {
    cmd->add_option("--resource", config.resource, "Shared resource")
        ->check(CLI::IsMember({"ghz", "smolin"}))
        ->capture_default_str();
  };
  const auto add_params = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", config.alpha, "Amplitude of |0>")->capture_default_str();
    cmd->add_option("--beta", config.beta,
                    "Amplitude of |1> (default +sqrt(1 - alpha^2))");
    cmd->add_option("--p", config.p, "Asymmetry p in [0, 1]; q = 1 - p")
        ->capture_default_str();
  };

  CLI::App* run_cmd = app.add_subcommand("run", "Sample protocol runs");
  add_resource(run_cmd);
  add_params(run_cmd);
  run_cmd->add_option("--shots", config.shots, "Number of runs")->capture_default_str();
  add_common(run_cmd);

  CLI::App* branches_cmd =
      app.add_subcommand("branches", "Exact 64-outcome branch table");
  add_resource(branches_cmd);
  add_params(branches_cmd);
  add_common(branches_cmd);

  CLI::App* leak_cmd =
      app.add_subcommand("leak", "Mutual information between outcomes and input");
  add_resource(leak_cmd);
  leak_cmd->add_option("--prior", config.prior_path,
                       "JSON array of {weight, alpha, p}")
      ->required();
  add_common(leak_cmd);

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Run the full invariant and acceptance report");
  verify_cmd->add_option("--grid", config.grid, "Parameter grid")
      ->check(CLI::IsMember({"default", "dense"}))
      ->capture_default_str();
  verify_cmd->add_option("--shots", config.shots, "Shots per sampling check")
      ->capture_default_str();
  verify_cmd->add_flag("--no-sampling", config.skip_sampling,
                       "Skip the Monte Carlo checks");
  verify_cmd->add_flag("--negative-control", config.negative_control,
                       "Use a deliberately corrupted correction table");
  add_common(verify_cmd);

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back(kToolName);
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(config, out, err);
    if (branches_cmd->parsed()) return cmd_branches(config, out, err);
    if (leak_cmd->parsed()) return cmd_leak(config, out);
    return cmd_verify(config, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace ricsim::cli
