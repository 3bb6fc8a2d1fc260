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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

using ricsim::cli::kExitOk;
using ricsim::cli::kExitProtocolFailure;
using ricsim::cli::kExitUsage;
using Json = nlohmann::json;

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = ricsim::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
  const std::filesystem::path path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << contents;
  return path;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(cli, usage_errors) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"teleport"}).code, kExitUsage);
  EXPECT_EQ(invoke({"run", "--resource", "w"}).code, kExitUsage);
  EXPECT_EQ(invoke({"run", "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(invoke({"run", "--shots", "0"}).code, kExitUsage);
  EXPECT_EQ(invoke({"branches", "--p", "1.5"}).code, kExitUsage);
  EXPECT_EQ(invoke({"leak"}).code, kExitUsage);

  const Invocation bad_alpha = invoke({"run", "--alpha", "2"});
  EXPECT_EQ(bad_alpha.code, kExitUsage);
  EXPECT_NE(bad_alpha.err.find("alpha^2 + beta^2 = 1"), std::string::npos) << bad_alpha.err;
}

TEST(cli, help_and_version) {
  const Invocation help = invoke({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("branches"), std::string::npos);
  const Invocation version = invoke({"--version"});
  EXPECT_EQ(version.code, kExitOk);
  EXPECT_EQ(version.out, "1.0.0\n");
}

TEST(cli, branches_csv) {
  const Invocation r = invoke({"branches", "--format", "csv", "--alpha", "0.6", "--p", "0.7"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::vector<std::string> rows = lines(r.out);
  ASSERT_EQ(rows.size(), 65u);
  EXPECT_EQ(rows[0], "l,j,k,probability,correction,fidelity,reachable");
  std::map<char, int> per_label;
  int unreachable = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::vector<std::string> fields;
    std::istringstream in(rows[i]);
    for (std::string f; std::getline(in, f, ',');) fields.push_back(f);
    ASSERT_EQ(fields.size(), 7u);
    ++per_label[fields[4][0]];
    if (fields[6] == "0") ++unreachable;
  }
  for (char c : {'0', '1', '2', '3'}) EXPECT_EQ(per_label[c], 16);
  EXPECT_EQ(unreachable, 16);
  EXPECT_EQ(rows[1], "0,0,0,0.039556962025316514,0,1,1");
}

TEST(cli, branches_json_is_reproducible) {
  const std::vector<std::string> args = {"branches", "--resource", "smolin", "--alpha", "0.28"};
  const Invocation a = invoke(args);
  const Invocation b = invoke(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const Json doc = Json::parse(a.out);
  EXPECT_EQ(doc["meta"]["command"], "branches");
  EXPECT_EQ(doc["meta"]["resource"], "smolin");
  EXPECT_EQ(doc["results"]["branches"].size(), 64u);
  EXPECT_NEAR(doc["results"]["probability_total"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(doc["params"]["beta"].get<double>(), 0.96, 1e-12);
  for (const Json& row : doc["results"]["branches"]) {
    EXPECT_NEAR(row["probability"].get<double>(), 1.0 / 64.0, 1e-12);
    EXPECT_TRUE(row["reachable"].get<bool>());
  }
}

TEST(cli, run_json_reproducible_with_seed) {
  const std::vector<std::string> args = {"run", "--shots", "300", "--seed", "9"};
  const Invocation a = invoke(args);
  const Invocation b = invoke(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const Json doc = Json::parse(a.out);
  EXPECT_EQ(doc["meta"]["seed"], 9);
  EXPECT_EQ(doc["results"]["shots"], 300);
  EXPECT_NEAR(doc["results"]["min_fidelity"].get<double>(), 1.0, 1e-9);
  std::uint64_t total = 0;
  for (const Json& c : doc["results"]["counts"]) total += c["count"].get<std::uint64_t>();
  EXPECT_EQ(total, 300u);
  EXPECT_EQ(doc["results"]["first_run_transcript"]["applied_by"], "David");
  EXPECT_NE(invoke({"run", "--shots", "300", "--seed", "10"}).out, a.out);
}

TEST(cli, run_csv_and_output_file) {
  const std::filesystem::path path = std::filesystem::temp_directory_path() / "ricsim_cli_run.csv";
  const Invocation r = invoke({"run", "--shots", "50", "--format", "csv", "-o", path.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "l,j,k,count");
  std::filesystem::remove(path);

  EXPECT_EQ(invoke({"run", "--shots", "5", "-o", "/nonexistent-dir/x.json"}).code, kExitUsage);
}

TEST(cli, low_p_warns_but_runs) {
  const Invocation r = invoke({"branches", "--p", "0.3"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(cli, leak_with_prior_file) {
  const std::filesystem::path prior = temp_file(
      "ricsim_prior.json",
      R"([{"weight": 0.5, "alpha": 0.6, "p": 0.6}, {"weight": 0.5, "alpha": 0.6, "p": 0.9}])");
  const Invocation ghz = invoke({"leak", "--resource", "ghz", "--prior", prior.string()});
  ASSERT_EQ(ghz.code, kExitOk) << ghz.err;
  const Json g = Json::parse(ghz.out);
  EXPECT_NEAR(g["results"]["mutual_information_bits"].get<double>(), 0.066429309273133619, 1e-12);
  EXPECT_NEAR(g["results"]["max_bits"].get<double>(), 1.0, 1e-12);

  const Invocation smolin = invoke({"leak", "--resource", "smolin", "--prior", prior.string()});
  ASSERT_EQ(smolin.code, kExitOk);
  EXPECT_NEAR(Json::parse(smolin.out)["results"]["mutual_information_bits"].get<double>(), 0.0,
              1e-12);

  const Invocation csv =
      invoke({"leak", "--prior", prior.string(), "--format", "csv"});
  ASSERT_EQ(csv.code, kExitOk);
  EXPECT_EQ(lines(csv.out)[0], "weight,alpha,beta,p,entropy_bits");

  const std::filesystem::path single =
      temp_file("ricsim_prior_single.json", R"([{"weight": 1.0, "alpha": 0.8, "p": 0.7}])");
  const Invocation one = invoke({"leak", "--prior", single.string()});
  ASSERT_EQ(one.code, kExitOk);
  EXPECT_NEAR(Json::parse(one.out)["results"]["mutual_information_bits"].get<double>(), 0.0,
              1e-12);

  std::filesystem::remove(prior);
  std::filesystem::remove(single);
}

TEST(cli, leak_rejects_malformed_priors) {
  const std::vector<std::string> bad = {
      "not json", "[]", R"({"weight": 1})", R"([{"weight": 1.0, "alpha": 0.6}])",
      R"([{"weight": 0.5, "alpha": 0.6, "p": 0.6}])",
      R"([{"weight": 1.0, "alpha": 3.0, "p": 0.6}])"};
  for (std::size_t i = 0; i < bad.size(); ++i) {
    const std::filesystem::path path = temp_file("ricsim_bad_prior.json", bad[i]);
    const Invocation r = invoke({"leak", "--prior", path.string()});
    EXPECT_EQ(r.code, kExitUsage) << bad[i];
    EXPECT_FALSE(r.err.empty());
    std::filesystem::remove(path);
  }
  EXPECT_EQ(invoke({"leak", "--prior", "/nonexistent/prior.json"}).code, kExitUsage);
}

TEST(cli, verify_passes_and_negative_control_fails) {
  const Invocation ok = invoke({"verify", "--no-sampling"});
  EXPECT_EQ(ok.code, kExitOk) << ok.err;
  const Json doc = Json::parse(ok.out);
  EXPECT_TRUE(doc["results"]["passed"].get<bool>());
  EXPECT_EQ(doc["results"]["failures"], 0);

  const Invocation bad = invoke({"verify", "--no-sampling", "--negative-control"});
  EXPECT_EQ(bad.code, kExitProtocolFailure);
  EXPECT_FALSE(Json::parse(bad.out)["results"]["passed"].get<bool>());

  const Invocation csv = invoke({"verify", "--no-sampling", "--format", "csv"});
  EXPECT_EQ(lines(csv.out)[0], "section,name,relation,bound,observed,passed");
}
