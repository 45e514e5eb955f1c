// Copyright 2026 The Solmorph Authors
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

#include <gtest/gtest.h>

#include <regex>
#include <sstream>

#include "solmorph/cli.h"
#include "solmorph/config.h"
#include "solmorph/pipeline.h"
#include "test_util.h"

namespace solmorph {
namespace {

namespace fs = std::filesystem;
using testing::DataDir;
using testing::Fixture;
using testing::ReadFile;
using testing::TempDir;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult Cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> BaseArgs(const std::string& command,
                                  const fs::path& out) {
  return {command,   "--corpus", DataDir("corpus").string(),
          "--out",   out.string()};
}

void ExpectOneLineError(const CliResult& r, const std::string& category) {
  static const std::regex kLine("^solmorph: error: [a-z]+: [^\n]+\n$");
  EXPECT_TRUE(std::regex_match(r.err, kLine)) << r.err;
  EXPECT_NE(r.err.find("error: " + category + ":"), std::string::npos)
      << r.err;
}

std::map<std::string, std::string> Snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().filename() != "run.log") {
      out[fs::relative(entry.path(), dir).string()] = ReadFile(entry.path());
    }
  }
  return out;
}

TEST(Config, ParsesTomlAndResolvesPaths) {
  RunConfig config = ParseConfig(R"(
corpus_dir = "corpus"
hosts_dir = "/abs/hosts"
out_dir = "out"
operators = ["if2for", "rename"]
chains = "all_valid"
mode = "single_location"
seed = 7
jobs = 3

[compiler]
command = "solc {file}"
timeout_secs = 5

[tool.slither.mapping]
"incorrect-equality" = "tod"

[tool.custom]
format = "normalized"

[reports]
slither = "reports/slither.json"
)",
                                 "/base");
  EXPECT_EQ(config.corpus_dir, fs::path("/base/corpus"));
  EXPECT_EQ(config.hosts_dir, fs::path("/abs/hosts"));
  EXPECT_EQ(config.operators.size(), 2u);
  EXPECT_EQ(config.chains, ChainSet::kAllValid);
  EXPECT_EQ(config.mode, InjectionMode::kSingleLocation);
  EXPECT_EQ(config.seed, 7u);
  EXPECT_EQ(config.jobs, 3);
  EXPECT_EQ(config.compiler.command, "solc {file}");
  EXPECT_EQ(config.compiler.timeout_secs, 5);
  ToolProfile slither = ProfileFor(config, "slither");
  EXPECT_EQ(slither.format, ReportFormat::kSlitherJson);
  EXPECT_EQ(slither.mapping.at("incorrect-equality"), VulnType::kTod);
  EXPECT_EQ(slither.mapping.at("tx-origin"), VulnType::kTxOrigin);
  EXPECT_EQ(ProfileFor(config, "custom").format, ReportFormat::kNormalized);
  EXPECT_EQ(config.reports.at("slither"),
            fs::path("/base/reports/slither.json"));
  EXPECT_EQ(SelectedGroups(config.operators).size(), 3u);
}

TEST(Config, DefaultsAndErrors) {
  RunConfig config = ParseConfig("");
  EXPECT_EQ(config.seed, 0u);
  EXPECT_EQ(config.mode, InjectionMode::kAllLocations);
  EXPECT_EQ(config.chains, ChainSet::kSingletons);
  EXPECT_THROW(ParseConfig("seed = "), ConfigError);
  EXPECT_THROW(ParseConfig("seed = \"x\""), ConfigError);
  EXPECT_THROW(ParseConfig("chains = \"pairs\""), ConfigError);
  EXPECT_THROW(ParseConfig("[tool.x]\nformat = \"sarif\""), UnknownFormat);
  EXPECT_THROW(ParseConfig("[tool.x]\nmapping = {a = \"b\"}"), ConfigError);
  EXPECT_THROW(SelectedGroups({"loop_unroll"}), ConfigError);
  EXPECT_THROW(ProfileFor(config, "securify"), UnknownFormat);
}

TEST(Config, ExampleFileLoads) {
  RunConfig config = LoadConfig(Fixture("../../config/example.toml"));
  EXPECT_TRUE(fs::is_directory(config.corpus_dir)) << config.corpus_dir;
  EXPECT_TRUE(fs::is_directory(config.hosts_dir)) << config.hosts_dir;
  EXPECT_EQ(config.jobs, 4);
  EXPECT_EQ(ProfileFor(config, "slither").mapping.at("arbitrary-send-eth"),
            VulnType::kUncheckedSend);
}

TEST(PlanChains, ExcludesIfForWithIfWhile) {
  RunConfig config;
  config.operators = {"if2for", "if2while"};
  config.chains = ChainSet::kAllValid;
  ChainPlan plan = PlanChains(config);
  std::vector<std::string> tokens;
  for (const Chain& c : plan.chains) {
    tokens.push_back(ChainToken(c));
  }
  EXPECT_EQ(tokens,
            (std::vector<std::string>{"default", "if2for", "if2while"}));
  EXPECT_EQ(plan.excluded.size(), 1u);

  config.operators = {"all"};
  EXPECT_EQ(PlanChains(config).chains.size(), 96u);
  config.include_default = false;
  EXPECT_EQ(PlanChains(config).chains.size(), 95u);
  config.chains = ChainSet::kSingletons;
  EXPECT_EQ(PlanChains(config).chains.size(), 7u);
}

TEST(CmdTransform, SingletonCountsMatchApplicabilityMatrix) {
  fs::path out = TempDir("cli_transform");
  auto fixture = nlohmann::json::parse(ReadFile(Fixture("applicability.json")));
  CliResult r = Cli(BaseArgs("transform", out));
  ASSERT_EQ(r.code, 0) << r.err;
  auto index = nlohmann::json::parse(ReadFile(out / "variants/index.json"));
  EXPECT_EQ(index["variants"], fixture["singleton_variants_total"]);
  EXPECT_EQ(index["baselines"], fixture["snippets_total"]);
  for (const auto& group : fixture["groups"]) {
    int expected = 0;
    for (const auto& [id, row] : fixture["snippets"].items()) {
      expected += row[group.get<std::string>()].get<bool>();
    }
    EXPECT_EQ(index["per_operator"].value(group.get<std::string>(), 0),
              expected)
        << group;
  }
  EXPECT_TRUE(
      fs::exists(out / "variants/tx_origin/txorigin1__tx_passing.sol"));
  EXPECT_TRUE(fs::exists(
      out / "variants/tx_origin/txorigin1__tx_passing.meta.json"));
}

TEST(CmdTransform, AllValidChainsOnFullyApplicableSnippet) {
  fs::path corpus = TempDir("cli_corpus95") / "tx_origin";
  fs::create_directories(corpus);
  for (const char* ext : {".sol", ".meta.json"}) {
    fs::copy_file(DataDir("corpus/tx_origin/txorigin3") += ext,
                  corpus / (std::string("txorigin3") + ext));
  }
  fs::path out = TempDir("cli_out95");
  CliResult r = Cli({"transform", "--corpus", corpus.parent_path().string(),
                     "--operators", "all", "--chains", "all_valid", "--out",
                     out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto index = nlohmann::json::parse(ReadFile(out / "variants/index.json"));
  EXPECT_EQ(index["variants"], 95);
  EXPECT_EQ(index["not_applicable"], 0);
}

TEST(CmdTransform, IfForIfWhileCombinationIsDropped) {
  fs::path out = TempDir("cli_excl");
  CliResult r = Cli({"transform", "--corpus", DataDir("corpus").string(),
                     "--operators", "if2for,if2while", "--chains",
                     "all_valid", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto index = nlohmann::json::parse(ReadFile(out / "variants/index.json"));
  EXPECT_EQ(index["per_chain"].size(), 2u);
  EXPECT_EQ(index["excluded"].size(), 1u);
  EXPECT_NE(ReadFile(out / "run.log").find("excluded"), std::string::npos);
}

TEST(Variants, DiskRoundtripStillVerifies) {
  fs::path dir = TempDir("cli_variant_rt");
  for (const Snippet& s : LoadCorpus(DataDir("corpus"))) {
    for (OperatorGroup g : kAllGroups) {
      if (!Applicable(g, s.fragment)) {
        continue;
      }
      Variant v = ApplyChain(s, {g});
      Variant loaded = LoadVariant(WriteVariant(v, s.kind, dir));
      EXPECT_EQ(loaded.chain, v.chain);
      EXPECT_EQ(loaded.flags, v.flags);
      EXPECT_EQ(loaded.rules, v.rules);
      EXPECT_EQ(loaded.renames, v.renames);
      EXPECT_EQ(loaded.rewrites.size(), v.rewrites.size());
      VerifyReport report = VerifyVariant(s, loaded);
      EXPECT_TRUE(report.Passed())
          << s.id << " " << ChainToken(v.chain) << ": "
          << (report.problems.empty() ? "" : report.problems.front());
    }
  }
}

TEST(CmdVerify, BundledVariantsPassAndDivisionIsFlagged) {
  fs::path out = TempDir("cli_verify");
  ASSERT_EQ(Cli(BaseArgs("transform", out)).code, 0);
  CliResult r = Cli(BaseArgs("verify", out));
  ASSERT_EQ(r.code, 0) << r.err;
  auto report = nlohmann::json::parse(ReadFile(out / "verify.json"));
  EXPECT_EQ(report["failed"], 0);
  bool division_reported = false;
  for (const auto& result : report["results"]) {
    for (const auto& rw : result["rewrites"]) {
      if (rw["rule"] == "division") {
        division_reported = true;
        EXPECT_FALSE(rw["equal"].get<bool>());
        EXPECT_FALSE(rw["witnesses"].empty());
        EXPECT_TRUE(result["passed"].get<bool>());
      }
    }
  }
  EXPECT_TRUE(division_reported);
}

TEST(CmdVerify, CorruptedElseSwapExitsThree) {
  fs::path out = TempDir("cli_corrupt");
  ASSERT_EQ(Cli(BaseArgs("transform", out)).code, 0);
  fs::path file = out / "variants/timestamp_dependency/tmstmp1__if_swap.sol";
  std::string text = ReadFile(file);
  std::string negated = "!(block.timestamp >= 1546300800)";
  std::size_t at = text.find(negated);
  ASSERT_NE(at, std::string::npos) << text;
  text.replace(at, negated.size(), "(block.timestamp >= 1546300800)");
  std::ofstream(file, std::ios::binary) << text;
  CliResult r = Cli(BaseArgs("verify", out));
  EXPECT_EQ(r.code, 3);
  ExpectOneLineError(r, "verify");
}

TEST(Cli, UsageAndDataErrors) {
  fs::path out = TempDir("cli_errors");
  CliResult none = Cli({});
  EXPECT_EQ(none.code, 1);
  ExpectOneLineError(none, "usage");
  EXPECT_EQ(Cli({"mutate"}).code, 1);
  CliResult chains = Cli({"transform", "--chains", "pairs", "--out",
                          out.string()});
  EXPECT_EQ(chains.code, 1);
  ExpectOneLineError(chains, "usage");
  EXPECT_EQ(Cli({"transform", "--operators", "loop_unroll", "--out",
                 out.string()})
                .code,
            1);
  CliResult missing = Cli({"transform", "--corpus", (out / "nope").string(),
                           "--out", out.string()});
  EXPECT_EQ(missing.code, 2);
  ExpectOneLineError(missing, "data");
  CliResult no_reports =
      Cli({"evaluate", "--dataset", Fixture("evaluate/single_30").string(),
           "--out", out.string()});
  EXPECT_EQ(no_reports.code, 2);
  ExpectOneLineError(no_reports, "data");
  fs::path bad = out / "bad.json";
  std::ofstream(bad) << "{\"issues\": [";
  CliResult malformed = Cli({"evaluate", "--dataset",
                             Fixture("evaluate/single_30").string(), "--report",
                             "mythril=" + bad.string(), "--out",
                             out.string()});
  EXPECT_EQ(malformed.code, 2);
  ExpectOneLineError(malformed, "data");
  EXPECT_NE(malformed.err.find("byte"), std::string::npos);
  CliResult help = Cli({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("transform"), std::string::npos);
}

TEST(Cli, ConfigFileWithFlagOverrides) {
  fs::path dir = TempDir("cli_config");
  std::ofstream(dir / "run.toml")
      << "corpus_dir = \"" << DataDir("corpus").string() << "\"\n"
      << "out_dir = \"fromfile\"\n"
      << "operators = \"rename_var\"\n"
      << "include_default = false\n";
  CliResult r = Cli({"--config", (dir / "run.toml").string(), "transform",
                     "--operators", "rename_fn"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto index = nlohmann::json::parse(
      ReadFile(dir / "fromfile/variants/index.json"));
  EXPECT_EQ(index["per_chain"].size(), 1u);
  EXPECT_TRUE(index["per_chain"].contains("rename_fn"));
  EXPECT_EQ(index["baselines"], 0);
}

TEST(CmdEvaluate, EmptyFindingsMeansAllMissed) {
  fs::path out = TempDir("cli_eval_empty");
  std::ofstream(out / "empty.jsonl") << "";
  CliResult r = Cli({"evaluate", "--dataset",
                     Fixture("evaluate/single_30").string(), "--report",
                     "normalized=" + (out / "empty.jsonl").string(), "--out",
                     out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto metrics = nlohmann::json::parse(ReadFile(out / "metrics.json"));
  EXPECT_EQ(metrics["reports"][0]["r"], "1.000");
  EXPECT_EQ(metrics["reports"][0]["N"], 30);
}

TEST(CmdEvaluate, TwoModeComparison) {
  fs::path out = TempDir("cli_eval_modes");
  std::vector<Finding> findings =
      LoadFindings(Fixture("evaluate/single_30/mythril.json"),
                   DefaultProfile("mythril"))
          .findings;
  std::vector<Finding> more =
      LoadFindings(Fixture("evaluate/all_1235/slither.json"),
                   DefaultProfile("slither"))
          .findings;
  findings.insert(findings.end(), more.begin(), more.end());
  {
    std::ofstream merged(out / "merged.jsonl");
    for (const Finding& f : findings) {
      if (f.mapped_vuln_type) {
        nlohmann::json j = ToJson(f);
        j["check_id"] = std::string(ToString(*f.mapped_vuln_type));
        j.erase("vuln_type");
        merged << j.dump() << "\n";
      }
    }
  }
  CliResult r = Cli({"evaluate", "--dataset",
                     Fixture("evaluate/single_30").string(), "--dataset",
                     Fixture("evaluate/all_1235").string(), "--report",
                     "normalized=" + (out / "merged.jsonl").string(), "--out",
                     out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto metrics = nlohmann::json::parse(ReadFile(out / "metrics.json"));
  bool found = false;
  for (const auto& c : metrics["comparisons"]) {
    if (c["axis"] == "all_vs_single_location") {
      found = true;
      EXPECT_EQ(c["baseline"], "single_30");
      EXPECT_EQ(c["rows"][0]["r"], "0.100");
      EXPECT_EQ(c["rows"][1]["r"], "0.106");
      EXPECT_EQ(c["rows"][1]["delta_r_exact"], "3/494");
    }
  }
  EXPECT_TRUE(found);
  EXPECT_NE(r.out.find("+0.006"), std::string::npos) << r.out;
  EXPECT_NE(ReadFile(out / "metrics.txt").find("[unmatched findings]"),
            std::string::npos);
}

TEST(CmdRun, DeterministicAcrossRunsAndJobs) {
  fs::path a = TempDir("cli_det_a");
  fs::path b = TempDir("cli_det_b");
  auto args = [](const fs::path& out, const std::string& jobs) {
    return std::vector<std::string>{
        "run",    "--corpus", DataDir("corpus").string(), "--hosts",
        DataDir("hosts").string(), "--out", out.string(), "--jobs", jobs,
        "--seed", "5"};
  };
  ASSERT_EQ(Cli(args(a, "1")).code, 0);
  ASSERT_EQ(Cli(args(b, "4")).code, 0);
  auto sa = Snapshot(a);
  auto sb = Snapshot(b);
  EXPECT_GT(sa.size(), 100u);
  EXPECT_TRUE(sa == sb);
  EXPECT_TRUE(fs::exists(a / "run.log"));
  EXPECT_EQ(ReadFile(a / "dataset.json").find("T0"), std::string::npos);
}

}  // namespace
}  // namespace solmorph
