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

#include <algorithm>
#include <random>

#include "solmorph/evaluate.h"
#include "test_util.h"

namespace solmorph {
namespace {

using testing::Fixture;
using testing::ReadFile;

std::vector<InjectionRecord> Manifest(const std::string& dataset) {
  return ReadManifest(Fixture("evaluate/" + dataset + "/manifest.jsonl"));
}

Ratio ParseFraction(const std::string& text) {
  std::size_t slash = text.find('/');
  if (slash == std::string::npos) {
    return Ratio(std::stoll(text));
  }
  return Ratio(std::stoll(text.substr(0, slash)),
               std::stoll(text.substr(slash + 1)));
}

nlohmann::json Expected() {
  return nlohmann::json::parse(ReadFile(Fixture("evaluate/expected.json")));
}

InjectionRecord Rec(const std::string& file, const std::string& chain,
                    VulnType type, int start, int end, bool valid = true) {
  InjectionRecord r;
  r.generated_file = "contracts/" + file;
  r.snippet_id = "s";
  r.chain = chain;
  r.vuln_type = type;
  r.start_line = start;
  r.end_line = end;
  r.valid = valid;
  return r;
}

Finding Find(const std::string& file, VulnType type, int start, int end) {
  Finding f;
  f.tool = "t";
  f.check_id = std::string(ToString(type));
  f.file = file;
  f.line_start = start;
  f.line_end = end;
  f.mapped_vuln_type = type;
  return f;
}

TEST(FormatRatio, RoundsHalfUpToThreeDecimals) {
  EXPECT_EQ(FormatRatio(Ratio(3, 30)), "0.100");
  EXPECT_EQ(FormatRatio(Ratio(131, 1235)), "0.106");
  EXPECT_EQ(FormatRatio(Ratio(1, 2000)), "0.001");
  EXPECT_EQ(FormatRatio(Ratio(1, 2001)), "0.000");
  EXPECT_EQ(FormatRatio(Ratio(0)), "0.000");
  EXPECT_EQ(FormatRatio(Ratio(1)), "1.000");
  EXPECT_EQ(FormatDelta(Ratio(3, 494)), "+0.006");
  EXPECT_EQ(FormatDelta(Ratio(-1, 10)), "-0.100");
  EXPECT_EQ(FormatDelta(Ratio(0)), "0.000");
}

TEST(SingleLocationFixture, MythrilReportGivesTenPercent) {
  auto records = Manifest("single_30");
  LoadedFindings loaded = LoadFindings(Fixture("evaluate/single_30/mythril.json"),
                                       DefaultProfile("mythril"));
  MetricsReport report = ComputeRatio(records, loaded.findings);
  auto expected = Expected()["single_30"];
  EXPECT_EQ(report.total.n, expected["N"].get<int>());
  EXPECT_EQ(report.total.missed, expected["n_FN"].get<int>());
  EXPECT_EQ(report.r(), ParseFraction(expected["r"]));
  EXPECT_EQ(report.total.n, 30);
  EXPECT_EQ(report.total.missed, 3);
  EXPECT_EQ(FormatRatio(report.r()), "0.100");
  EXPECT_EQ(report.vuln_type, VulnType::kReentrancy);
  // Two reentrancy issues one line past their spans, one swc-110 and one
  // issue without a line number.
  EXPECT_EQ(report.unmatched.size(), 2u);
  EXPECT_EQ(report.unmapped.size(), 1u);
  EXPECT_EQ(report.unmapped[0].check_id, "SWC-110");
  EXPECT_EQ(loaded.warnings.size(), 1u);
}

TEST(AllLocationsFixture, SlitherReportGivesOhPointOneOhSix) {
  auto records = Manifest("all_1235");
  LoadedFindings loaded = LoadFindings(
      Fixture("evaluate/all_1235/slither.json"), DefaultProfile("slither"));
  std::vector<MetricsReport> reports =
      Evaluate(records, loaded.findings, "slither", "all_1235");
  ASSERT_EQ(reports.size(), 1u);
  const MetricsReport& report = reports[0];
  auto expected = Expected()["all_1235"];
  EXPECT_EQ(report.total.n, expected["N"].get<int>());
  EXPECT_EQ(report.total.missed, expected["n_FN"].get<int>());
  EXPECT_EQ(report.total.n, 1235);
  EXPECT_EQ(report.total.missed, 131);
  EXPECT_EQ(FormatRatio(report.r()), "0.106");
  EXPECT_EQ(report.per_chain.at("if_swap").missed, 131);
  EXPECT_EQ(loaded.warnings.size(), 1u);
  ASSERT_EQ(report.unmapped.size(), 1u);
  EXPECT_EQ(report.unmapped[0].check_id, "solc-version");
}

TEST(Compare, AllVsSingleLocationDelta) {
  MetricsReport single = ComputeRatio(
      Manifest("single_30"),
      LoadFindings(Fixture("evaluate/single_30/mythril.json"),
                   DefaultProfile("mythril"))
          .findings);
  single.tool = "tool";
  single.dataset_id = "single";
  single.mode = InjectionMode::kSingleLocation;
  MetricsReport all = ComputeRatio(
      Manifest("all_1235"),
      LoadFindings(Fixture("evaluate/all_1235/slither.json"),
                   DefaultProfile("slither"))
          .findings);
  all.tool = "tool";
  all.dataset_id = "all";
  all.mode = InjectionMode::kAllLocations;
  auto comparisons = Compare({all, single}, CompareAxis::kAllVsSingleLocation);
  ASSERT_EQ(comparisons.size(), 1u);
  const Comparison& c = comparisons[0];
  EXPECT_EQ(c.baseline, "single");
  ASSERT_EQ(c.rows.size(), 2u);
  EXPECT_EQ(c.rows[0].group, "single");
  EXPECT_EQ(c.rows[0].delta, Ratio(0));
  EXPECT_EQ(c.rows[1].delta, ParseFraction(Expected()["delta_r"]));
  EXPECT_EQ(c.rows[1].delta, Ratio(3, 494));
  EXPECT_GT(all.r(), single.r());
  std::string table = RenderComparison(c);
  EXPECT_NE(table.find("+0.006"), std::string::npos) << table;
  EXPECT_NE(table.find("0.106"), std::string::npos) << table;
  nlohmann::json j = ToJson(c);
  EXPECT_EQ(j["rows"][1]["delta_r_exact"], "3/494");
  EXPECT_EQ(j["axis"], "all_vs_single_location");
}

TEST(Compare, AllVsSingleWithoutBaselineThrows) {
  MetricsReport r;
  r.tool = "tool";
  r.total = {10, 1};
  r.mode = InjectionMode::kAllLocations;
  EXPECT_THROW(Compare({r}, CompareAxis::kAllVsSingleLocation),
               MissingBaseline);
}

TEST(Compare, OperatorVsDefault) {
  std::vector<InjectionRecord> records;
  std::vector<Finding> findings;
  for (int i = 0; i < 10; ++i) {
    std::string d = "d" + std::to_string(i) + ".sol";
    std::string o = "o" + std::to_string(i) + ".sol";
    records.push_back(Rec(d, "default", VulnType::kTod, 5, 9));
    records.push_back(Rec(o, "if2for", VulnType::kTod, 5, 9));
    if (i != 0) {
      findings.push_back(Find(d, VulnType::kTod, 6, 6));
    }
    if (i > 3) {
      findings.push_back(Find(o, VulnType::kTod, 9, 12));
    }
  }
  auto reports = Evaluate(records, findings, "t", "ds");
  ASSERT_EQ(reports.size(), 1u);
  auto comparisons = Compare(reports, CompareAxis::kOperatorVsDefault);
  ASSERT_EQ(comparisons.size(), 1u);
  const Comparison& c = comparisons[0];
  ASSERT_EQ(c.rows.size(), 2u);
  EXPECT_EQ(c.rows[0].group, "default");
  EXPECT_EQ(c.rows[0].tally.r(), Ratio(1, 10));
  EXPECT_EQ(c.rows[1].group, "if2for");
  EXPECT_EQ(c.rows[1].tally.r(), Ratio(4, 10));
  EXPECT_EQ(c.rows[1].delta, Ratio(3, 10));
  std::string table = RenderTable(reports);
  EXPECT_NE(table.find("[tod]"), std::string::npos) << table;
  EXPECT_NE(table.find("4/10 0.400"), std::string::npos) << table;
  EXPECT_NE(table.find("5/20 0.250"), std::string::npos) << table;

  std::vector<InjectionRecord> only_ops(records.begin(), records.end());
  std::erase_if(only_ops, [](const InjectionRecord& r) {
    return r.chain == "default";
  });
  EXPECT_THROW(Compare(Evaluate(only_ops, findings, "t", "ds"),
                       CompareAxis::kOperatorVsDefault),
               MissingBaseline);
}

TEST(ComputeRatio, EmptyDatasetThrows) {
  std::vector<InjectionRecord> records = {
      Rec("a.sol", "default", VulnType::kTod, 1, 2, false)};
  EXPECT_THROW(ComputeRatio(records, {}), EmptyDataset);
  EXPECT_THROW(ComputeRatio({}, {}), EmptyDataset);
  EXPECT_THROW(Evaluate(records, {}, "t", "d"), EmptyDataset);
}

TEST(ComputeRatio, InvalidRecordsAreExcluded) {
  std::vector<InjectionRecord> records = {
      Rec("a.sol", "default", VulnType::kTod, 1, 2),
      Rec("b.sol", "default", VulnType::kTod, 1, 2, false)};
  MetricsReport report = ComputeRatio(records, {});
  EXPECT_EQ(report.total.n, 1);
  EXPECT_EQ(report.total.missed, 1);
}

TEST(Matches, RequiresBaseNameTypeAndOverlap) {
  InjectionRecord r = Rec("h__x__default__loc0.sol", "default",
                          VulnType::kReentrancy, 10, 14);
  EXPECT_TRUE(Matches(r, Find("/abs/path/h__x__default__loc0.sol",
                              VulnType::kReentrancy, 14, 20)));
  EXPECT_TRUE(Matches(r, Find("h__x__default__loc0.sol",
                              VulnType::kReentrancy, 1, 10)));
  EXPECT_TRUE(Matches(r, Find("h__x__default__loc0.sol",
                              VulnType::kReentrancy, 11, 12)));
  EXPECT_FALSE(Matches(r, Find("h__x__default__loc0.sol",
                               VulnType::kReentrancy, 15, 20)));
  EXPECT_FALSE(Matches(r, Find("h__x__default__loc0.sol",
                               VulnType::kReentrancy, 1, 9)));
  EXPECT_FALSE(Matches(r, Find("h__x__default__loc0.sol",
                               VulnType::kTxOrigin, 10, 14)));
  EXPECT_FALSE(Matches(r, Find("other.sol", VulnType::kReentrancy, 10, 14)));
  Finding unmapped = Find("h__x__default__loc0.sol", VulnType::kReentrancy,
                          10, 14);
  unmapped.mapped_vuln_type.reset();
  EXPECT_FALSE(Matches(r, unmapped));
}

TEST(LoadFindings, NormalizedJsonl) {
  std::string text =
      "{\"tool\":\"x\",\"check_id\":\"tod\",\"file\":\"a.sol\","
      "\"line_start\":3,\"line_end\":4}\n"
      "\n"
      "{\"tool\":\"x\",\"check_id\":\"custom\",\"file\":\"a.sol\","
      "\"line_start\":5,\"line_end\":5}\n";
  LoadedFindings loaded = ParseFindings(text, DefaultProfile("normalized"));
  ASSERT_EQ(loaded.findings.size(), 2u);
  EXPECT_EQ(loaded.findings[0].tool, "x");
  EXPECT_EQ(loaded.findings[0].mapped_vuln_type, VulnType::kTod);
  EXPECT_FALSE(loaded.findings[1].mapped_vuln_type.has_value());
}

TEST(LoadFindings, MalformedReportCarriesByteOffset) {
  std::string first =
      "{\"tool\":\"x\",\"check_id\":\"tod\",\"file\":\"a.sol\","
      "\"line_start\":3,\"line_end\":4}\n";
  std::string text = first + "{\"tool\": oops}\n";
  try {
    ParseFindings(text, DefaultProfile("normalized"));
    FAIL() << "expected MalformedReport";
  } catch (const MalformedReport& e) {
    EXPECT_GE(e.byte(), first.size());
    EXPECT_LT(e.byte(), text.size());
    EXPECT_EQ(text[e.byte()], 'o');
  }
  try {
    ParseFindings("{\"results\": [1, 2,", DefaultProfile("slither"));
    FAIL() << "expected MalformedReport";
  } catch (const MalformedReport& e) {
    EXPECT_EQ(e.byte(), 18u);
  }
  std::string missing_field = "{\"check_id\":\"tod\",\"file\":\"a.sol\"}\n";
  EXPECT_THROW(ParseFindings(first + missing_field,
                             DefaultProfile("normalized")),
               MalformedReport);
  std::string bad_span =
      "{\"check_id\":\"tod\",\"file\":\"a.sol\",\"line_start\":5,"
      "\"line_end\":4}\n";
  EXPECT_THROW(ParseFindings(bad_span, DefaultProfile("normalized")),
               MalformedReport);
}

TEST(LoadFindings, ToolFailuresAreMalformed) {
  EXPECT_THROW(ParseFindings("{\"success\": false, \"error\": \"boom\"}",
                             DefaultProfile("slither")),
               MalformedReport);
  EXPECT_THROW(ParseFindings("{\"error\": \"boom\", \"issues\": []}",
                             DefaultProfile("mythril")),
               MalformedReport);
  EXPECT_TRUE(ParseFindings("{\"success\": true, \"error\": null, "
                            "\"results\": {}}",
                            DefaultProfile("slither"))
                  .findings.empty());
}

TEST(Profiles, DefaultsAndUnknown) {
  EXPECT_THROW(DefaultProfile("securify"), UnknownFormat);
  EXPECT_FALSE(ParseReportFormat("sarif").has_value());
  EXPECT_EQ(ParseReportFormat("slither_json"), ReportFormat::kSlitherJson);
  ToolProfile slither = DefaultProfile("slither");
  EXPECT_EQ(slither.mapping.at("reentrancy-no-eth"), VulnType::kReentrancy);
  EXPECT_EQ(slither.mapping.at("timestamp"), VulnType::kTimestampDependency);
  EXPECT_EQ(slither.mapping.at("tx-origin"), VulnType::kTxOrigin);
  ToolProfile mythril = DefaultProfile("mythril");
  EXPECT_EQ(mythril.mapping.at("SWC-101"), VulnType::kOverflowUnderflow);
  EXPECT_EQ(mythril.mapping.at("SWC-114"), VulnType::kTod);
}

// Invariants over random record and finding sets.

struct RandomCase {
  std::vector<InjectionRecord> records;
  std::vector<Finding> findings;
};

RandomCase MakeCase(std::mt19937& rng) {
  RandomCase c;
  std::uniform_int_distribution<int> line(1, 60);
  std::uniform_int_distribution<int> len(0, 8);
  std::uniform_int_distribution<int> file(0, 5);
  std::uniform_int_distribution<int> type(0, 2);
  int n_records = std::uniform_int_distribution<int>(1, 30)(rng);
  for (int i = 0; i < n_records; ++i) {
    int s = line(rng);
    c.records.push_back(Rec("f" + std::to_string(file(rng)) + ".sol",
                            i % 2 ? "default" : "rename_var",
                            kAllVulnTypes[type(rng)], s, s + len(rng),
                            rng() % 8 != 0));
  }
  int n_findings = std::uniform_int_distribution<int>(0, 40)(rng);
  for (int i = 0; i < n_findings; ++i) {
    int s = line(rng);
    c.findings.push_back(Find("/x/f" + std::to_string(file(rng)) + ".sol",
                              kAllVulnTypes[type(rng)], s, s + len(rng)));
  }
  c.records.push_back(Rec("f0.sol", "default", kAllVulnTypes[0], 1, 2));
  return c;
}

std::int64_t ReferenceMissed(const RandomCase& c) {
  std::int64_t missed = 0;
  for (const auto& r : c.records) {
    if (!r.valid) {
      continue;
    }
    bool hit = false;
    for (const auto& f : c.findings) {
      std::string base = f.file.substr(f.file.rfind('/') + 1);
      hit = hit || (base == r.generated_file.substr(10) &&
                    f.mapped_vuln_type == r.vuln_type &&
                    !(f.line_end < r.start_line || r.end_line < f.line_start));
    }
    missed += !hit;
  }
  return missed;
}

TEST(Invariants, AgreesWithReferenceAndPartitions) {
  std::mt19937 rng(17);
  for (int iter = 0; iter < 300; ++iter) {
    RandomCase c = MakeCase(rng);
    MetricsReport report = ComputeRatio(c.records, c.findings);
    EXPECT_EQ(report.total.missed, ReferenceMissed(c));
    auto outcomes = Match(c.records, c.findings);
    auto detected = std::count(outcomes.begin(), outcomes.end(),
                               Outcome::kDetected);
    EXPECT_EQ(detected + report.total.missed, report.total.n);
    std::int64_t chain_n = 0;
    std::int64_t chain_missed = 0;
    for (const auto& [chain, tally] : report.per_chain) {
      chain_n += tally.n;
      chain_missed += tally.missed;
    }
    EXPECT_EQ(chain_n, report.total.n);
    EXPECT_EQ(chain_missed, report.total.missed);
    EXPECT_GE(report.r(), Ratio(0));
    EXPECT_LE(report.r(), Ratio(1));
  }
}

TEST(Invariants, PermutationSymmetry) {
  std::mt19937 rng(23);
  for (int iter = 0; iter < 200; ++iter) {
    RandomCase c = MakeCase(rng);
    MetricsReport a = ComputeRatio(c.records, c.findings);
    std::shuffle(c.records.begin(), c.records.end(), rng);
    std::shuffle(c.findings.begin(), c.findings.end(), rng);
    MetricsReport b = ComputeRatio(c.records, c.findings);
    EXPECT_EQ(a.total.n, b.total.n);
    EXPECT_EQ(a.total.missed, b.total.missed);
    for (const auto& [chain, tally] : a.per_chain) {
      EXPECT_EQ(tally.missed, b.per_chain.at(chain).missed);
    }
  }
}

TEST(Invariants, MoreFindingsNeverMoreMisses) {
  std::mt19937 rng(29);
  for (int iter = 0; iter < 200; ++iter) {
    RandomCase c = MakeCase(rng);
    RandomCase extra = MakeCase(rng);
    MetricsReport before = ComputeRatio(c.records, c.findings);
    std::vector<Finding> more = c.findings;
    more.insert(more.end(), extra.findings.begin(), extra.findings.end());
    MetricsReport after = ComputeRatio(c.records, more);
    EXPECT_LE(after.total.missed, before.total.missed);
    std::vector<Finding> fewer(c.findings.begin(),
                               c.findings.begin() + c.findings.size() / 2);
    EXPECT_GE(ComputeRatio(c.records, fewer).total.missed,
              before.total.missed);
  }
}

TEST(ToJson, MetricsReportFields) {
  MetricsReport report = ComputeRatio(
      {Rec("a.sol", "default", VulnType::kTod, 1, 3),
       Rec("b.sol", "default", VulnType::kTod, 1, 3)},
      {Find("a.sol", VulnType::kTod, 2, 2), Find("c.sol", VulnType::kTod, 2, 2)});
  report.tool = "t";
  report.dataset_id = "d";
  nlohmann::json j = ToJson(report);
  EXPECT_EQ(j["N"], 2);
  EXPECT_EQ(j["n_FN"], 1);
  EXPECT_EQ(j["r"], "0.500");
  EXPECT_EQ(j["r_exact"], "1/2");
  EXPECT_EQ(j["vuln_type"], "tod");
  EXPECT_TRUE(j["mode"].is_null());
  EXPECT_EQ(j["per_chain"]["default"]["n_FN"], 1);
  ASSERT_EQ(j["unmatched_findings"].size(), 1u);
  EXPECT_EQ(j["unmatched_findings"][0]["file"], "c.sol");
}

}  // namespace
}  // namespace solmorph
