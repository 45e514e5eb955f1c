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

#include <sstream>

#include "solmorph/inject.h"
#include "solmorph/parser.h"
#include "solmorph/printer.h"
#include "test_util.h"

namespace solmorph {
namespace {

using testing::DataDir;
using testing::Fixture;
using testing::ReadFile;

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    out.push_back(line);
  }
  return out;
}

std::string ExtractLines(const std::string& text, int first, int last) {
  std::vector<std::string> lines = Lines(text);
  std::string out;
  for (int i = first; i <= last; ++i) {
    out += lines.at(i - 1);
    if (i < last) {
      out += "\n";
    }
  }
  return out;
}

Snippet OriginSnippet() {
  return MakeSnippet("txorigin1", VulnType::kTxOrigin,
                     FragmentKind::kFunctionLevel,
                     "function bug_txorigin1(address owner) public {\n"
                     "    address tmpVar = tx.origin;\n"
                     "    require(tmpVar == owner);\n"
                     "}\n");
}

std::vector<Snippet> Corpus() { return LoadCorpus(DataDir("corpus")); }

void ExpectPreserved(const Host& host, const Injection& inj) {
  const InjectionRecord& r = inj.record;
  EXPECT_EQ(inj.text.substr(0, r.splice_offset),
            host.text.substr(0, r.splice_offset));
  EXPECT_EQ(inj.text.substr(r.splice_offset + r.splice_length),
            host.text.substr(r.splice_offset));
  EXPECT_EQ(inj.text.size(), host.text.size() + r.splice_length);
  EXPECT_LE(r.start_line, r.end_line);
  EXPECT_EQ(ExtractLines(inj.text, r.start_line, r.end_line), inj.variant_text);
}

TEST(LocationsTest, FencePosts) {
  Host empty = MakeHost("empty", "contract C { }\n");
  EXPECT_EQ(EnumerateLocations(empty, FragmentKind::kFunctionLevel).size(), 1u);
  Host three = MakeHost("three",
                        "contract C {\n    uint a;\n    uint b;\n"
                        "    function f() public { a = 1; b = 2; }\n}\n");
  auto locs = EnumerateLocations(three, FragmentKind::kFunctionLevel);
  ASSERT_EQ(locs.size(), 4u);
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ(locs[k].member_index, k);
    EXPECT_EQ(locs[k].statement_index, -1);
    EXPECT_EQ(locs[k].contract, "C");
  }
  auto stmts = EnumerateLocations(three, FragmentKind::kStatementLevel);
  ASSERT_EQ(stmts.size(), 3u);
  EXPECT_EQ(stmts[0].member_index, 2);
}

TEST(LocationsTest, LibrariesAndInterfacesAreSkipped) {
  Host h = MakeHost("h",
                    "library L { function f() internal {} }\n"
                    "interface I { function g() external; }\n"
                    "abstract contract A { }\n");
  auto locs = EnumerateLocations(h, FragmentKind::kFunctionLevel);
  ASSERT_EQ(locs.size(), 1u);
  EXPECT_EQ(locs[0].contract, "A");
}

TEST(LocationsTest, BundledHostsMatchBoundaryCount) {
  // Counted independently from brace depth: six members in each contract.
  std::map<std::string, std::size_t> expected = {
      {"registry", 7}, {"token", 7}, {"voting", 7}};
  std::vector<Host> hosts = LoadHosts(DataDir("hosts"));
  ASSERT_EQ(hosts.size(), expected.size());
  for (const Host& h : hosts) {
    EXPECT_EQ(EnumerateLocations(h, FragmentKind::kFunctionLevel).size(),
              expected.at(h.name))
        << h.name;
  }
}

TEST(InjectTest, EmptyHostGetsOnlyTheSnippet) {
  Host host = MakeHost("empty", "contract C { }\n");
  Variant v = Identity(OriginSnippet());
  auto loc = EnumerateLocations(host, FragmentKind::kFunctionLevel).at(0);
  Injection inj = Inject(host, v, loc, 0);
  EXPECT_EQ(inj.text,
            "contract C {\n"
            "    function bug_txorigin1(address owner) public {\n"
            "        address tmpVar = tx.origin;\n"
            "        require(tmpVar == owner);\n"
            "    }\n"
            " }\n");
  EXPECT_EQ(inj.record.start_line, 2);
  EXPECT_EQ(inj.record.end_line, 5);
  EXPECT_EQ(inj.record.generated_file,
            "contracts/empty__txorigin1__default__loc0.sol");
  ExpectPreserved(host, inj);
  SourceUnit unit = Parse(inj.text);
  ASSERT_EQ(unit.Contracts().size(), 1u);
  ASSERT_EQ(unit.Contracts()[0]->members.size(), 1u);
  EXPECT_EQ(unit.Contracts()[0]->members[0].As<FunctionDef>()->name,
            "bug_txorigin1");
}

TEST(InjectTest, CollisionRenamesOnlyTheVariant) {
  Host host = MakeHost("h",
                       "contract C {\n"
                       "    address owner;\n"
                       "\n"
                       "    function bug_txorigin1() public {\n"
                       "        owner = msg.sender;\n"
                       "    }\n"
                       "}\n");
  Variant v = Identity(OriginSnippet());
  auto locs = EnumerateLocations(host, FragmentKind::kFunctionLevel);
  Injection inj = Inject(host, v, locs.back(), 2);
  ExpectPreserved(host, inj);
  EXPECT_EQ(inj.record.collision_renames,
            (std::map<std::string, std::string>{
                {"bug_txorigin1_0", "bug_txorigin1"}}));
  SourceUnit unit = Parse(inj.text);
  std::vector<std::string> names;
  for (const Member& m : unit.Contracts()[0]->members) {
    if (const auto* fn = m.As<FunctionDef>()) {
      names.push_back(fn->name);
    }
  }
  EXPECT_EQ(names, (std::vector<std::string>{"bug_txorigin1", "bug_txorigin1_0"}));
  EXPECT_TRUE(CheckSyntax("g", inj.text,
                          SpliceLines{inj.record.start_line,
                                      inj.record.end_line})
                  .syntax_ok);
}

TEST(InjectTest, CollisionComposesWithRenames) {
  Host host = MakeHost("h", "contract C {\n    uint f_0;\n    uint v_0;\n}\n");
  Variant v = ApplyChain(OriginSnippet(), {OperatorGroup::kRenameVariable,
                                         OperatorGroup::kRenameFunction});
  ASSERT_EQ(v.renames.at("f_0"), "bug_txorigin1");
  ASSERT_EQ(v.renames.at("v_0"), "owner");
  std::map<std::string, std::string> renamed;
  Variant r = ResolveCollisions(v, host, 0, &renamed);
  EXPECT_EQ(renamed, (std::map<std::string, std::string>{{"f_0_0", "f_0"}}));
  EXPECT_EQ(r.renames.at("f_0_0"), "bug_txorigin1");
  EXPECT_FALSE(r.renames.contains("f_0"));
  // Parameters are scoped to the function and may shadow host names.
  EXPECT_EQ(r.renames.at("v_0"), "owner");
}

TEST(InjectTest, ElevenLocationsForATenMemberHost) {
  std::string text = "contract Ten {\n";
  for (int i = 0; i < 10; ++i) {
    text += "    uint256 s" + std::to_string(i) + ";\n";
  }
  text += "}\n";
  Host host = MakeHost("ten", text);
  Snippet re = Corpus().front();
  ASSERT_EQ(re.vuln_type, VulnType::kReentrancy);
  auto locs = EnumerateLocations(host, FragmentKind::kFunctionLevel);
  ASSERT_EQ(locs.size(), 11u);
  std::set<std::string> files;
  for (std::size_t k = 0; k < locs.size(); ++k) {
    Injection inj = Inject(host, Identity(re), locs[k], static_cast<int>(k));
    ExpectPreserved(host, inj);
    files.insert(inj.record.generated_file);
  }
  EXPECT_EQ(files.size(), 11u);
}

TEST(InjectTest, SameLineMembersStillGetWholeLines) {
  Host host = MakeHost("h", "contract C { uint a; uint b; }\n");
  Variant v = Identity(OriginSnippet());
  for (const auto& loc :
       EnumerateLocations(host, FragmentKind::kFunctionLevel)) {
    Injection inj = Inject(host, v, loc, loc.member_index);
    ExpectPreserved(host, inj);
    EXPECT_TRUE(CheckSyntax("g", inj.text,
                            SpliceLines{inj.record.start_line,
                                        inj.record.end_line})
                    .syntax_ok)
        << inj.text;
  }
}

TEST(InjectTest, StatementLevel) {
  Host host = MakeHost("h",
                       "contract C {\n"
                       "    uint x;\n"
                       "\n"
                       "    function f(uint a) public {\n"
                       "        x = a;\n"
                       "        x += 1;\n"
                       "    }\n"
                       "}\n");
  Snippet s = MakeSnippet("st", VulnType::kTimestampDependency,
                          FragmentKind::kStatementLevel,
                          "uint t = now;\nif (t % 15 == 0) {\n    x = 0;\n}\n");
  auto locs = EnumerateLocations(host, FragmentKind::kStatementLevel);
  ASSERT_EQ(locs.size(), 3u);
  for (std::size_t k = 0; k < locs.size(); ++k) {
    Injection inj = Inject(host, Identity(s), locs[k], static_cast<int>(k));
    ExpectPreserved(host, inj);
    EXPECT_TRUE(CheckSyntax("g", inj.text,
                            SpliceLines{inj.record.start_line,
                                        inj.record.end_line,
                                        FragmentKind::kStatementLevel})
                    .syntax_ok)
        << inj.text;
  }
  Injection mid = Inject(host, Identity(s), locs[1], 1);
  EXPECT_EQ(mid.text,
            "contract C {\n"
            "    uint x;\n"
            "\n"
            "    function f(uint a) public {\n"
            "        x = a;\n"
            "\n"
            "        uint t = now;\n"
            "        if (t % 15 == 0) {\n"
            "            x = 0;\n"
            "        }\n"
            "        x += 1;\n"
            "    }\n"
            "}\n");
  EXPECT_THROW(Inject(host, Identity(OriginSnippet()), locs[0], 0),
               KindMismatch);
}

TEST(InjectTest, HostPreservationAcrossCorpus) {
  std::vector<Host> hosts = LoadHosts(DataDir("hosts"));
  for (const Snippet& s : Corpus()) {
    std::vector<Variant> variants = {Identity(s)};
    for (OperatorGroup g : kAllGroups) {
      if (Applicable(g, s.fragment)) {
        variants.push_back(ApplyChain(s, {g}));
      }
    }
    for (const Host& h : hosts) {
      auto locs = EnumerateLocations(h, s.kind);
      for (const Variant& v : variants) {
        for (std::size_t k = 0; k < locs.size(); ++k) {
          Injection inj = Inject(h, v, locs[k], static_cast<int>(k));
          ExpectPreserved(h, inj);
          EXPECT_TRUE(CheckSyntax("g", inj.text,
                                  SpliceLines{inj.record.start_line,
                                              inj.record.end_line})
                          .syntax_ok)
              << h.name << " " << s.id << " " << ChainToken(v.chain) << " @"
              << k;
        }
      }
    }
  }
}

std::vector<Variant> SomeVariants() {
  std::vector<Variant> out;
  for (const Snippet& s : Corpus()) {
    out.push_back(Identity(s));
    if (Applicable(OperatorGroup::kIfToFor, s.fragment)) {
      out.push_back(ApplyChain(s, {OperatorGroup::kIfToFor}));
    }
  }
  return out;
}

TEST(DatasetTest, AllVersusSingleLocation) {
  std::vector<Host> hosts = LoadHosts(DataDir("hosts"));
  std::vector<Variant> variants = SomeVariants();
  DatasetOptions options;
  options.jobs = 4;
  auto all_dir = testing::TempDir("dataset_all");
  Dataset all = GenerateDataset(hosts, variants, options, all_dir);
  std::size_t expected = 0;
  for (const Host& h : hosts) {
    expected += variants.size() *
                EnumerateLocations(h, FragmentKind::kFunctionLevel).size();
  }
  EXPECT_EQ(all.records.size(), expected);
  EXPECT_EQ(all.validation, "syntax-validated only");
  for (const InjectionRecord& r : all.records) {
    EXPECT_TRUE(r.valid) << r.generated_file;
    EXPECT_TRUE(std::filesystem::exists(all_dir / r.generated_file));
  }

  options.mode = InjectionMode::kSingleLocation;
  auto single_dir = testing::TempDir("dataset_single");
  Dataset single = GenerateDataset(hosts, variants, options, single_dir);
  EXPECT_EQ(single.records.size(), hosts.size() * variants.size());
  for (const InjectionRecord& r : single.records) {
    EXPECT_EQ(r.location.member_index, 0);
  }
  std::size_t files = 0;
  for (const auto& e :
       std::filesystem::directory_iterator(single_dir / "contracts")) {
    files += e.is_regular_file() ? 1 : 0;
  }
  EXPECT_EQ(files, single.records.size());
}

TEST(DatasetTest, ManifestRoundTripAndCsv) {
  std::vector<Host> hosts = LoadHosts(DataDir("hosts"));
  auto dir = testing::TempDir("dataset_manifest");
  Dataset d = GenerateDataset(hosts, SomeVariants(), {}, dir);
  std::vector<InjectionRecord> back = ReadManifest(dir / "manifest.jsonl");
  ASSERT_EQ(back.size(), d.records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(ToJson(back[i]), ToJson(d.records[i]));
    std::string text = ReadFile(dir / back[i].generated_file);
    std::vector<std::string> lines = Lines(text);
    EXPECT_LE(back[i].end_line, static_cast<int>(lines.size()));
  }
  std::vector<std::string> csv = Lines(ReadFile(dir / "manifest.csv"));
  ASSERT_EQ(csv.size(), d.records.size() + 1);
  EXPECT_EQ(csv[0], "file,start_line,end_line,vuln_type,chain");
  const InjectionRecord& r = d.records.front();
  EXPECT_EQ(csv[1], r.generated_file + "," + std::to_string(r.start_line) +
                        "," + std::to_string(r.end_line) + "," +
                        std::string(ToString(r.vuln_type)) + "," + r.chain);
  auto header = nlohmann::json::parse(ReadFile(dir / "dataset.json"));
  EXPECT_EQ(header["validation"], "syntax-validated only");
  EXPECT_TRUE(header["compiler_version"].is_null());
  EXPECT_EQ(header["records"], d.records.size());
}

TEST(DatasetTest, DeterministicAcrossRunsAndJobCounts) {
  std::vector<Host> hosts = LoadHosts(DataDir("hosts"));
  std::vector<Variant> variants = SomeVariants();
  DatasetOptions options;
  options.jobs = 1;
  auto a = testing::TempDir("dataset_det_a");
  auto b = testing::TempDir("dataset_det_b");
  GenerateDataset(hosts, variants, options, a);
  options.jobs = 8;
  GenerateDataset(hosts, variants, options, b);
  EXPECT_EQ(ReadFile(a / "manifest.jsonl"), ReadFile(b / "manifest.jsonl"));
  EXPECT_EQ(ReadFile(a / "dataset.json"), ReadFile(b / "dataset.json"));
  for (const auto& e : std::filesystem::directory_iterator(a / "contracts")) {
    EXPECT_EQ(ReadFile(e.path()),
              ReadFile(b / "contracts" / e.path().filename()));
  }
}

TEST(DatasetTest, CompilerStampsManifest) {
  Host host = MakeHost("h", "pragma solidity ^0.5.0;\n\ncontract C {\n"
                            "    function bug_txorigin1() public {}\n}\n");
  DatasetOptions options;
  options.compiler.command =
      Fixture("validate/fake_solc.sh").string() + " {file}";
  options.compiler.version_command =
      Fixture("validate/fake_solc.sh").string() + " --version";
  auto dir = testing::TempDir("dataset_compiled");
  Dataset d = GenerateDataset({host}, {Identity(OriginSnippet())}, options, dir);
  EXPECT_EQ(d.validation, "compiled");
  EXPECT_EQ(d.compiler_version, "Version: 0.5.17+fake");
  ASSERT_EQ(d.records.size(), 2u);
  for (const InjectionRecord& r : d.records) {
    EXPECT_TRUE(r.valid);
    EXPECT_EQ(r.compile_ok, true);
  }
}

}  // namespace
}  // namespace solmorph
