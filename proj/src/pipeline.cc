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

#include "solmorph/pipeline.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "solmorph/lexer.h"
#include "solmorph/parser.h"
#include "solmorph/printer.h"

namespace solmorph {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr OperatorId kAllRules[] = {
    OperatorId::kRenameVariable, OperatorId::kRenameFunction,
    OperatorId::kPermutation,    OperatorId::kSubtraction,
    OperatorId::kDivision,       OperatorId::kUnequal,
    OperatorId::kIfSwap,         OperatorId::kIfToFor,
    OperatorId::kIfToWhile,      OperatorId::kTxOriginPassing,
};

OperatorId ParseRule(const std::string& token) {
  for (OperatorId id : kAllRules) {
    if (ToString(id) == token) {
      return id;
    }
  }
  throw DataError("unknown rule '" + token + "'");
}

SoundnessFlag ParseFlag(const std::string& token) {
  for (SoundnessFlag f : {SoundnessFlag::kIntegerDivisionRisk,
                          SoundnessFlag::kCheckedArithmeticRisk}) {
    if (ToString(f) == token) {
      return f;
    }
  }
  throw DataError("unknown soundness flag '" + token + "'");
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot read " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteText(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    throw DataError("cannot write " + path.string());
  }
}

void WriteJson(const fs::path& path, const json& j) {
  WriteText(path, j.dump(2) + "\n");
}

// Runs body(i) for i in [0, n) on `jobs` threads. The first exception is
// rethrown after all workers stop.
template <class F>
void ParallelFor(std::size_t n, int jobs, F body) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) {
          error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> threads;
  for (int t = 1; t < std::min<int>(jobs, static_cast<int>(n)); ++t) {
    threads.emplace_back(worker);
  }
  worker();
  for (auto& t : threads) {
    t.join();
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

json RewriteJson(const RewriteCheck& check) {
  json j = {{"rule", std::string(ToString(check.rule))},
            {"before", check.before},
            {"after", check.after},
            {"width", check.width},
            {"cases", check.result.cases},
            {"divergent", check.result.divergent},
            {"equal", check.result.equal}};
  j["witnesses"] = json::array();
  std::size_t shown = std::min<std::size_t>(check.result.witnesses.size(), 5);
  for (std::size_t i = 0; i < shown; ++i) {
    json w = json::object();
    for (std::size_t v = 0; v < check.result.variables.size(); ++v) {
      w[check.result.variables[v]] = check.result.witnesses[i][v];
    }
    j["witnesses"].push_back(std::move(w));
  }
  return j;
}

std::string DatasetId(const fs::path& dir) {
  fs::path p = dir;
  if (!p.has_filename()) {
    p = p.parent_path();
  }
  std::string name = p.filename().string();
  return name.empty() || name == "." ? "dataset" : name;
}

}  // namespace

RunLog::RunLog(const fs::path& out_dir) {
  fs::create_directories(out_dir);
  out_.open(out_dir / "run.log", std::ios::app);
}

void RunLog::Line(const std::string& message) {
  std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm);
  out_ << stamp << " " << message << "\n";
  out_.flush();
}

json VariantMeta(const Variant& variant, FragmentKind kind) {
  json j;
  j["snippet_id"] = variant.snippet_id;
  j["vuln_type"] = std::string(ToString(variant.vuln_type));
  j["kind"] = std::string(ToString(kind));
  j["chain"] = ChainToken(variant.chain);
  j["seed"] = variant.seed;
  j["flags"] = json::array();
  for (SoundnessFlag f : variant.flags) {
    j["flags"].push_back(std::string(ToString(f)));
  }
  j["rules"] = json::array();
  for (OperatorId id : variant.rules) {
    j["rules"].push_back(std::string(ToString(id)));
  }
  j["renames"] = variant.renames;
  j["rewrites"] = json::array();
  for (const ExpressionRewrite& r : variant.rewrites) {
    j["rewrites"].push_back({{"rule", std::string(ToString(r.rule))},
                             {"before", PrintExpr(r.before)},
                             {"after", PrintExpr(r.after)}});
  }
  return j;
}

fs::path WriteVariant(const Variant& variant, FragmentKind kind,
                      const fs::path& dir) {
  fs::path sol = dir / std::string(ToString(variant.vuln_type)) /
                 (variant.snippet_id + "__" + ChainToken(variant.chain) +
                  ".sol");
  WriteText(sol, Print(variant.fragment));
  fs::path meta = sol;
  meta.replace_extension(".meta.json");
  WriteJson(meta, VariantMeta(variant, kind));
  return sol;
}

Variant LoadVariant(const fs::path& sol_file) {
  fs::path meta_file = sol_file;
  meta_file.replace_extension(".meta.json");
  json meta;
  try {
    meta = json::parse(ReadText(meta_file));
  } catch (const json::parse_error& e) {
    throw DataError(meta_file.string() + ": " + e.what());
  }
  try {
    Variant v;
    v.snippet_id = meta.at("snippet_id").get<std::string>();
    auto type = ParseVulnType(meta.at("vuln_type").get<std::string>());
    auto kind = ParseFragmentKind(meta.at("kind").get<std::string>());
    auto chain = ParseChainToken(meta.at("chain").get<std::string>());
    if (!type || !kind || !chain) {
      throw DataError(meta_file.string() + ": bad vuln_type, kind or chain");
    }
    v.vuln_type = *type;
    v.chain = *chain;
    v.seed = meta.value("seed", std::uint64_t{0});
    for (const auto& f : meta.at("flags")) {
      v.flags.insert(ParseFlag(f.get<std::string>()));
    }
    for (const auto& r : meta.at("rules")) {
      v.rules.insert(ParseRule(r.get<std::string>()));
    }
    v.renames = meta.at("renames").get<std::map<std::string, std::string>>();
    for (const auto& r : meta.at("rewrites")) {
      v.rewrites.push_back({ParseRule(r.at("rule").get<std::string>()),
                            ParseExpression(r.at("before").get<std::string>()),
                            ParseExpression(r.at("after").get<std::string>())});
    }
    v.fragment = ParseFragment(ReadText(sol_file), *kind);
    return v;
  } catch (const json::exception& e) {
    throw DataError(meta_file.string() + ": " + e.what());
  } catch (const ParseError& e) {
    throw DataError(sol_file.string() + ": " + e.what());
  }
}

std::vector<Variant> LoadVariants(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw DataError("no variants directory " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.path().extension() == ".sol") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Variant> out;
  for (const fs::path& f : files) {
    out.push_back(LoadVariant(f));
  }
  return out;
}

TransformSummary CmdTransform(const RunConfig& config, RunLog& log) {
  std::vector<Snippet> corpus;
  try {
    corpus = LoadCorpus(config.corpus_dir);
  } catch (const std::exception& e) {
    throw DataError(e.what());
  }
  ChainPlan plan = PlanChains(config);
  for (const std::string& note : plan.excluded) {
    log.Line("transform: " + note);
  }
  fs::path dir = config.out_dir / "variants";
  fs::remove_all(dir);
  fs::create_directories(dir);

  TransformOptions options;
  options.seed = config.seed;
  options.for_style = config.for_style;
  TransformSummary summary;
  std::map<std::string, int> per_operator;
  std::map<std::string, int> per_vuln;
  std::map<std::string, int> per_chain;
  json failures = json::array();
  int not_applicable = 0;
  for (const Snippet& snippet : corpus) {
    for (const Chain& chain : plan.chains) {
      std::string token = ChainToken(chain);
      Variant variant;
      try {
        variant = ApplyChain(snippet, chain, options);
      } catch (const NotApplicable&) {
        ++not_applicable;
        continue;
      } catch (const std::exception& e) {
        ++summary.failures;
        log.Line("transform: " + snippet.id + " " + token +
                 " failed: " + e.what());
        failures.push_back(
            {{"snippet_id", snippet.id}, {"chain", token}, {"error", e.what()}});
        continue;
      }
      WriteVariant(variant, snippet.kind, dir);
      if (chain.empty()) {
        ++summary.baselines;
        continue;
      }
      ++summary.variants;
      ++per_vuln[std::string(ToString(snippet.vuln_type))];
      ++per_chain[token];
      for (OperatorGroup g : chain) {
        ++per_operator[std::string(ToString(g))];
      }
    }
  }
  json chains = json::array();
  for (const Chain& c : plan.chains) {
    chains.push_back(ChainToken(c));
  }
  summary.index = {{"seed", config.seed},
                   {"snippets", corpus.size()},
                   {"chains", chains},
                   {"excluded", plan.excluded},
                   {"variants", summary.variants},
                   {"baselines", summary.baselines},
                   {"not_applicable", not_applicable},
                   {"per_operator", per_operator},
                   {"per_vuln_type", per_vuln},
                   {"per_chain", per_chain},
                   {"failures", failures}};
  WriteJson(dir / "index.json", summary.index);
  log.Line("transform: " + std::to_string(summary.variants) + " variants, " +
           std::to_string(summary.baselines) + " baselines from " +
           std::to_string(corpus.size()) + " snippets");
  if (summary.variants + summary.baselines == 0) {
    throw DataError("no variants produced");
  }
  return summary;
}

VerifySummary CmdVerify(const RunConfig& config, RunLog& log) {
  std::map<std::string, Snippet> originals;
  try {
    for (Snippet& s : LoadCorpus(config.corpus_dir)) {
      originals.emplace(s.id, std::move(s));
    }
  } catch (const std::exception& e) {
    throw DataError(e.what());
  }
  std::vector<Variant> variants = LoadVariants(config.out_dir / "variants");
  for (const Variant& v : variants) {
    if (!originals.contains(v.snippet_id)) {
      throw DataError("variant of unknown snippet " + v.snippet_id);
    }
  }
  std::vector<VerifyReport> reports(variants.size());
  ParallelFor(variants.size(), config.jobs, [&](std::size_t i) {
    reports[i] = VerifyVariant(originals.at(variants[i].snippet_id),
                               variants[i]);
  });
  VerifySummary summary;
  json results = json::array();
  for (const VerifyReport& r : reports) {
    ++summary.checked;
    summary.failed += !r.Passed();
    summary.flagged += !r.flags.empty();
    json j = {{"snippet_id", r.snippet_id},
              {"chain", r.chain},
              {"passed", r.Passed()},
              {"problems", r.problems},
              {"notes", r.notes}};
    j["flags"] = json::array();
    for (SoundnessFlag f : r.flags) {
      j["flags"].push_back(std::string(ToString(f)));
    }
    j["rewrites"] = json::array();
    for (const RewriteCheck& c : r.rewrites) {
      j["rewrites"].push_back(RewriteJson(c));
    }
    results.push_back(std::move(j));
    if (!r.Passed()) {
      log.Line("verify: " + r.snippet_id + " " + r.chain + " FAILED: " +
               r.problems.front());
    }
  }
  summary.report = {{"checked", summary.checked},
                    {"failed", summary.failed},
                    {"flagged", summary.flagged},
                    {"results", results}};
  WriteJson(config.out_dir / "verify.json", summary.report);
  log.Line("verify: " + std::to_string(summary.checked) + " checked, " +
           std::to_string(summary.failed) + " failed, " +
           std::to_string(summary.flagged) + " flagged");
  return summary;
}

Dataset CmdInject(const RunConfig& config, RunLog& log) {
  std::vector<Host> hosts;
  try {
    hosts = LoadHosts(config.hosts_dir);
  } catch (const std::exception& e) {
    throw DataError(e.what());
  }
  if (hosts.empty()) {
    throw DataError("no host contracts in " + config.hosts_dir.string());
  }
  std::vector<Variant> variants = LoadVariants(config.out_dir / "variants");
  DatasetOptions options;
  options.mode = config.mode;
  options.seed = config.seed;
  options.jobs = config.jobs;
  options.compiler = WithEnvironment(config.compiler);
  if (options.compiler.Configured()) {
    log.Line("inject: compiler command: " + options.compiler.command);
  }
  Dataset dataset = GenerateDataset(hosts, variants, options, config.out_dir);
  std::size_t valid = std::count_if(
      dataset.records.begin(), dataset.records.end(),
      [](const InjectionRecord& r) { return r.valid; });
  log.Line("inject: " + std::to_string(dataset.records.size()) +
           " records, " + std::to_string(valid) + " valid, " +
           dataset.validation);
  return dataset;
}

EvaluateSummary CmdEvaluate(const RunConfig& config,
                            const std::vector<fs::path>& datasets,
                            const fs::path& out, RunLog& log) {
  if (config.reports.empty()) {
    throw DataError("no detector reports given");
  }
  EvaluateSummary summary;
  std::set<InjectionMode> modes;
  for (const fs::path& dir : datasets) {
    std::vector<InjectionRecord> records;
    try {
      records = ReadManifest(dir / "manifest.jsonl");
    } catch (const std::exception& e) {
      throw DataError(e.what());
    }
    std::optional<InjectionMode> mode;
    if (fs::exists(dir / "dataset.json")) {
      json header = json::parse(ReadText(dir / "dataset.json"), nullptr,
                                false);
      if (header.is_object() && header.contains("mode") &&
          header["mode"].is_string()) {
        mode = ParseInjectionMode(header["mode"].get<std::string>());
      }
    }
    if (mode) {
      modes.insert(*mode);
    }
    for (const auto& [tool, report] : config.reports) {
      ToolProfile profile = ProfileFor(config, tool);
      LoadedFindings loaded = LoadFindings(report, profile);
      for (const std::string& w : loaded.warnings) {
        log.Line("evaluate: " + tool + ": " + w);
      }
      for (MetricsReport& m :
           Evaluate(records, loaded.findings, tool, DatasetId(dir))) {
        m.mode = mode;
        m.warnings = loaded.warnings;
        summary.reports.push_back(std::move(m));
      }
    }
  }
  std::vector<MetricsReport> with_default;
  for (const MetricsReport& m : summary.reports) {
    if (m.per_chain.contains("default") && m.per_chain.size() > 1) {
      with_default.push_back(m);
    }
  }
  summary.comparisons = Compare(with_default, CompareAxis::kOperatorVsDefault);
  if (modes.size() == 2) {
    for (Comparison& c :
         Compare(summary.reports, CompareAxis::kAllVsSingleLocation)) {
      summary.comparisons.push_back(std::move(c));
    }
  }
  json j = {{"reports", json::array()}, {"comparisons", json::array()}};
  for (const MetricsReport& m : summary.reports) {
    j["reports"].push_back(ToJson(m));
  }
  summary.text = RenderTable(summary.reports);
  for (const Comparison& c : summary.comparisons) {
    j["comparisons"].push_back(ToJson(c));
    summary.text += "\n" + RenderComparison(c);
  }
  std::string appendix;
  for (const MetricsReport& m : summary.reports) {
    for (const Finding& f : m.unmatched) {
      appendix += m.dataset_id + " " + f.tool + " " + f.check_id + " " +
                  f.file + ":" + std::to_string(f.line_start) + "-" +
                  std::to_string(f.line_end) + "\n";
    }
  }
  if (!appendix.empty()) {
    summary.text += "\n[unmatched findings]\n" + appendix;
  }
  WriteJson(out / "metrics.json", j);
  WriteText(out / "metrics.txt", summary.text);
  log.Line("evaluate: " + std::to_string(summary.reports.size()) +
           " reports over " + std::to_string(datasets.size()) + " datasets");
  return summary;
}

}  // namespace solmorph
