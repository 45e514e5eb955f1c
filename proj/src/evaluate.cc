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

#include "solmorph/evaluate.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

namespace solmorph {
namespace {

using nlohmann::json;

std::string Thousandths(const Ratio& r, bool sign) {
  __int128 n = r.numerator();
  __int128 d = r.denominator();
  bool negative = n < 0;
  if (negative) {
    n = -n;
  }
  auto q = static_cast<std::int64_t>((2 * n * 1000 + d) / (2 * d));
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%lld.%03lld",
                static_cast<long long>(q / 1000),
                static_cast<long long>(q % 1000));
  std::string out = buf;
  if (q == 0) {
    return out;
  }
  if (negative) {
    return "-" + out;
  }
  return sign ? "+" + out : out;
}

std::string BaseName(std::string_view path) {
  std::size_t slash = path.find_last_of("/\\");
  return std::string(slash == std::string_view::npos ? path
                                                     : path.substr(slash + 1));
}

Finding MakeFinding(const ToolProfile& profile, std::string check_id,
                    std::string file, int start, int end) {
  Finding f;
  f.tool = profile.name;
  f.check_id = std::move(check_id);
  f.file = std::move(file);
  f.line_start = start;
  f.line_end = end;
  if (auto it = profile.mapping.find(f.check_id); it != profile.mapping.end()) {
    f.mapped_vuln_type = it->second;
  }
  return f;
}

json ParseDocument(std::string_view text, std::size_t base) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw MalformedReport(base + byte, e.what());
  }
}

std::string SlitherFile(const json& mapping) {
  for (const char* key : {"filename_relative", "filename_short",
                          "filename_absolute", "filename_used"}) {
    if (mapping.contains(key) && mapping[key].is_string()) {
      return mapping[key].get<std::string>();
    }
  }
  return "";
}

LoadedFindings ParseSlither(std::string_view text,
                            const ToolProfile& profile) {
  json doc = ParseDocument(text, 0);
  if (!doc.is_object()) {
    throw MalformedReport(0, "slither report is not a JSON object");
  }
  if (doc.contains("success") && doc["success"].is_boolean() &&
      !doc["success"].get<bool>()) {
    std::string error = doc.value("error", json()).is_string()
                            ? doc["error"].get<std::string>()
                            : "unknown error";
    throw MalformedReport(0, "slither reported failure: " + error);
  }
  LoadedFindings out;
  const json* detectors = nullptr;
  if (doc.contains("results") && doc["results"].is_object() &&
      doc["results"].contains("detectors")) {
    detectors = &doc["results"]["detectors"];
  }
  if (detectors == nullptr) {
    return out;
  }
  if (!detectors->is_array()) {
    throw MalformedReport(0, "results.detectors is not an array");
  }
  for (const json& det : *detectors) {
    std::string check = det.value("check", "");
    if (check.empty()) {
      throw MalformedReport(0, "detector result without a check name");
    }
    bool located = false;
    for (const json& element : det.value("elements", json::array())) {
      if (!element.contains("source_mapping")) {
        continue;
      }
      const json& mapping = element["source_mapping"];
      std::string file = SlitherFile(mapping);
      const json lines = mapping.value("lines", json::array());
      if (file.empty() || !lines.is_array() || lines.empty()) {
        continue;
      }
      int lo = lines.front().get<int>();
      int hi = lo;
      for (const json& line : lines) {
        lo = std::min(lo, line.get<int>());
        hi = std::max(hi, line.get<int>());
      }
      out.findings.push_back(MakeFinding(profile, check, file, lo, hi));
      located = true;
      break;
    }
    if (!located) {
      out.warnings.push_back("slither " + check + ": no source lines");
    }
  }
  return out;
}

LoadedFindings ParseMythril(std::string_view text,
                            const ToolProfile& profile) {
  json doc = ParseDocument(text, 0);
  if (!doc.is_object()) {
    throw MalformedReport(0, "mythril report is not a JSON object");
  }
  if (doc.contains("error") && doc["error"].is_string()) {
    throw MalformedReport(0, "mythril reported failure: " +
                                 doc["error"].get<std::string>());
  }
  LoadedFindings out;
  const json issues = doc.value("issues", json::array());
  if (!issues.is_array()) {
    throw MalformedReport(0, "issues is not an array");
  }
  for (const json& issue : issues) {
    std::string swc;
    if (issue.contains("swc-id")) {
      const json& id = issue["swc-id"];
      swc = id.is_string() ? id.get<std::string>() : id.dump();
    }
    if (swc.empty()) {
      throw MalformedReport(0, "issue without swc-id");
    }
    if (!swc.starts_with("SWC-")) {
      swc = "SWC-" + swc;
    }
    if (!issue.contains("lineno") || !issue["lineno"].is_number_integer() ||
        !issue.contains("filename") || !issue["filename"].is_string()) {
      out.warnings.push_back("mythril " + swc + ": no source location");
      continue;
    }
    int line = issue["lineno"].get<int>();
    out.findings.push_back(MakeFinding(
        profile, swc, issue["filename"].get<std::string>(), line, line));
  }
  return out;
}

LoadedFindings ParseNormalized(std::string_view text,
                               const ToolProfile& profile) {
  LoadedFindings out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(pos, end - pos);
    std::size_t base = pos;
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      continue;
    }
    json j = ParseDocument(line, base);
    try {
      Finding f = MakeFinding(profile, j.at("check_id").get<std::string>(),
                              j.at("file").get<std::string>(),
                              j.at("line_start").get<int>(),
                              j.at("line_end").get<int>());
      if (j.contains("tool")) {
        f.tool = j["tool"].get<std::string>();
      }
      if (f.line_start < 1 || f.line_end < f.line_start) {
        throw MalformedReport(base, "invalid line span");
      }
      out.findings.push_back(std::move(f));
    } catch (const json::exception& e) {
      throw MalformedReport(base, e.what());
    }
  }
  return out;
}

bool Overlaps(int a_start, int a_end, int b_start, int b_end) {
  return a_start <= b_end && b_start <= a_end;
}

json RatioJson(const Tally& t) {
  Ratio r = t.r();
  return json{{"N", t.n},
              {"n_FN", t.missed},
              {"r", FormatRatio(r)},
              {"r_exact", std::to_string(r.numerator()) + "/" +
                              std::to_string(r.denominator())}};
}

std::string Pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string AlignColumns(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    widths.resize(std::max(widths.size(), row.size()));
    for (std::size_t i = 0; i < row.size(); ++i) {
      widths[i] = std::max(widths[i], row[i].size());
    }
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += i + 1 < row.size() ? Pad(row[i], widths[i] + 2) : row[i];
    }
    out += line + "\n";
  }
  return out;
}

std::string Cell(const Tally& t) {
  return std::to_string(t.missed) + "/" + std::to_string(t.n) + " " +
         FormatRatio(t.r());
}

std::string VulnLabel(const std::optional<VulnType>& type) {
  return type ? std::string(ToString(*type)) : "all";
}

}  // namespace

std::string FormatRatio(const Ratio& r) { return Thousandths(r, false); }

std::string FormatDelta(const Ratio& r) { return Thousandths(r, true); }

MalformedReport::MalformedReport(std::size_t byte, const std::string& message)
    : std::runtime_error("malformed report at byte " + std::to_string(byte) +
                         ": " + message),
      byte_(byte) {}

std::string_view ToString(ReportFormat format) {
  switch (format) {
    case ReportFormat::kNormalized:
      return "normalized";
    case ReportFormat::kSlitherJson:
      return "slither_json";
    case ReportFormat::kMythrilJson:
      return "mythril_json";
  }
  return "";
}

std::optional<ReportFormat> ParseReportFormat(std::string_view token) {
  for (ReportFormat f : {ReportFormat::kNormalized, ReportFormat::kSlitherJson,
                         ReportFormat::kMythrilJson}) {
    if (ToString(f) == token) {
      return f;
    }
  }
  return std::nullopt;
}

ToolProfile DefaultProfile(std::string_view tool) {
  ToolProfile p;
  p.name = std::string(tool);
  if (tool == "slither") {
    p.format = ReportFormat::kSlitherJson;
    p.mapping = {
        {"reentrancy-eth", VulnType::kReentrancy},
        {"reentrancy-no-eth", VulnType::kReentrancy},
        {"reentrancy-benign", VulnType::kReentrancy},
        {"reentrancy-events", VulnType::kReentrancy},
        {"reentrancy-unlimited-gas", VulnType::kReentrancy},
        {"timestamp", VulnType::kTimestampDependency},
        {"tx-origin", VulnType::kTxOrigin},
        {"unchecked-send", VulnType::kUncheckedSend},
        {"unchecked-lowlevel", VulnType::kUnhandledException},
        {"unchecked-transfer", VulnType::kUnhandledException},
    };
  } else if (tool == "mythril") {
    p.format = ReportFormat::kMythrilJson;
    p.mapping = {
        {"SWC-101", VulnType::kOverflowUnderflow},
        {"SWC-104", VulnType::kUnhandledException},
        {"SWC-105", VulnType::kUncheckedSend},
        {"SWC-107", VulnType::kReentrancy},
        {"SWC-114", VulnType::kTod},
        {"SWC-115", VulnType::kTxOrigin},
        {"SWC-116", VulnType::kTimestampDependency},
    };
  } else if (tool == "normalized") {
    p.format = ReportFormat::kNormalized;
    for (VulnType t : kAllVulnTypes) {
      p.mapping.emplace(std::string(ToString(t)), t);
    }
  } else {
    throw UnknownFormat("no built-in profile for tool '" + p.name + "'");
  }
  return p;
}

LoadedFindings ParseFindings(std::string_view text,
                             const ToolProfile& profile) {
  switch (profile.format) {
    case ReportFormat::kNormalized:
      return ParseNormalized(text, profile);
    case ReportFormat::kSlitherJson:
      return ParseSlither(text, profile);
    case ReportFormat::kMythrilJson:
      return ParseMythril(text, profile);
  }
  throw UnknownFormat("unknown report format");
}

LoadedFindings LoadFindings(const std::filesystem::path& report,
                            const ToolProfile& profile) {
  std::ifstream in(report, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read report " + report.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseFindings(buffer.str(), profile);
}

bool Matches(const InjectionRecord& record, const Finding& finding) {
  return finding.mapped_vuln_type == record.vuln_type &&
         BaseName(finding.file) == BaseName(record.generated_file) &&
         Overlaps(record.start_line, record.end_line, finding.line_start,
                  finding.line_end);
}

std::vector<Outcome> Match(const std::vector<InjectionRecord>& records,
                           const std::vector<Finding>& findings) {
  std::map<std::string, std::vector<const Finding*>> by_file;
  for (const Finding& f : findings) {
    if (f.mapped_vuln_type) {
      by_file[BaseName(f.file)].push_back(&f);
    }
  }
  std::vector<Outcome> out;
  for (const InjectionRecord& record : records) {
    if (!record.valid) {
      continue;
    }
    bool hit = false;
    auto it = by_file.find(BaseName(record.generated_file));
    if (it != by_file.end()) {
      for (const Finding* f : it->second) {
        if (Matches(record, *f)) {
          hit = true;
          break;
        }
      }
    }
    out.push_back(hit ? Outcome::kDetected : Outcome::kMissed);
  }
  return out;
}

MetricsReport ComputeRatio(const std::vector<InjectionRecord>& records,
                           const std::vector<Finding>& findings) {
  std::vector<InjectionRecord> valid;
  std::set<VulnType> types;
  for (const InjectionRecord& r : records) {
    if (r.valid) {
      valid.push_back(r);
      types.insert(r.vuln_type);
    }
  }
  if (valid.empty()) {
    throw EmptyDataset("no valid records to evaluate");
  }
  MetricsReport report;
  if (types.size() == 1) {
    report.vuln_type = *types.begin();
  }
  std::vector<Outcome> outcomes = Match(valid, findings);
  for (std::size_t i = 0; i < valid.size(); ++i) {
    bool missed = outcomes[i] == Outcome::kMissed;
    report.total.n++;
    report.total.missed += missed;
    Tally& chain = report.per_chain[valid[i].chain];
    chain.n++;
    chain.missed += missed;
  }
  for (const Finding& f : findings) {
    if (!f.mapped_vuln_type) {
      report.unmapped.push_back(f);
      continue;
    }
    if (!types.contains(*f.mapped_vuln_type)) {
      continue;
    }
    bool any = std::any_of(valid.begin(), valid.end(),
                           [&](const InjectionRecord& r) {
                             return Matches(r, f);
                           });
    if (!any) {
      report.unmatched.push_back(f);
    }
  }
  return report;
}

std::vector<MetricsReport> Evaluate(const std::vector<InjectionRecord>& records,
                                    const std::vector<Finding>& findings,
                                    const std::string& tool,
                                    const std::string& dataset_id) {
  std::map<VulnType, std::vector<InjectionRecord>> by_type;
  for (const InjectionRecord& r : records) {
    if (r.valid) {
      by_type[r.vuln_type].push_back(r);
    }
  }
  if (by_type.empty()) {
    throw EmptyDataset("dataset " + dataset_id + " has no valid records");
  }
  std::vector<MetricsReport> out;
  for (const auto& [type, subset] : by_type) {
    MetricsReport report = ComputeRatio(subset, findings);
    report.tool = tool;
    report.dataset_id = dataset_id;
    out.push_back(std::move(report));
  }
  return out;
}

std::string_view ToString(CompareAxis axis) {
  return axis == CompareAxis::kOperatorVsDefault ? "operator_vs_default"
                                                 : "all_vs_single_location";
}

std::vector<Comparison> Compare(const std::vector<MetricsReport>& reports,
                                CompareAxis axis) {
  std::vector<Comparison> out;
  if (axis == CompareAxis::kOperatorVsDefault) {
    for (const MetricsReport& report : reports) {
      auto base = report.per_chain.find("default");
      if (base == report.per_chain.end()) {
        throw MissingBaseline("no default chain in " + report.dataset_id +
                              " for " + report.tool);
      }
      Comparison c;
      c.axis = axis;
      c.tool = report.tool;
      c.vuln_type = report.vuln_type;
      c.baseline = "default";
      c.rows.push_back({"default", base->second, Ratio(0)});
      for (const auto& [chain, tally] : report.per_chain) {
        if (chain != "default") {
          c.rows.push_back({chain, tally, tally.r() - base->second.r()});
        }
      }
      out.push_back(std::move(c));
    }
    return out;
  }
  using Key = std::pair<std::string, std::string>;
  std::map<Key, std::vector<const MetricsReport*>> groups;
  for (const MetricsReport& report : reports) {
    groups[{report.tool, VulnLabel(report.vuln_type)}].push_back(&report);
  }
  for (const auto& [key, members] : groups) {
    const MetricsReport* base = nullptr;
    for (const MetricsReport* m : members) {
      if (m->mode == InjectionMode::kSingleLocation) {
        base = m;
        break;
      }
    }
    if (base == nullptr) {
      throw MissingBaseline("no single-location report for " + key.first +
                            "/" + key.second);
    }
    Comparison c;
    c.axis = axis;
    c.tool = key.first;
    c.vuln_type = base->vuln_type;
    c.baseline = base->dataset_id;
    c.rows.push_back({base->dataset_id, base->total, Ratio(0)});
    for (const MetricsReport* m : members) {
      if (m != base) {
        c.rows.push_back({m->dataset_id, m->total, m->r() - base->r()});
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

json ToJson(const Finding& finding) {
  json j = {{"tool", finding.tool},
            {"check_id", finding.check_id},
            {"file", finding.file},
            {"line_start", finding.line_start},
            {"line_end", finding.line_end}};
  j["vuln_type"] = finding.mapped_vuln_type
                       ? json(std::string(ToString(*finding.mapped_vuln_type)))
                       : json(nullptr);
  return j;
}

json ToJson(const MetricsReport& report) {
  json j = RatioJson(report.total);
  j["dataset_id"] = report.dataset_id;
  j["tool"] = report.tool;
  j["vuln_type"] = report.vuln_type
                       ? json(std::string(ToString(*report.vuln_type)))
                       : json(nullptr);
  j["mode"] =
      report.mode ? json(std::string(ToString(*report.mode))) : json(nullptr);
  j["per_chain"] = json::object();
  for (const auto& [chain, tally] : report.per_chain) {
    j["per_chain"][chain] = RatioJson(tally);
  }
  j["unmatched_findings"] = json::array();
  for (const Finding& f : report.unmatched) {
    j["unmatched_findings"].push_back(ToJson(f));
  }
  j["unmapped_findings"] = json::array();
  for (const Finding& f : report.unmapped) {
    j["unmapped_findings"].push_back(ToJson(f));
  }
  j["warnings"] = report.warnings;
  return j;
}

json ToJson(const Comparison& comparison) {
  json j = {{"axis", std::string(ToString(comparison.axis))},
            {"tool", comparison.tool},
            {"baseline", comparison.baseline}};
  j["vuln_type"] = comparison.vuln_type
                       ? json(std::string(ToString(*comparison.vuln_type)))
                       : json(nullptr);
  j["rows"] = json::array();
  for (const ComparisonRow& row : comparison.rows) {
    json r = RatioJson(row.tally);
    r["group"] = row.group;
    r["delta_r"] = FormatDelta(row.delta);
    r["delta_r_exact"] = std::to_string(row.delta.numerator()) + "/" +
                         std::to_string(row.delta.denominator());
    j["rows"].push_back(std::move(r));
  }
  return j;
}

std::string RenderTable(const std::vector<MetricsReport>& reports) {
  std::map<std::string, std::set<std::string>> datasets_per_tool;
  for (const MetricsReport& r : reports) {
    datasets_per_tool[r.tool].insert(r.dataset_id);
  }
  auto column = [&](const MetricsReport& r) {
    return datasets_per_tool[r.tool].size() > 1 ? r.tool + "/" + r.dataset_id
                                                : r.tool;
  };
  std::map<std::string, std::vector<const MetricsReport*>> by_type;
  for (const MetricsReport& r : reports) {
    by_type[VulnLabel(r.vuln_type)].push_back(&r);
  }
  std::string out;
  for (const auto& [type, members] : by_type) {
    std::vector<std::string> columns;
    std::set<std::string> chains;
    for (const MetricsReport* r : members) {
      if (std::find(columns.begin(), columns.end(), column(*r)) ==
          columns.end()) {
        columns.push_back(column(*r));
      }
      for (const auto& [chain, tally] : r->per_chain) {
        chains.insert(chain);
      }
    }
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header = {"chain"};
    header.insert(header.end(), columns.begin(), columns.end());
    rows.push_back(header);
    auto add_row = [&](const std::string& label, bool total) {
      std::vector<std::string> row = {label};
      for (const std::string& col : columns) {
        std::string cell = "-";
        for (const MetricsReport* r : members) {
          if (column(*r) != col) {
            continue;
          }
          if (total) {
            cell = Cell(r->total);
          } else if (auto it = r->per_chain.find(label);
                     it != r->per_chain.end()) {
            cell = Cell(it->second);
          }
        }
        row.push_back(cell);
      }
      rows.push_back(row);
    };
    for (const std::string& chain : chains) {
      add_row(chain, false);
    }
    add_row("total", true);
    if (!out.empty()) {
      out += "\n";
    }
    out += "[" + type + "]\n" + AlignColumns(rows);
  }
  return out;
}

std::string RenderComparison(const Comparison& comparison) {
  std::vector<std::vector<std::string>> rows = {
      {"group", "N", "n_FN", "r", "delta_r"}};
  for (const ComparisonRow& row : comparison.rows) {
    rows.push_back({row.group, std::to_string(row.tally.n),
                    std::to_string(row.tally.missed),
                    FormatRatio(row.tally.r()), FormatDelta(row.delta)});
  }
  return "[" + comparison.tool + " " + VulnLabel(comparison.vuln_type) + " " +
         std::string(ToString(comparison.axis)) + "]\n" + AlignColumns(rows);
}

}  // namespace solmorph
