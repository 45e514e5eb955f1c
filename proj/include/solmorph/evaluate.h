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

#ifndef SOLMORPH_EVALUATE_H
#define SOLMORPH_EVALUATE_H

#include <boost/rational.hpp>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "solmorph/inject.h"
#include "solmorph/snippet.h"

namespace solmorph {

using Ratio = boost::rational<std::int64_t>;

// Rounded half up to three decimals: 131/1235 -> "0.106".
std::string FormatRatio(const Ratio& r);
// With an explicit sign: "+0.006", "-0.100", "0.000".
std::string FormatDelta(const Ratio& r);

struct Finding {
  std::string tool;
  std::string check_id;
  std::string file;
  int line_start = 0;
  int line_end = 0;
  std::optional<VulnType> mapped_vuln_type;
};

enum class ReportFormat { kNormalized, kSlitherJson, kMythrilJson };
std::string_view ToString(ReportFormat format);
std::optional<ReportFormat> ParseReportFormat(std::string_view token);

struct ToolProfile {
  std::string name;
  ReportFormat format = ReportFormat::kNormalized;
  std::map<std::string, VulnType> mapping;
};

// Built-in profiles for `slither`, `mythril` and `normalized`. The
// normalized profile maps the seven vulnerability tokens to themselves.
ToolProfile DefaultProfile(std::string_view tool);

class UnknownFormat : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedReport : public std::runtime_error {
 public:
  MalformedReport(std::size_t byte, const std::string& message);
  std::size_t byte() const { return byte_; }

 private:
  std::size_t byte_;
};

class EmptyDataset : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingBaseline : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedFindings {
  std::vector<Finding> findings;
  std::vector<std::string> warnings;  // issues without a usable source span
};

LoadedFindings ParseFindings(std::string_view text, const ToolProfile& profile);
LoadedFindings LoadFindings(const std::filesystem::path& report,
                            const ToolProfile& profile);

// Same file (compared by base name), same mapped type, overlapping lines.
bool Matches(const InjectionRecord& record, const Finding& finding);

enum class Outcome { kDetected, kMissed };

// One outcome per valid record, in record order.
std::vector<Outcome> Match(const std::vector<InjectionRecord>& records,
                           const std::vector<Finding>& findings);

struct Tally {
  std::int64_t n = 0;
  std::int64_t missed = 0;

  Ratio r() const { return Ratio(missed, n); }
};

struct MetricsReport {
  std::string dataset_id;
  std::string tool;
  std::optional<VulnType> vuln_type;  // absent when records mix types
  std::optional<InjectionMode> mode;
  Tally total;
  std::map<std::string, Tally> per_chain;
  // Findings that matched no record, and findings with an unmapped check.
  std::vector<Finding> unmatched;
  std::vector<Finding> unmapped;
  std::vector<std::string> warnings;

  Ratio r() const { return total.r(); }
};

// Over the valid records. Throws EmptyDataset when there are none.
MetricsReport ComputeRatio(const std::vector<InjectionRecord>& records,
                           const std::vector<Finding>& findings);

// One report per vulnerability type present among the valid records.
std::vector<MetricsReport> Evaluate(const std::vector<InjectionRecord>& records,
                                    const std::vector<Finding>& findings,
                                    const std::string& tool,
                                    const std::string& dataset_id);

enum class CompareAxis { kOperatorVsDefault, kAllVsSingleLocation };
std::string_view ToString(CompareAxis axis);

struct ComparisonRow {
  std::string group;
  Tally tally;
  Ratio delta;
};

struct Comparison {
  CompareAxis axis = CompareAxis::kOperatorVsDefault;
  std::string tool;
  std::optional<VulnType> vuln_type;
  std::string baseline;
  std::vector<ComparisonRow> rows;  // baseline first
};

// OperatorVsDefault: one table per report, rows per chain against the
// `default` chain. AllVsSingleLocation: reports are grouped by tool and
// vulnerability type; the single-location report of each group is the
// baseline.
std::vector<Comparison> Compare(const std::vector<MetricsReport>& reports,
                                CompareAxis axis);

nlohmann::json ToJson(const Finding& finding);
nlohmann::json ToJson(const MetricsReport& report);
nlohmann::json ToJson(const Comparison& comparison);

// Chains as rows, tools as columns, one block per vulnerability type; each
// cell is `missed/N r`.
std::string RenderTable(const std::vector<MetricsReport>& reports);
std::string RenderComparison(const Comparison& comparison);

}  // namespace solmorph

#endif  // SOLMORPH_EVALUATE_H
