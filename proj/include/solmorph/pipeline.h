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

#ifndef SOLMORPH_PIPELINE_H
#define SOLMORPH_PIPELINE_H

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "solmorph/config.h"
#include "solmorph/evaluate.h"
#include "solmorph/inject.h"
#include "solmorph/transform.h"
#include "solmorph/verify.h"

namespace solmorph {

enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitVerify = 3 };

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Timestamped progress lines, appended to `<out_dir>/run.log`. The only
// place where wall-clock time and host details are written.
class RunLog {
 public:
  explicit RunLog(const std::filesystem::path& out_dir);
  void Line(const std::string& message);

 private:
  std::ofstream out_;
};

// Variants on disk: `<dir>/<vuln_type>/<id>__<chain>.sol` with a
// `.meta.json` sidecar carrying everything the oracle needs.
nlohmann::json VariantMeta(const Variant& variant, FragmentKind kind);
std::filesystem::path WriteVariant(const Variant& variant, FragmentKind kind,
                                   const std::filesystem::path& dir);
Variant LoadVariant(const std::filesystem::path& sol_file);
std::vector<Variant> LoadVariants(const std::filesystem::path& dir);

struct TransformSummary {
  int variants = 0;   // excluding untransformed baselines
  int baselines = 0;
  int failures = 0;
  nlohmann::json index;
};

// Writes `<out_dir>/variants/`. Throws DataError when nothing is produced.
TransformSummary CmdTransform(const RunConfig& config, RunLog& log);

struct VerifySummary {
  int checked = 0;
  int failed = 0;
  int flagged = 0;
  nlohmann::json report;
};

// Checks every variant under `<out_dir>/variants/` against its original and
// writes `<out_dir>/verify.json`.
VerifySummary CmdVerify(const RunConfig& config, RunLog& log);

// Injects every variant into every host; writes the dataset into out_dir.
Dataset CmdInject(const RunConfig& config, RunLog& log);

struct EvaluateSummary {
  std::vector<MetricsReport> reports;
  std::vector<Comparison> comparisons;
  std::string text;
};

// Scores each configured report against each dataset directory and writes
// `metrics.json` and `metrics.txt` to `out`.
EvaluateSummary CmdEvaluate(const RunConfig& config,
                            const std::vector<std::filesystem::path>& datasets,
                            const std::filesystem::path& out, RunLog& log);

}  // namespace solmorph

#endif  // SOLMORPH_PIPELINE_H
