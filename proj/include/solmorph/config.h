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

#ifndef SOLMORPH_CONFIG_H
#define SOLMORPH_CONFIG_H

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "solmorph/evaluate.h"
#include "solmorph/inject.h"
#include "solmorph/transform.h"
#include "solmorph/validate.h"

namespace solmorph {

enum class ChainSet { kSingletons, kAllValid };
std::string_view ToString(ChainSet set);
std::optional<ChainSet> ParseChainSet(std::string_view token);

struct RunConfig {
  std::filesystem::path corpus_dir = "data/corpus";
  std::filesystem::path hosts_dir = "data/hosts";
  std::filesystem::path out_dir = "out";
  std::vector<std::string> operators = {"all"};
  ChainSet chains = ChainSet::kSingletons;
  bool include_default = true;
  InjectionMode mode = InjectionMode::kAllLocations;
  std::uint64_t seed = 0;
  int jobs = 1;
  ForFillStyle for_style = ForFillStyle::kTempVar;
  CompilerConfig compiler;
  std::map<std::string, ToolProfile> tools;
  // Detector report per tool, evaluated against the dataset in out_dir.
  std::map<std::string, std::filesystem::path> reports;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reads a TOML file over the defaults. Relative paths are taken relative to
// the file's directory.
RunConfig LoadConfig(const std::filesystem::path& file);
RunConfig ParseConfig(std::string_view toml,
                      const std::filesystem::path& base_dir = ".");

// The profile for `tool`: configured, else built in. Throws UnknownFormat.
ToolProfile ProfileFor(const RunConfig& config, const std::string& tool);

std::set<OperatorGroup> SelectedGroups(const std::vector<std::string>& tokens);

struct ChainPlan {
  std::vector<Chain> chains;  // the empty chain first when included
  std::vector<std::string> excluded;  // notes on rejected combinations
};

ChainPlan PlanChains(const RunConfig& config);

}  // namespace solmorph

#endif  // SOLMORPH_CONFIG_H
