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

#include "solmorph/config.h"

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include <fstream>
#include <sstream>

namespace solmorph {
namespace {

std::filesystem::path Resolve(const std::filesystem::path& base,
                              const std::string& value) {
  std::filesystem::path p(value);
  return p.is_absolute() ? p : base / p;
}

std::vector<std::string> StringList(const toml::node& node,
                                    const std::string& key) {
  std::vector<std::string> out;
  if (auto s = node.value<std::string>()) {
    std::stringstream in(*s);
    for (std::string item; std::getline(in, item, ',');) {
      if (!item.empty()) {
        out.push_back(item);
      }
    }
    return out;
  }
  const toml::array* array = node.as_array();
  if (array == nullptr) {
    throw ConfigError(key + " must be a string or an array of strings");
  }
  for (const toml::node& item : *array) {
    auto s = item.value<std::string>();
    if (!s) {
      throw ConfigError(key + " must contain only strings");
    }
    out.push_back(*s);
  }
  return out;
}

template <class T>
std::optional<T> Get(const toml::table& table, const std::string& key) {
  const toml::node* node = table.get(key);
  if (node == nullptr) {
    return std::nullopt;
  }
  auto value = node->value<T>();
  if (!value) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
  return value;
}

ToolProfile ParseTool(const std::string& name, const toml::table& table) {
  ToolProfile profile;
  try {
    profile = DefaultProfile(name);
  } catch (const UnknownFormat&) {
    profile.name = name;
    if (!table.contains("format")) {
      throw ConfigError("tool." + name + ".format is required");
    }
  }
  if (auto format = Get<std::string>(table, "format")) {
    auto parsed = ParseReportFormat(*format);
    if (!parsed) {
      throw UnknownFormat("unknown report format '" + *format + "'");
    }
    profile.format = *parsed;
  }
  if (const toml::table* mapping = table["mapping"].as_table()) {
    for (const auto& [check, node] : *mapping) {
      auto token = node.value<std::string>();
      auto type = token ? ParseVulnType(*token) : std::nullopt;
      if (!type) {
        throw ConfigError("tool." + name + ".mapping." +
                          std::string(check.str()) +
                          " is not a vulnerability type");
      }
      profile.mapping[std::string(check.str())] = *type;
    }
  }
  return profile;
}

}  // namespace

std::string_view ToString(ChainSet set) {
  return set == ChainSet::kSingletons ? "singletons" : "all_valid";
}

std::optional<ChainSet> ParseChainSet(std::string_view token) {
  if (token == "singletons") {
    return ChainSet::kSingletons;
  }
  if (token == "all_valid") {
    return ChainSet::kAllValid;
  }
  return std::nullopt;
}

RunConfig ParseConfig(std::string_view text,
                      const std::filesystem::path& base_dir) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "config line " << e.source().begin.line << ": " << e.description();
    throw ConfigError(msg.str());
  }
  RunConfig config;
  if (auto v = Get<std::string>(root, "corpus_dir")) {
    config.corpus_dir = Resolve(base_dir, *v);
  }
  if (auto v = Get<std::string>(root, "hosts_dir")) {
    config.hosts_dir = Resolve(base_dir, *v);
  }
  if (auto v = Get<std::string>(root, "out_dir")) {
    config.out_dir = Resolve(base_dir, *v);
  }
  if (const toml::node* ops = root.get("operators")) {
    config.operators = StringList(*ops, "operators");
  }
  if (auto v = Get<std::string>(root, "chains")) {
    auto set = ParseChainSet(*v);
    if (!set) {
      throw ConfigError("chains must be singletons or all_valid");
    }
    config.chains = *set;
  }
  if (auto v = Get<bool>(root, "include_default")) {
    config.include_default = *v;
  }
  if (auto v = Get<std::string>(root, "mode")) {
    auto mode = ParseInjectionMode(*v);
    if (!mode) {
      throw ConfigError("mode must be all_locations or single_location");
    }
    config.mode = *mode;
  }
  if (auto v = Get<std::int64_t>(root, "seed")) {
    config.seed = static_cast<std::uint64_t>(*v);
  }
  if (auto v = Get<std::int64_t>(root, "jobs")) {
    config.jobs = static_cast<int>(*v);
  }
  if (auto v = Get<std::string>(root, "for_style")) {
    if (*v == "temp_var") {
      config.for_style = ForFillStyle::kTempVar;
    } else if (*v == "empty_empty") {
      config.for_style = ForFillStyle::kEmptyEmpty;
    } else {
      throw ConfigError("for_style must be temp_var or empty_empty");
    }
  }
  if (const toml::table* compiler = root["compiler"].as_table()) {
    config.compiler.command =
        Get<std::string>(*compiler, "command").value_or("");
    config.compiler.version_command =
        Get<std::string>(*compiler, "version_command").value_or("");
    config.compiler.timeout_secs = static_cast<int>(
        Get<std::int64_t>(*compiler, "timeout_secs").value_or(30));
    config.compiler.parallelism = static_cast<int>(
        Get<std::int64_t>(*compiler, "parallelism").value_or(1));
  }
  if (const toml::table* tools = root["tool"].as_table()) {
    for (const auto& [name, node] : *tools) {
      const toml::table* table = node.as_table();
      if (table == nullptr) {
        throw ConfigError("tool." + std::string(name.str()) +
                          " must be a table");
      }
      config.tools[std::string(name.str())] =
          ParseTool(std::string(name.str()), *table);
    }
  }
  if (const toml::table* reports = root["reports"].as_table()) {
    for (const auto& [name, node] : *reports) {
      auto path = node.value<std::string>();
      if (!path) {
        throw ConfigError("reports." + std::string(name.str()) +
                          " must be a path");
      }
      config.reports[std::string(name.str())] = Resolve(base_dir, *path);
    }
  }
  if (config.jobs < 1) {
    throw ConfigError("jobs must be at least 1");
  }
  return config;
}

RunConfig LoadConfig(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot read config " + file.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::filesystem::path base = file.parent_path();
  return ParseConfig(buffer.str(), base.empty() ? "." : base);
}

ToolProfile ProfileFor(const RunConfig& config, const std::string& tool) {
  auto it = config.tools.find(tool);
  return it != config.tools.end() ? it->second : DefaultProfile(tool);
}

std::set<OperatorGroup> SelectedGroups(const std::vector<std::string>& tokens) {
  std::set<OperatorGroup> out;
  for (const std::string& token : tokens) {
    if (token == "all") {
      out.insert(std::begin(kAllGroups), std::end(kAllGroups));
      continue;
    }
    std::vector<OperatorGroup> groups = ParseGroupToken(token);
    if (groups.empty()) {
      throw ConfigError("unknown operator '" + token + "'");
    }
    out.insert(groups.begin(), groups.end());
  }
  if (out.empty()) {
    throw ConfigError("no operators selected");
  }
  return out;
}

ChainPlan PlanChains(const RunConfig& config) {
  std::set<OperatorGroup> groups = SelectedGroups(config.operators);
  ChainPlan plan;
  if (config.include_default) {
    plan.chains.push_back({});
  }
  if (config.chains == ChainSet::kSingletons) {
    for (OperatorGroup g : kAllGroups) {
      if (groups.contains(g)) {
        plan.chains.push_back({g});
      }
    }
    return plan;
  }
  if (groups.contains(OperatorGroup::kIfToFor) &&
      groups.contains(OperatorGroup::kIfToWhile)) {
    plan.excluded.push_back(
        "chains combining if2for and if2while are excluded");
  }
  for (Chain& chain : EnumerateValidChains(groups)) {
    plan.chains.push_back(std::move(chain));
  }
  return plan;
}

}  // namespace solmorph
