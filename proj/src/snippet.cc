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

#include "solmorph/snippet.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "solmorph/lexer.h"
#include "solmorph/parser.h"

namespace solmorph {
namespace {

std::string Slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw CorpusError("cannot read " + path.string());
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string_view ToString(VulnType type) {
  switch (type) {
    case VulnType::kReentrancy:
      return "reentrancy";
    case VulnType::kTimestampDependency:
      return "timestamp_dependency";
    case VulnType::kOverflowUnderflow:
      return "overflow_underflow";
    case VulnType::kTxOrigin:
      return "tx_origin";
    case VulnType::kUncheckedSend:
      return "unchecked_send";
    case VulnType::kUnhandledException:
      return "unhandled_exception";
    case VulnType::kTod:
      return "tod";
  }
  return "";
}

std::optional<VulnType> ParseVulnType(std::string_view token) {
  for (VulnType type : kAllVulnTypes) {
    if (ToString(type) == token) {
      return type;
    }
  }
  return std::nullopt;
}

std::string_view ToString(FragmentKind kind) {
  return kind == FragmentKind::kFunctionLevel ? "function" : "statement";
}

std::optional<FragmentKind> ParseFragmentKind(std::string_view token) {
  if (token == "function" || token == "function_level") {
    return FragmentKind::kFunctionLevel;
  }
  if (token == "statement" || token == "statement_level") {
    return FragmentKind::kStatementLevel;
  }
  return std::nullopt;
}

Snippet MakeSnippet(std::string id, VulnType type, FragmentKind kind,
                    std::string source) {
  Snippet s;
  s.id = std::move(id);
  s.vuln_type = type;
  s.kind = kind;
  s.source = std::move(source);
  s.fragment = ParseFragment(s.source, kind);
  return s;
}

Snippet LoadSnippet(const std::filesystem::path& sol_file) {
  std::filesystem::path meta_file = sol_file;
  meta_file.replace_extension(".meta.json");
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(Slurp(meta_file));
  } catch (const nlohmann::json::exception& e) {
    throw CorpusError(meta_file.string() + ": " + e.what());
  }
  std::string id = meta.value("id", sol_file.stem().string());
  auto type = ParseVulnType(meta.value("vuln_type", ""));
  if (!type) {
    throw CorpusError(meta_file.string() + ": unknown vuln_type");
  }
  auto kind = ParseFragmentKind(meta.value("kind", "function"));
  if (!kind) {
    throw CorpusError(meta_file.string() + ": unknown kind");
  }
  try {
    return MakeSnippet(id, *type, *kind, Slurp(sol_file));
  } catch (const ParseError& e) {
    throw CorpusError(sol_file.string() + ":" + std::to_string(e.line()) +
                      ": " + e.what());
  }
}

std::vector<Snippet> LoadCorpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw CorpusError("corpus directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".sol") {
      files.push_back(entry.path());
    }
  }
  std::vector<Snippet> out;
  for (const auto& file : files) {
    out.push_back(LoadSnippet(file));
  }
  std::sort(out.begin(), out.end(), [](const Snippet& a, const Snippet& b) {
    if (a.vuln_type != b.vuln_type) {
      return a.vuln_type < b.vuln_type;
    }
    return a.id < b.id;
  });
  return out;
}

}  // namespace solmorph
