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

#ifndef SOLMORPH_SNIPPET_H
#define SOLMORPH_SNIPPET_H

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "solmorph/ast.h"

namespace solmorph {

enum class VulnType {
  kReentrancy,
  kTimestampDependency,
  kOverflowUnderflow,
  kTxOrigin,
  kUncheckedSend,
  kUnhandledException,
  kTod,
};

inline constexpr VulnType kAllVulnTypes[] = {
    VulnType::kReentrancy,         VulnType::kTimestampDependency,
    VulnType::kOverflowUnderflow,  VulnType::kTxOrigin,
    VulnType::kUncheckedSend,      VulnType::kUnhandledException,
    VulnType::kTod,
};

// Snake-case tokens used in file layouts, manifests and config:
// reentrancy, timestamp_dependency, overflow_underflow, tx_origin,
// unchecked_send, unhandled_exception, tod.
std::string_view ToString(VulnType type);
std::optional<VulnType> ParseVulnType(std::string_view token);

std::string_view ToString(FragmentKind kind);
std::optional<FragmentKind> ParseFragmentKind(std::string_view token);

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Snippet {
  std::string id;
  VulnType vuln_type = VulnType::kReentrancy;
  FragmentKind kind = FragmentKind::kFunctionLevel;
  std::string source;
  Fragment fragment;
};

Snippet MakeSnippet(std::string id, VulnType type, FragmentKind kind,
                    std::string source);

// Reads `<id>.sol` and its sidecar `<id>.meta.json`.
Snippet LoadSnippet(const std::filesystem::path& sol_file);

// Every snippet under `dir/<vuln_type>/`, sorted by vuln type then id.
std::vector<Snippet> LoadCorpus(const std::filesystem::path& dir);

}  // namespace solmorph

#endif  // SOLMORPH_SNIPPET_H
