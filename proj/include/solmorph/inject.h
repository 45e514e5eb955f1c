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

#ifndef SOLMORPH_INJECT_H
#define SOLMORPH_INJECT_H

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "solmorph/ast.h"
#include "solmorph/snippet.h"
#include "solmorph/transform.h"
#include "solmorph/validate.h"

namespace solmorph {

// A benign contract file that snippets are injected into.
struct Host {
  std::string name;  // file stem
  std::string text;
  SourceUnit unit;
};

Host MakeHost(std::string name, std::string text);
// Every `.sol` file in the directory, sorted by name.
std::vector<Host> LoadHosts(const std::filesystem::path& dir);

// A boundary between contract members (function level) or between the
// top-level statements of a function body (statement level). For statement
// level, `member_index` is the function's position among the contract
// members and `statement_index` the boundary; otherwise `statement_index` is
// -1.
struct InjectionLocation {
  std::string host_file;
  std::string contract;
  int member_index = 0;
  int statement_index = -1;

  bool operator==(const InjectionLocation&) const = default;
};

// Contracts and abstract contracts only; libraries and interfaces are
// skipped. A contract with m members yields m + 1 function-level locations.
std::vector<InjectionLocation> EnumerateLocations(const Host& host,
                                                  FragmentKind kind);

struct InjectionRecord {
  std::string generated_file;  // relative to the dataset directory
  std::string snippet_id;
  std::string chain;
  VulnType vuln_type = VulnType::kReentrancy;
  int start_line = 0;
  int end_line = 0;
  InjectionLocation location;
  bool valid = false;
  // Byte range of the inserted text in the generated file.
  std::size_t splice_offset = 0;
  std::size_t splice_length = 0;
  // Names of the variant renamed to avoid host names (new -> old).
  std::map<std::string, std::string> collision_renames;
  bool syntax_ok = false;
  std::optional<bool> compile_ok;
};

nlohmann::json ToJson(const InjectionRecord& record);
InjectionRecord RecordFromJson(const nlohmann::json& j);

class KindMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CollisionUnresolvable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Injection {
  std::string text;          // the generated file
  std::string variant_text;  // exactly the lines [start_line, end_line]
  InjectionRecord record;
};

// `<host-stem>__<snippet-id>__<chain>__loc<k>.sol`
std::string GeneratedFileName(const std::string& host,
                              const std::string& snippet_id,
                              const std::string& chain, int location);

// Names declared by the variant at contract level (functions, state
// variables, events, modifiers, structs, enums) or, for statement-level
// variants, its local variables.
std::vector<std::string> DeclaredNames(const Fragment& fragment);

// Renames every declared name of the variant that occurs in the host.
Variant ResolveCollisions(const Variant& variant, const Host& host,
                          std::uint64_t seed,
                          std::map<std::string, std::string>* renamed = nullptr);

// Splices the variant, indented to the surrounding code, at the location.
// The host text is otherwise unchanged.
Injection Inject(const Host& host, const Variant& variant,
                 const InjectionLocation& location, int location_ordinal,
                 std::uint64_t seed = 0);

enum class InjectionMode { kAllLocations, kSingleLocation };
std::string_view ToString(InjectionMode mode);
std::optional<InjectionMode> ParseInjectionMode(std::string_view token);

struct DatasetOptions {
  InjectionMode mode = InjectionMode::kAllLocations;
  std::uint64_t seed = 0;
  int jobs = 1;
  CompilerConfig compiler;
};

struct Dataset {
  std::vector<InjectionRecord> records;
  std::string validation;  // "compiled" or "syntax-validated only"
  std::optional<std::string> compiler_version;
};

// Generates `<out_dir>/contracts/*.sol`, validates each file and writes
// `manifest.jsonl`, `manifest.csv` and `dataset.json` into `out_dir`.
// Records are ordered by host, then variant order, then location.
Dataset GenerateDataset(const std::vector<Host>& hosts,
                        const std::vector<Variant>& variants,
                        const DatasetOptions& options,
                        const std::filesystem::path& out_dir);

std::vector<InjectionRecord> ReadManifest(const std::filesystem::path& jsonl);

}  // namespace solmorph

#endif  // SOLMORPH_INJECT_H
