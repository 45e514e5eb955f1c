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

#ifndef SOLMORPH_VALIDATE_H
#define SOLMORPH_VALIDATE_H

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "solmorph/ast.h"

namespace solmorph {

struct Diagnostic {
  std::string severity;  // "error" or "warning"
  std::string message;
  int line = 0;  // 0 when unknown
};

struct ValidationOutcome {
  std::string file;
  bool syntax_ok = false;
  std::optional<bool> compile_ok;  // absent when no compiler ran
  std::vector<Diagnostic> diagnostics;

  bool Valid() const { return syntax_ok && compile_ok.value_or(true); }
};

// The injected lines of a generated file, 1-based inclusive.
struct SpliceLines {
  int first_line = 0;
  int last_line = 0;
  FragmentKind kind = FragmentKind::kFunctionLevel;
};

// Parses the text. With a splice, additionally requires that the injected
// lines sit inside a contract body (function level) or a function body
// (statement level) and that no member, statement or raw region crosses the
// splice boundary.
ValidationOutcome CheckSyntax(std::string file, std::string_view text,
                              const std::optional<SpliceLines>& splice = {});

struct CompilerConfig {
  // Shell command template; `{file}` is replaced by the quoted file path.
  std::string command;
  int timeout_secs = 30;
  int parallelism = 1;
  // Prints the compiler version; defaults to `<program> --version`.
  std::string version_command;

  bool Configured() const { return !command.empty(); }
};

// Applies the SOLMORPH_COMPILER environment override, if set.
CompilerConfig WithEnvironment(CompilerConfig config);

// The command line for one file.
std::string ExpandCommand(std::string_view command_template,
                          const std::filesystem::path& file);

// Runs the compiler on `file`. A missing compiler (shell status 127) and a
// timeout are recorded as error diagnostics and make the file invalid.
ValidationOutcome CompileCheck(const std::filesystem::path& file,
                               const CompilerConfig& config,
                               ValidationOutcome syntax);

// Last non-empty line of the version command's output, or nullopt.
std::optional<std::string> CompilerVersion(const CompilerConfig& config);

struct FileToValidate {
  std::filesystem::path path;
  std::optional<SpliceLines> splice;
};

// Syntax check and, when configured, compile check of every file on a pool
// of `config.parallelism` workers. Results are in input order.
std::vector<ValidationOutcome> ValidateFiles(
    const std::vector<FileToValidate>& files, const CompilerConfig& config);

}  // namespace solmorph

#endif  // SOLMORPH_VALIDATE_H
