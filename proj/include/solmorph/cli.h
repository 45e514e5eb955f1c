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

#ifndef SOLMORPH_CLI_H
#define SOLMORPH_CLI_H

#include <ostream>
#include <string>
#include <vector>

namespace solmorph {

// Entry point of the `solmorph` tool; `args` excludes the program name.
// Returns the process exit code. Errors are reported as one line on `err`:
//   solmorph: error: <category>: <message>
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace solmorph

#endif  // SOLMORPH_CLI_H
