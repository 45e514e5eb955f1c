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

#ifndef SOLMORPH_IDENTIFIERS_H
#define SOLMORPH_IDENTIFIERS_H

#include <cstdint>
#include <set>
#include <string>
#include <string_view>

#include "solmorph/ast.h"

namespace solmorph {

// Keywords, reserved words and global names that a generated identifier must
// never take.
bool IsReservedWord(std::string_view word);

bool IsValidIdentifier(std::string_view word);

// Deterministic fresh names: `prefix` followed by a counter, with a suffix
// derived from `seed` when the seed is non-zero (seed 0 yields v_0, v_1, ...).
class NameGenerator {
 public:
  explicit NameGenerator(std::string prefix = "v_", std::uint64_t seed = 0);

  // The first candidate that is neither forbidden, reserved, nor previously
  // returned by this generator.
  std::string Fresh(const std::set<std::string>& forbidden);

 private:
  std::string Candidate(std::uint64_t n) const;

  std::string prefix_;
  std::string seed_tag_;
  std::uint64_t next_ = 0;
  std::set<std::string> issued_;
};

std::string FreshIdentifier(const std::set<std::string>& forbidden,
                            std::string_view prefix = "v_",
                            std::uint64_t seed = 0);

// Every identifier token in the text (keywords included).
std::set<std::string> CollectIdentifiers(std::string_view text);
std::set<std::string> CollectIdentifiers(const Fragment& fragment);
std::set<std::string> CollectIdentifiers(const SourceUnit& unit);

}  // namespace solmorph

#endif  // SOLMORPH_IDENTIFIERS_H
