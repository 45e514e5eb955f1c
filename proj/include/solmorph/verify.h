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

#ifndef SOLMORPH_VERIFY_H
#define SOLMORPH_VERIFY_H

#include <string>
#include <vector>

#include "solmorph/interpreter.h"
#include "solmorph/snippet.h"
#include "solmorph/transform.h"

namespace solmorph {

struct RewriteCheck {
  OperatorId rule = OperatorId::kPermutation;
  std::string before;
  std::string after;
  int width = 8;
  EquivalenceResult result;
};

// Outcome of checking one variant against its original snippet. A variant
// passes when `problems` is empty. Divergent rewrites of a rule that carries
// a soundness flag are reported in `rewrites` without being a problem.
struct VerifyReport {
  std::string snippet_id;
  std::string chain;
  std::set<SoundnessFlag> flags;
  std::vector<RewriteCheck> rewrites;
  std::vector<std::string> problems;
  std::vector<std::string> notes;

  bool Passed() const { return problems.empty(); }
  bool HasDivergence() const;
};

// Sweep width for `variables` free variables: 8 bits for up to two, then
// shrinking to keep the domain at 2^16 assignments.
int SweepWidth(std::size_t variables);

RewriteCheck CheckRewrite(const ExpressionRewrite& rewrite);

// Undoes the division rewrite (`1 / (x / y)` back to `y / x`) everywhere.
Fragment UndoDivisionRewrites(const Fragment& fragment);

// Checks every recorded expression rewrite by exhaustive sweep, renames by
// inverting them and looking for stale references, and every function body
// by normalized control-flow-graph equality with the original.
VerifyReport VerifyVariant(const Snippet& original, const Variant& variant);

}  // namespace solmorph

#endif  // SOLMORPH_VERIFY_H
