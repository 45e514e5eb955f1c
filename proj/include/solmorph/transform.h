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

#ifndef SOLMORPH_TRANSFORM_H
#define SOLMORPH_TRANSFORM_H

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "solmorph/ast.h"
#include "solmorph/snippet.h"

namespace solmorph {

// Concrete rewrite rules. The four permutation rules form one user-facing
// operator.
enum class OperatorId {
  kRenameVariable,
  kRenameFunction,
  kPermutation,  // operand swap of +, * and ==
  kSubtraction,  // a - b  =>  -(b - a)
  kDivision,     // a / b  =>  1 / (b / a)
  kUnequal,      // negated mirror of !=, <, >, <=, >=
  kIfSwap,
  kIfToFor,
  kIfToWhile,
  kTxOriginPassing,
};

std::string_view ToString(OperatorId id);

// User-facing operators, declared in canonical application order:
// statement operators, then tx.origin passing, then permutations, then
// renames (so fresh names account for every introduced temporary).
enum class OperatorGroup {
  kIfSwap,
  kIfToFor,
  kIfToWhile,
  kTxPassing,
  kPermutation,
  kRenameVariable,
  kRenameFunction,
};

inline constexpr OperatorGroup kAllGroups[] = {
    OperatorGroup::kIfSwap,         OperatorGroup::kIfToFor,
    OperatorGroup::kIfToWhile,      OperatorGroup::kTxPassing,
    OperatorGroup::kPermutation,    OperatorGroup::kRenameVariable,
    OperatorGroup::kRenameFunction,
};

// if_swap, if2for, if2while, tx_passing, permutation, rename_var, rename_fn.
std::string_view ToString(OperatorGroup group);
// Also accepts `rename`, which expands to both rename operators.
std::vector<OperatorGroup> ParseGroupToken(std::string_view token);
OperatorGroup GroupOf(OperatorId id);
std::vector<OperatorId> RulesOf(OperatorGroup group);

using Chain = std::vector<OperatorGroup>;

// Operators joined by '+', or "default" for the empty chain.
std::string ChainToken(const Chain& chain);
std::optional<Chain> ParseChainToken(std::string_view token);

enum class SoundnessFlag { kIntegerDivisionRisk, kCheckedArithmeticRisk };
std::string_view ToString(SoundnessFlag flag);

enum class ForFillStyle { kTempVar, kEmptyEmpty };

class NotApplicable : public std::runtime_error {
 public:
  explicit NotApplicable(std::string operation);
};

class InvalidChain : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One expression site rewritten by a permutation rule; `before` is the
// original subtree and `after` its replacement.
struct ExpressionRewrite {
  OperatorId rule;
  ExprPtr before;
  ExprPtr after;
};

struct Variant {
  std::string snippet_id;
  VulnType vuln_type = VulnType::kReentrancy;
  Chain chain;
  Fragment fragment;
  std::set<OperatorId> rules;
  std::set<SoundnessFlag> flags;
  std::uint64_t seed = 0;
  std::vector<ExpressionRewrite> rewrites;
  // Fresh name -> original name, for every rename applied.
  std::map<std::string, std::string> renames;
};

struct TransformOptions {
  std::uint64_t seed = 0;
  ForFillStyle for_style = ForFillStyle::kTempVar;
};

// Site-level rewrites. Each throws NotApplicable when the node does not have
// the required shape.
ExprPtr PermuteCommutative(const ExprPtr& expr);
ExprPtr PermuteSubtraction(const ExprPtr& expr);
ExprPtr PermuteDivision(const ExprPtr& expr);
ExprPtr PermuteOrdering(const ExprPtr& expr);
StmtPtr SwapIfBranches(const StmtPtr& stmt);
StmtPtr IfToWhile(const StmtPtr& stmt);
// `counter` names the TempVar loop variable; unused for EmptyEmpty.
StmtPtr IfToFor(const StmtPtr& stmt, ForFillStyle style,
                const std::string& counter);

// The permutation rule for `expr`, if it is a rewritable site: a binary
// expression with a matching operator, at most one operand of which has side
// effects.
std::optional<OperatorId> PermutationRuleFor(const Expr& expr);

bool Applicable(OperatorId id, const Fragment& fragment);
bool Applicable(OperatorGroup group, const Fragment& fragment);

// Fragment-level operators. Statement and permutation operators rewrite every
// applicable site in one post-order pass over the original nodes.
Variant ApplyOperator(const Variant& input, OperatorGroup group,
                      const TransformOptions& options);

// The untransformed variant of a snippet.
Variant Identity(const Snippet& snippet, std::uint64_t seed = 0);

// Applies the chain in the listed order. Throws InvalidChain for repeated
// operators or if2for together with if2while, and NotApplicable naming the
// first operator without a rewrite site at its turn.
Variant ApplyChain(const Snippet& snippet, const Chain& chain,
                   const TransformOptions& options = {});

bool IsValidChain(const Chain& chain);

// Every non-empty subset of `available` that is a valid chain, each in
// canonical order; ordered by size, then lexicographically.
std::vector<Chain> EnumerateValidChains(
    const std::set<OperatorGroup>& available);

}  // namespace solmorph

#endif  // SOLMORPH_TRANSFORM_H
