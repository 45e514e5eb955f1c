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

#ifndef SOLMORPH_INTERPRETER_H
#define SOLMORPH_INTERPRETER_H

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "solmorph/ast.h"

namespace solmorph {

// Small-domain evaluation of expressions over unsigned integers of a fixed
// bit width. Subterms that are not arithmetic (identifiers, member accesses,
// index expressions, calls, ...) are free variables keyed by their canonical
// text.

enum class Semantics { kWrap, kChecked };

struct Value {
  enum class Kind : std::uint8_t { kInt, kBool, kDivByZero, kOverflow };
  Kind kind = Kind::kInt;
  std::uint64_t bits = 0;

  static Value Int(std::uint64_t v) { return {Kind::kInt, v}; }
  static Value Bool(bool b) { return {Kind::kBool, b ? 1u : 0u}; }
  static Value Signal(Kind k) { return {k, 0}; }
  bool IsSignal() const {
    return kind == Kind::kDivByZero || kind == Kind::kOverflow;
  }
  bool operator==(const Value&) const = default;
};

std::string ToString(const Value& value);

struct EvalEnv {
  int width = 8;
  Semantics semantics = Semantics::kWrap;
  std::map<std::string, std::uint64_t> bindings;
};

// Side information of one evaluation.
struct EvalTrace {
  bool truncated = false;    // a division or modulo discarded a remainder
  bool div_by_zero = false;
};

class UnboundIdentifier : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> FreeVariables(const ExprPtr& expr);

Value EvalExpr(const ExprPtr& expr, const EvalEnv& env,
               EvalTrace* trace = nullptr);

struct EquivalenceResult {
  bool equal = true;
  std::vector<std::string> variables;  // sorted free variables of both sides
  std::uint64_t cases = 0;
  std::uint64_t divergent = 0;
  // Divergent assignments in sweep order, one value per variable; at most
  // `max_witnesses` are kept.
  std::vector<std::vector<std::uint64_t>> witnesses;

  bool HasWitness(const std::map<std::string, std::uint64_t>& assignment) const;
};

inline constexpr int kMaxSweepBits = 24;

// Exhaustive sweep over every assignment of the free variables. Throws
// DomainTooLarge when variables * width exceeds kMaxSweepBits.
EquivalenceResult EquivalentExprs(const ExprPtr& lhs, const ExprPtr& rhs,
                                  int width = 8,
                                  Semantics semantics = Semantics::kWrap,
                                  std::size_t max_witnesses = SIZE_MAX);

}  // namespace solmorph

#endif  // SOLMORPH_INTERPRETER_H
