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

#ifndef SOLMORPH_AST_H
#define SOLMORPH_AST_H

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

// Syntax tree for the subset of Solidity that the transform operators need.
//
// Nodes are immutable and shared: a rewrite builds new nodes along the path to
// the changed site and reuses everything else. Every node parsed from input
// carries `verbatim`, the exact source text it was parsed from; the printer
// emits that text unchanged, so untouched code keeps its original layout. A
// node built by a transform has an empty `verbatim` and is printed from its
// structure, fully parenthesized.

namespace solmorph {

struct Expr;
struct Stmt;
using ExprPtr = std::shared_ptr<const Expr>;
using StmtPtr = std::shared_ptr<const Stmt>;

// 1-based inclusive line range.
struct Span {
  int first_line = 0;
  int last_line = 0;

  bool Valid() const { return first_line > 0 && first_line <= last_line; }
};

enum class BinaryOp {
  kAdd,
  kSub,
  kMul,
  kDiv,
  kMod,
  kExp,
  kEq,
  kNe,
  kLt,
  kGt,
  kLe,
  kGe,
  kAnd,
  kOr,
  kBitAnd,
  kBitOr,
  kBitXor,
  kShl,
  kShr,
};

enum class UnaryOp {
  kNot,
  kNeg,
  kBitNot,
  kPreInc,
  kPreDec,
  kPostInc,
  kPostDec,
  kDelete,
};

std::string_view ToString(BinaryOp op);
std::string_view ToString(UnaryOp op);

struct Identifier {
  std::string name;
};

// Numbers (with an optional denomination such as `1 ether`), strings, hex
// strings, `true` and `false`.
struct Literal {
  std::string text;
};

struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Unary {
  UnaryOp op;
  ExprPtr operand;
};

// `op` is "=" or a compound assignment such as "+=".
struct Assign {
  std::string op;
  ExprPtr target;
  ExprPtr value;
};

struct MemberAccess {
  ExprPtr base;
  std::string member;
};

struct CallOption {
  std::string name;
  ExprPtr value;
};

// `f(a, b)`, `f({x: a})` (named arguments, `arg_names` non-empty) and
// `addr.call{value: v}(data)` (call options).
struct Call {
  ExprPtr callee;
  std::vector<CallOption> options;
  std::vector<ExprPtr> args;
  std::vector<std::string> arg_names;
};

// `index` is null for the type expression `T[]`.
struct Index {
  ExprPtr base;
  ExprPtr index;
};

struct Conditional {
  ExprPtr cond;
  ExprPtr then_value;
  ExprPtr else_value;
};

// Null elements are omitted components, as in `(a, , b)`.
struct Tuple {
  std::vector<ExprPtr> elements;
};

struct New {
  std::string type_name;
};

struct RawExpr {
  std::string text;
};

struct Expr {
  using Node = std::variant<Identifier, Literal, Binary, Unary, Assign,
                            MemberAccess, Call, Index, Conditional, Tuple, New,
                            RawExpr>;

  Node node;
  std::string verbatim;
  // True when `verbatim` is wrapped in a redundant pair of parentheses.
  bool parenthesized = false;

  template <typename T>
  const T* As() const {
    return std::get_if<T>(&node);
  }
  template <typename T>
  bool Is() const {
    return std::holds_alternative<T>(node);
  }
};

// A declared variable inside a VarDecl: `uint256 memory name`.
struct Declarator {
  std::string type;
  std::string location;  // "", "memory", "storage" or "calldata"
  std::string name;
};

struct Block {
  std::vector<StmtPtr> statements;
  std::string closing;  // trivia before the closing brace
};

struct If {
  ExprPtr cond;
  StmtPtr then_branch;
  StmtPtr else_branch;      // may be null
  std::string else_trivia;  // trivia before the `else` keyword
};

struct While {
  ExprPtr cond;
  StmtPtr body;
};

// `init` is a VarDecl or ExprStmt; any of init/cond/post may be null.
struct For {
  StmtPtr init;
  ExprPtr cond;
  ExprPtr post;
  StmtPtr body;
};

struct ExprStmt {
  ExprPtr expr;
};

// `uint a = 1;` or the tuple form `(bool ok, ) = f();` where a null
// declarator is an omitted component.
struct VarDecl {
  std::vector<std::optional<Declarator>> declarators;
  bool tuple = false;
  ExprPtr init;  // may be null
};

struct Return {
  ExprPtr value;  // may be null
};

struct Break {};
struct Continue {};

struct Emit {
  ExprPtr event;
};

struct RawStmt {
  std::string text;
};

struct Stmt {
  using Node = std::variant<Block, If, While, For, ExprStmt, VarDecl, Return,
                            Break, Continue, Emit, RawStmt>;

  Node node;
  // Trivia between the previous token and this statement. Empty for
  // statements created by a transform.
  std::string leading;
  std::string verbatim;
  Span span;

  template <typename T>
  const T* As() const {
    return std::get_if<T>(&node);
  }
  template <typename T>
  bool Is() const {
    return std::holds_alternative<T>(node);
  }
};

struct Param {
  std::string type;
  std::string name;  // empty when unnamed
};

// A text region that is kept byte-exact: pragmas, imports, events,
// modifiers, structs and anything else the subset grammar does not model.
struct RawRegion {
  std::string text;
  Span span;
};

struct FunctionDef {
  // Source text from `function` up to (not including) the body's `{`.
  std::string header;
  std::string name;
  std::vector<Param> params;
  std::vector<Param> returns;
  StmtPtr body;  // always a Block
  std::string verbatim;
  Span span;
};

struct StateVarDecl {
  std::string text;  // full declaration including the semicolon
  std::string type;
  std::string name;
  Span span;
};

struct Member {
  using Node = std::variant<FunctionDef, StateVarDecl, RawRegion>;

  Node node;
  std::string leading;

  Span span() const;
  template <typename T>
  const T* As() const {
    return std::get_if<T>(&node);
  }
};

enum class ContractKind { kContract, kAbstractContract, kLibrary, kInterface };

struct ContractDef {
  ContractKind kind = ContractKind::kContract;
  std::string name;
  std::string header;  // from the first keyword up to (not including) `{`
  std::vector<Member> members;
  std::string closing;  // trivia before the closing brace
  Span span;
  // Source text of the whole definition; cleared when members change.
  std::string verbatim;
};

struct TopLevelItem {
  std::variant<RawRegion, ContractDef> node;
  std::string leading;
};

struct SourceUnit {
  std::vector<TopLevelItem> items;
  std::string trailing;

  // Raw top-level regions that start with `pragma`.
  std::vector<std::string> Pragmas() const;
  std::vector<const ContractDef*> Contracts() const;
};

enum class FragmentKind { kFunctionLevel, kStatementLevel };

// A vulnerability snippet: contract members (function level) or function
// body statements (statement level), without an enclosing contract.
struct Fragment {
  FragmentKind kind = FragmentKind::kFunctionLevel;
  std::vector<Member> members;
  std::vector<StmtPtr> statements;
  std::string trailing;
};

// Construction helpers for transform-built nodes (empty verbatim).
ExprPtr MakeExpr(Expr::Node node);
StmtPtr MakeStmt(Stmt::Node node, std::string leading = {});
StmtPtr WithLeading(const StmtPtr& stmt, std::string leading);

}  // namespace solmorph

#endif  // SOLMORPH_AST_H
