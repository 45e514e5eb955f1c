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

#include "solmorph/transform.h"

#include <algorithm>
#include <functional>

#include "solmorph/identifiers.h"
#include "solmorph/lexer.h"
#include "solmorph/printer.h"
#include "solmorph/substitution.h"
#include "solmorph/syntax_utils.h"

namespace solmorph {
namespace {

bool HasNewline(std::string_view trivia) {
  return trivia.find('\n') != std::string_view::npos;
}

// Leading trivia for a statement that moves after an inserted sibling: the
// same indentation, without any comments that belonged to the original line.
std::string LineLead(std::string_view leading) {
  return HasNewline(leading) ? "\n" + IndentOf(leading) : std::string(leading);
}

bool IsConstant(const ExprPtr& e) {
  if (e->Is<Literal>()) {
    return true;
  }
  if (const auto* b = e->As<Binary>()) {
    return IsConstant(b->lhs) && IsConstant(b->rhs);
  }
  if (const auto* u = e->As<Unary>()) {
    return u->op == UnaryOp::kNeg && IsConstant(u->operand);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Permutation family

ExprPtr PermuteAll(const ExprPtr& e, std::vector<ExpressionRewrite>& log) {
  ExprPtr rebuilt =
      MapChildren(e, [&](const ExprPtr& child) { return PermuteAll(child, log); });
  std::optional<OperatorId> rule = PermutationRuleFor(*e);
  if (!rule) {
    return rebuilt;
  }
  ExprPtr out;
  switch (*rule) {
    case OperatorId::kPermutation:
      out = PermuteCommutative(rebuilt);
      break;
    case OperatorId::kSubtraction:
      out = PermuteSubtraction(rebuilt);
      break;
    case OperatorId::kDivision:
      out = PermuteDivision(rebuilt);
      break;
    default:
      out = PermuteOrdering(rebuilt);
      break;
  }
  log.push_back({*rule, e, out});
  return out;
}

// ---------------------------------------------------------------------------
// if-to-loop

StmtPtr LoopBody(const StmtPtr& then_branch) {
  std::vector<StmtPtr> statements;
  std::string closing;
  std::string leading = " ";
  if (const auto* block = then_branch->As<Block>()) {
    statements = block->statements;
    closing = block->closing;
    leading = then_branch->leading.empty() ? " " : then_branch->leading;
  } else {
    statements.push_back(WithLeading(then_branch, ""));
  }
  std::string break_lead;
  if (!statements.empty() && HasNewline(statements.back()->leading)) {
    break_lead = LineLead(statements.back()->leading);
  }
  statements.push_back(MakeStmt(Break{}, break_lead));
  return MakeStmt(Block{std::move(statements), closing}, leading);
}

bool LoopConvertible(const Stmt& s) {
  const auto* if_stmt = s.As<If>();
  return if_stmt != nullptr && !if_stmt->else_branch &&
         !HasEscapingJump(if_stmt->then_branch);
}

// ---------------------------------------------------------------------------
// tx.origin passing

StmtPtr OriginDecl(const std::string& name, std::string leading) {
  Declarator d{"address", "", name};
  ExprPtr origin = MakeExpr(MemberAccess{MakeExpr(Identifier{"tx"}), "origin"});
  return MakeStmt(VarDecl{{d}, false, origin}, std::move(leading));
}

bool OwnHasTxOrigin(const Stmt& s) {
  for (const ExprPtr& e : OwnExprs(s)) {
    if (ContainsTxOrigin(e)) {
      return true;
    }
  }
  return false;
}

class TxPasser {
 public:
  TxPasser(NameGenerator& names, const std::set<std::string>& forbidden)
      : names_(names), forbidden_(forbidden) {}

  StmtPtr Run(const StmtPtr& s) {
    if (const auto* block = s->As<Block>()) {
      std::vector<StmtPtr> out;
      bool changed = false;
      for (const StmtPtr& child : block->statements) {
        StmtPtr c = Run(child);
        changed = changed || c != child;
        if (OwnHasTxOrigin(*c)) {
          std::string name = names_.Fresh(forbidden_);
          out.push_back(OriginDecl(name, c->leading));
          out.push_back(Pass(WithLeading(c, LineLead(c->leading)), name));
          changed = true;
        } else {
          out.push_back(c);
        }
      }
      if (!changed) {
        return s;
      }
      return Rebuild(s, Block{std::move(out), block->closing});
    }
    if (const auto* n = s->As<If>()) {
      StmtPtr then_branch = Branch(n->then_branch);
      StmtPtr else_branch = n->else_branch ? Branch(n->else_branch) : nullptr;
      if (then_branch == n->then_branch && else_branch == n->else_branch) {
        return s;
      }
      return Rebuild(s, If{n->cond, then_branch, else_branch, n->else_trivia});
    }
    if (const auto* n = s->As<While>()) {
      StmtPtr body = Branch(n->body);
      return body == n->body ? s : Rebuild(s, While{n->cond, body});
    }
    if (const auto* n = s->As<For>()) {
      StmtPtr body = Branch(n->body);
      return body == n->body ? s
                             : Rebuild(s, For{n->init, n->cond, n->post, body});
    }
    return s;
  }

  int sites() const { return sites_; }

 private:
  StmtPtr Pass(const StmtPtr& s, const std::string& name) {
    ++sites_;
    Substitution subst;
    subst.tx_origin = name;
    return Substitute(s, subst);
  }

  // A non-block branch that reads tx.origin becomes a block holding the
  // declaration and the rewritten statement.
  StmtPtr Branch(const StmtPtr& branch) {
    StmtPtr b = Run(branch);
    if (b->Is<Block>() || !OwnHasTxOrigin(*b)) {
      return b;
    }
    std::string name = names_.Fresh(forbidden_);
    std::vector<StmtPtr> statements = {OriginDecl(name, ""),
                                       Pass(WithLeading(b, ""), name)};
    return MakeStmt(Block{std::move(statements), ""}, " ");
  }

  NameGenerator& names_;
  const std::set<std::string>& forbidden_;
  int sites_ = 0;
};

// ---------------------------------------------------------------------------
// Renames

std::vector<std::string> DeclaredVariables(const Fragment& fragment) {
  std::vector<std::string> out;
  auto add = [&](const std::string& name) {
    if (!name.empty() &&
        std::find(out.begin(), out.end(), name) == out.end()) {
      out.push_back(name);
    }
  };
  auto add_locals = [&](const StmtPtr& body) {
    VisitStmts(body, [&](const Stmt& s) {
      if (const auto* decl = s.As<VarDecl>()) {
        for (const auto& d : decl->declarators) {
          if (d) {
            add(d->name);
          }
        }
      }
    });
  };
  for (const Member& m : fragment.members) {
    if (const auto* var = m.As<StateVarDecl>()) {
      add(var->name);
    } else if (const auto* fn = m.As<FunctionDef>()) {
      for (const Param& p : fn->params) {
        add(p.name);
      }
      for (const Param& p : fn->returns) {
        add(p.name);
      }
      add_locals(fn->body);
    }
  }
  for (const StmtPtr& s : fragment.statements) {
    add_locals(s);
  }
  return out;
}

std::vector<std::string> DeclaredFunctions(const Fragment& fragment) {
  std::vector<std::string> out;
  for (const Member& m : fragment.members) {
    if (const auto* fn = m.As<FunctionDef>()) {
      if (!fn->name.empty() &&
          std::find(out.begin(), out.end(), fn->name) == out.end()) {
        out.push_back(fn->name);
      }
    }
  }
  return out;
}

Variant Rename(const Variant& input, const std::vector<std::string>& olds,
               std::string_view prefix, bool functions,
               const TransformOptions& options) {
  std::set<std::string> forbidden = CollectIdentifiers(input.fragment);
  NameGenerator names(std::string(prefix), options.seed);
  Substitution subst;
  Variant out = input;
  for (const std::string& old : olds) {
    std::string fresh = names.Fresh(forbidden);
    subst.names[old] = fresh;
    if (functions) {
      subst.function_names.insert(old);
    }
    // A name introduced by an earlier rename maps back to the original.
    auto earlier = out.renames.find(old);
    std::string original = old;
    if (earlier != out.renames.end()) {
      original = earlier->second;
      out.renames.erase(earlier);
    }
    out.renames[fresh] = original;
  }
  out.fragment = Substitute(input.fragment, subst);
  return out;
}

// ---------------------------------------------------------------------------
// Applicability

bool AnyStmt(const Fragment& fragment,
             const std::function<bool(const Stmt&)>& pred) {
  bool found = false;
  ForEachBody(fragment, [&](const StmtPtr& body) {
    VisitStmts(body, [&](const Stmt& s) { found = found || pred(s); });
  });
  return found;
}

bool AnyPermutationSite(const Fragment& fragment, OperatorId rule) {
  return AnyStmt(fragment, [&](const Stmt& s) {
    bool found = false;
    for (const ExprPtr& e : OwnExprs(s)) {
      VisitExprs(e, [&](const Expr& x) {
        found = found || PermutationRuleFor(x) == rule;
      });
    }
    return found;
  });
}

}  // namespace

NotApplicable::NotApplicable(std::string operation)
    : std::runtime_error("operator not applicable: " + operation) {}

std::string_view ToString(OperatorId id) {
  switch (id) {
    case OperatorId::kRenameVariable:
      return "rename_variable";
    case OperatorId::kRenameFunction:
      return "rename_function";
    case OperatorId::kPermutation:
      return "permutation";
    case OperatorId::kSubtraction:
      return "subtraction";
    case OperatorId::kDivision:
      return "division";
    case OperatorId::kUnequal:
      return "unequal";
    case OperatorId::kIfSwap:
      return "if_swap";
    case OperatorId::kIfToFor:
      return "if2for";
    case OperatorId::kIfToWhile:
      return "if2while";
    case OperatorId::kTxOriginPassing:
      return "tx_passing";
  }
  return "";
}

std::string_view ToString(OperatorGroup group) {
  switch (group) {
    case OperatorGroup::kIfSwap:
      return "if_swap";
    case OperatorGroup::kIfToFor:
      return "if2for";
    case OperatorGroup::kIfToWhile:
      return "if2while";
    case OperatorGroup::kTxPassing:
      return "tx_passing";
    case OperatorGroup::kPermutation:
      return "permutation";
    case OperatorGroup::kRenameVariable:
      return "rename_var";
    case OperatorGroup::kRenameFunction:
      return "rename_fn";
  }
  return "";
}

std::vector<OperatorGroup> ParseGroupToken(std::string_view token) {
  if (token == "rename") {
    return {OperatorGroup::kRenameVariable, OperatorGroup::kRenameFunction};
  }
  for (OperatorGroup g : kAllGroups) {
    if (ToString(g) == token) {
      return {g};
    }
  }
  return {};
}

OperatorGroup GroupOf(OperatorId id) {
  switch (id) {
    case OperatorId::kRenameVariable:
      return OperatorGroup::kRenameVariable;
    case OperatorId::kRenameFunction:
      return OperatorGroup::kRenameFunction;
    case OperatorId::kIfSwap:
      return OperatorGroup::kIfSwap;
    case OperatorId::kIfToFor:
      return OperatorGroup::kIfToFor;
    case OperatorId::kIfToWhile:
      return OperatorGroup::kIfToWhile;
    case OperatorId::kTxOriginPassing:
      return OperatorGroup::kTxPassing;
    default:
      return OperatorGroup::kPermutation;
  }
}

std::vector<OperatorId> RulesOf(OperatorGroup group) {
  switch (group) {
    case OperatorGroup::kIfSwap:
      return {OperatorId::kIfSwap};
    case OperatorGroup::kIfToFor:
      return {OperatorId::kIfToFor};
    case OperatorGroup::kIfToWhile:
      return {OperatorId::kIfToWhile};
    case OperatorGroup::kTxPassing:
      return {OperatorId::kTxOriginPassing};
    case OperatorGroup::kPermutation:
      return {OperatorId::kPermutation, OperatorId::kSubtraction,
              OperatorId::kDivision, OperatorId::kUnequal};
    case OperatorGroup::kRenameVariable:
      return {OperatorId::kRenameVariable};
    case OperatorGroup::kRenameFunction:
      return {OperatorId::kRenameFunction};
  }
  return {};
}

std::string ChainToken(const Chain& chain) {
  if (chain.empty()) {
    return "default";
  }
  std::string out;
  for (OperatorGroup g : chain) {
    if (!out.empty()) {
      out += '+';
    }
    out += ToString(g);
  }
  return out;
}

std::optional<Chain> ParseChainToken(std::string_view token) {
  Chain chain;
  if (token == "default") {
    return chain;
  }
  std::size_t pos = 0;
  while (pos <= token.size()) {
    std::size_t end = token.find('+', pos);
    if (end == std::string_view::npos) {
      end = token.size();
    }
    std::vector<OperatorGroup> groups =
        ParseGroupToken(token.substr(pos, end - pos));
    if (groups.empty()) {
      return std::nullopt;
    }
    chain.insert(chain.end(), groups.begin(), groups.end());
    pos = end + 1;
  }
  return chain;
}

std::string_view ToString(SoundnessFlag flag) {
  return flag == SoundnessFlag::kIntegerDivisionRisk ? "IntegerDivisionRisk"
                                                     : "CheckedArithmeticRisk";
}

std::optional<OperatorId> PermutationRuleFor(const Expr& expr) {
  const auto* b = expr.As<Binary>();
  if (b == nullptr) {
    return std::nullopt;
  }
  if (HasSideEffects(b->lhs) && HasSideEffects(b->rhs)) {
    return std::nullopt;
  }
  if (IsConstant(b->lhs) && IsConstant(b->rhs)) {
    return std::nullopt;
  }
  switch (b->op) {
    case BinaryOp::kAdd:
    case BinaryOp::kMul:
    case BinaryOp::kEq:
      return OperatorId::kPermutation;
    case BinaryOp::kSub:
      return OperatorId::kSubtraction;
    case BinaryOp::kDiv:
      return OperatorId::kDivision;
    case BinaryOp::kNe:
    case BinaryOp::kLt:
    case BinaryOp::kGt:
    case BinaryOp::kLe:
    case BinaryOp::kGe:
      return OperatorId::kUnequal;
    default:
      return std::nullopt;
  }
}

ExprPtr PermuteCommutative(const ExprPtr& expr) {
  const auto* b = expr->As<Binary>();
  if (b == nullptr || (b->op != BinaryOp::kAdd && b->op != BinaryOp::kMul &&
                       b->op != BinaryOp::kEq)) {
    throw NotApplicable("permutation");
  }
  return MakeExpr(Binary{b->op, b->rhs, b->lhs});
}

ExprPtr PermuteSubtraction(const ExprPtr& expr) {
  const auto* b = expr->As<Binary>();
  if (b == nullptr || b->op != BinaryOp::kSub) {
    throw NotApplicable("subtraction");
  }
  return MakeExpr(
      Unary{UnaryOp::kNeg, MakeExpr(Binary{BinaryOp::kSub, b->rhs, b->lhs})});
}

ExprPtr PermuteDivision(const ExprPtr& expr) {
  const auto* b = expr->As<Binary>();
  if (b == nullptr || b->op != BinaryOp::kDiv) {
    throw NotApplicable("division");
  }
  return MakeExpr(Binary{BinaryOp::kDiv, MakeExpr(Literal{"1"}),
                         MakeExpr(Binary{BinaryOp::kDiv, b->rhs, b->lhs})});
}

ExprPtr PermuteOrdering(const ExprPtr& expr) {
  const auto* b = expr->As<Binary>();
  if (b == nullptr) {
    throw NotApplicable("unequal");
  }
  BinaryOp mirror;
  switch (b->op) {
    case BinaryOp::kNe:
      mirror = BinaryOp::kEq;
      break;
    case BinaryOp::kLt:
      mirror = BinaryOp::kLe;
      break;
    case BinaryOp::kGt:
      mirror = BinaryOp::kGe;
      break;
    case BinaryOp::kLe:
      mirror = BinaryOp::kLt;
      break;
    case BinaryOp::kGe:
      mirror = BinaryOp::kGt;
      break;
    default:
      throw NotApplicable("unequal");
  }
  return MakeExpr(
      Unary{UnaryOp::kNot, MakeExpr(Binary{mirror, b->rhs, b->lhs})});
}

StmtPtr SwapIfBranches(const StmtPtr& stmt) {
  const auto* n = stmt->As<If>();
  if (n == nullptr || !n->else_branch) {
    throw NotApplicable("if_swap");
  }
  std::string then_lead =
      n->then_branch->leading.empty() ? " " : n->then_branch->leading;
  std::string else_lead =
      n->else_branch->leading.empty() ? " " : n->else_branch->leading;
  StmtPtr new_then = n->else_branch;
  // A nested if (or a loop ending in one) in then-position would capture
  // the else.
  if (new_then->Is<If>() || new_then->Is<While>() || new_then->Is<For>()) {
    new_then = MakeStmt(Block{{WithLeading(new_then, "")}, ""}, then_lead);
  } else {
    new_then = WithLeading(new_then, then_lead);
  }
  StmtPtr new_else = WithLeading(n->then_branch, else_lead);
  ExprPtr cond = MakeExpr(Unary{UnaryOp::kNot, n->cond});
  return Rebuild(stmt, If{cond, new_then, new_else, n->else_trivia});
}

StmtPtr IfToWhile(const StmtPtr& stmt) {
  const auto* n = stmt->As<If>();
  if (n == nullptr || n->else_branch) {
    throw NotApplicable("if2while");
  }
  return Rebuild(stmt, While{n->cond, LoopBody(n->then_branch)});
}

StmtPtr IfToFor(const StmtPtr& stmt, ForFillStyle style,
                const std::string& counter) {
  const auto* n = stmt->As<If>();
  if (n == nullptr || n->else_branch) {
    throw NotApplicable("if2for");
  }
  StmtPtr init;
  ExprPtr post;
  if (style == ForFillStyle::kTempVar) {
    Declarator d{"uint", "", counter};
    init = MakeStmt(VarDecl{{d}, false, MakeExpr(Literal{"0"})});
    post = MakeExpr(Unary{UnaryOp::kPostInc, MakeExpr(Identifier{counter})});
  }
  return Rebuild(stmt, For{init, n->cond, post, LoopBody(n->then_branch)});
}

bool Applicable(OperatorId id, const Fragment& fragment) {
  switch (id) {
    case OperatorId::kRenameVariable:
      return !DeclaredVariables(fragment).empty();
    case OperatorId::kRenameFunction:
      return !DeclaredFunctions(fragment).empty();
    case OperatorId::kPermutation:
    case OperatorId::kSubtraction:
    case OperatorId::kDivision:
    case OperatorId::kUnequal:
      return AnyPermutationSite(fragment, id);
    case OperatorId::kIfSwap:
      return AnyStmt(fragment, [](const Stmt& s) {
        const auto* n = s.As<If>();
        return n != nullptr && n->else_branch != nullptr;
      });
    case OperatorId::kIfToFor:
    case OperatorId::kIfToWhile:
      return AnyStmt(fragment, LoopConvertible);
    case OperatorId::kTxOriginPassing:
      return AnyStmt(fragment, OwnHasTxOrigin);
  }
  return false;
}

bool Applicable(OperatorGroup group, const Fragment& fragment) {
  for (OperatorId id : RulesOf(group)) {
    if (Applicable(id, fragment)) {
      return true;
    }
  }
  return false;
}

Variant ApplyOperator(const Variant& input, OperatorGroup group,
                      const TransformOptions& options) {
  if (!Applicable(group, input.fragment)) {
    throw NotApplicable(std::string(ToString(group)));
  }
  Variant out = input;
  out.seed = options.seed;
  out.chain.push_back(group);
  switch (group) {
    case OperatorGroup::kIfSwap:
      out.fragment = MapBodies(input.fragment, [](const StmtPtr& body) {
        return MapStmtsPostOrder(body, [](const StmtPtr& s) {
          const auto* n = s->As<If>();
          return n != nullptr && n->else_branch ? SwapIfBranches(s) : s;
        });
      });
      out.rules.insert(OperatorId::kIfSwap);
      break;
    case OperatorGroup::kIfToWhile:
      out.fragment = MapBodies(input.fragment, [](const StmtPtr& body) {
        return MapStmtsPostOrder(body, [](const StmtPtr& s) {
          return LoopConvertible(*s) ? IfToWhile(s) : s;
        });
      });
      out.rules.insert(OperatorId::kIfToWhile);
      break;
    case OperatorGroup::kIfToFor: {
      std::set<std::string> forbidden = CollectIdentifiers(input.fragment);
      NameGenerator names("v_", options.seed);
      out.fragment = MapBodies(input.fragment, [&](const StmtPtr& body) {
        return MapStmtsPostOrder(body, [&](const StmtPtr& s) {
          if (!LoopConvertible(*s)) {
            return s;
          }
          std::string counter = options.for_style == ForFillStyle::kTempVar
                                    ? names.Fresh(forbidden)
                                    : std::string();
          return IfToFor(s, options.for_style, counter);
        });
      });
      out.rules.insert(OperatorId::kIfToFor);
      break;
    }
    case OperatorGroup::kTxPassing: {
      std::set<std::string> forbidden = CollectIdentifiers(input.fragment);
      NameGenerator names("v_", options.seed);
      TxPasser passer(names, forbidden);
      out.fragment = MapBodies(input.fragment, [&](const StmtPtr& body) {
        return passer.Run(body);
      });
      out.rules.insert(OperatorId::kTxOriginPassing);
      break;
    }
    case OperatorGroup::kPermutation: {
      std::vector<ExpressionRewrite> log;
      out.fragment = MapBodies(input.fragment, [&](const StmtPtr& body) {
        return MapStmtExprs(body, [&](const ExprPtr& e) {
          return PermuteAll(e, log);
        });
      });
      for (const ExpressionRewrite& r : log) {
        out.rules.insert(r.rule);
        if (r.rule == OperatorId::kSubtraction) {
          out.flags.insert(SoundnessFlag::kCheckedArithmeticRisk);
        } else if (r.rule == OperatorId::kDivision) {
          out.flags.insert(SoundnessFlag::kIntegerDivisionRisk);
        }
      }
      out.rewrites.insert(out.rewrites.end(), log.begin(), log.end());
      break;
    }
    case OperatorGroup::kRenameVariable:
      out = Rename(out, DeclaredVariables(input.fragment), "v_", false,
                   options);
      out.rules.insert(OperatorId::kRenameVariable);
      break;
    case OperatorGroup::kRenameFunction:
      out = Rename(out, DeclaredFunctions(input.fragment), "f_", true,
                   options);
      out.rules.insert(OperatorId::kRenameFunction);
      break;
  }
  return out;
}

Variant Identity(const Snippet& snippet, std::uint64_t seed) {
  Variant v;
  v.snippet_id = snippet.id;
  v.vuln_type = snippet.vuln_type;
  v.fragment = snippet.fragment;
  v.seed = seed;
  return v;
}

bool IsValidChain(const Chain& chain) {
  std::set<OperatorGroup> seen(chain.begin(), chain.end());
  if (seen.size() != chain.size()) {
    return false;
  }
  return !(seen.contains(OperatorGroup::kIfToFor) &&
           seen.contains(OperatorGroup::kIfToWhile));
}

Variant ApplyChain(const Snippet& snippet, const Chain& chain,
                   const TransformOptions& options) {
  if (!IsValidChain(chain)) {
    throw InvalidChain("invalid operator chain: " + ChainToken(chain));
  }
  Variant v = Identity(snippet, options.seed);
  for (OperatorGroup g : chain) {
    v = ApplyOperator(v, g, options);
  }
  return v;
}

std::vector<Chain> EnumerateValidChains(
    const std::set<OperatorGroup>& available) {
  std::vector<OperatorGroup> groups(available.begin(), available.end());
  std::vector<Chain> out;
  for (std::uint32_t mask = 1; mask < (1u << groups.size()); ++mask) {
    Chain chain;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      if (mask & (1u << i)) {
        chain.push_back(groups[i]);
      }
    }
    if (IsValidChain(chain)) {
      out.push_back(std::move(chain));
    }
  }
  std::sort(out.begin(), out.end(), [](const Chain& a, const Chain& b) {
    if (a.size() != b.size()) {
      return a.size() < b.size();
    }
    return a < b;
  });
  return out;
}

}  // namespace solmorph
