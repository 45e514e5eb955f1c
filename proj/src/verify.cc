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

#include "solmorph/verify.h"

#include <algorithm>

#include "solmorph/cfg.h"
#include "solmorph/lexer.h"
#include "solmorph/printer.h"
#include "solmorph/substitution.h"
#include "solmorph/syntax_utils.h"

namespace solmorph {
namespace {

bool SameTokens(std::string_view a, std::string_view b) {
  std::vector<Token> x = Lex(a);
  std::vector<Token> y = Lex(b);
  return std::equal(x.begin(), x.end(), y.begin(), y.end(),
                    [](const Token& p, const Token& q) {
                      return p.text == q.text;
                    });
}

ExprPtr Unwrap(const ExprPtr& e) {
  if (const auto* t = e->As<Tuple>(); t && t->elements.size() == 1 &&
                                      t->elements[0]) {
    return Unwrap(t->elements[0]);
  }
  return e;
}

ExprPtr UndoDivision(const ExprPtr& e) {
  ExprPtr out = MapChildren(e, UndoDivision);
  const auto* outer = out->As<Binary>();
  if (outer == nullptr || outer->op != BinaryOp::kDiv) {
    return out;
  }
  const auto* one = Unwrap(outer->lhs)->As<Literal>();
  const auto* inner = Unwrap(outer->rhs)->As<Binary>();
  if (one == nullptr || one->text != "1" || inner == nullptr ||
      inner->op != BinaryOp::kDiv) {
    return out;
  }
  return MakeExpr(Binary{BinaryOp::kDiv, inner->rhs, inner->lhs});
}

void CollectBoundNames(const Fragment& fragment, std::set<std::string>& out) {
  auto exprs = [&](const ExprPtr& e) {
    VisitExprs(e, [&](const Expr& x) {
      if (const auto* id = x.As<Identifier>()) {
        out.insert(id->name);
      }
    });
  };
  auto stmts = [&](const StmtPtr& body) {
    VisitStmts(body, [&](const Stmt& s) {
      for (const ExprPtr& e : OwnExprs(s)) {
        exprs(e);
      }
      if (const auto* decl = s.As<VarDecl>()) {
        for (const auto& d : decl->declarators) {
          if (d) {
            out.insert(d->name);
          }
        }
      }
    });
  };
  for (const Member& m : fragment.members) {
    if (const auto* fn = m.As<FunctionDef>()) {
      out.insert(fn->name);
      for (const Param& p : fn->params) {
        out.insert(p.name);
      }
      for (const Param& p : fn->returns) {
        out.insert(p.name);
      }
      stmts(fn->body);
    } else if (const auto* decl = m.As<StateVarDecl>()) {
      out.insert(decl->name);
    }
  }
  for (const StmtPtr& s : fragment.statements) {
    stmts(s);
  }
  out.erase("");
}

StmtPtr AsBlock(const std::vector<StmtPtr>& statements) {
  return MakeStmt(Block{statements, ""});
}

void CompareBodies(const std::string& what, const StmtPtr& original,
                   const StmtPtr& variant, VerifyReport& report) {
  try {
    Cfg a = NormalizeCfg(BuildCfg(original));
    Cfg b = NormalizeCfg(BuildCfg(variant));
    if (!CfgEqual(a, b)) {
      report.problems.push_back(what + ": control flow differs");
    }
  } catch (const RawEncountered&) {
    report.notes.push_back(what + ": contains raw statements, not compared");
  } catch (const CfgError& e) {
    report.problems.push_back(what + ": " + e.what());
  }
}

}  // namespace

bool VerifyReport::HasDivergence() const {
  return std::any_of(rewrites.begin(), rewrites.end(),
                     [](const RewriteCheck& c) { return !c.result.equal; });
}

int SweepWidth(std::size_t variables) {
  if (variables <= 2) {
    return 8;
  }
  return std::max(1, 16 / static_cast<int>(variables));
}

RewriteCheck CheckRewrite(const ExpressionRewrite& rewrite) {
  RewriteCheck check;
  check.rule = rewrite.rule;
  check.before = PrintExpr(rewrite.before);
  check.after = PrintExpr(rewrite.after);
  std::set<std::string> vars;
  for (const auto& v : FreeVariables(rewrite.before)) {
    vars.insert(v);
  }
  for (const auto& v : FreeVariables(rewrite.after)) {
    vars.insert(v);
  }
  check.width = SweepWidth(vars.size());
  check.result = EquivalentExprs(rewrite.before, rewrite.after, check.width,
                                 Semantics::kWrap);
  return check;
}

Fragment UndoDivisionRewrites(const Fragment& fragment) {
  return MapBodies(fragment, [](const StmtPtr& body) {
    return MapStmtExprs(body, UndoDivision);
  });
}

VerifyReport VerifyVariant(const Snippet& original, const Variant& variant) {
  VerifyReport report;
  report.snippet_id = variant.snippet_id;
  report.chain = ChainToken(variant.chain);
  report.flags = variant.flags;

  for (const ExpressionRewrite& rewrite : variant.rewrites) {
    RewriteCheck check;
    try {
      check = CheckRewrite(rewrite);
    } catch (const DomainTooLarge& e) {
      report.notes.push_back(std::string("rewrite not swept: ") + e.what());
      continue;
    }
    if (!check.result.equal) {
      bool flagged = rewrite.rule == OperatorId::kDivision &&
                     variant.flags.contains(
                         SoundnessFlag::kIntegerDivisionRisk);
      if (!flagged) {
        report.problems.push_back("rewrite " + check.before + " => " +
                                  check.after + " diverges");
      }
    }
    report.rewrites.push_back(std::move(check));
  }

  std::set<std::string> originals;
  std::set<std::string> fresh;
  Substitution inverse;
  for (const auto& [to, from] : variant.renames) {
    originals.insert(from);
    fresh.insert(to);
    inverse.names[to] = from;
    inverse.function_names.insert(to);
  }
  std::set<std::string> bound;
  CollectBoundNames(variant.fragment, bound);
  for (const std::string& name : bound) {
    if (originals.contains(name) && !fresh.contains(name)) {
      report.problems.push_back("stale reference to renamed `" + name + "`");
    }
  }

  Fragment restored = Substitute(variant.fragment, inverse);
  if (variant.flags.contains(SoundnessFlag::kIntegerDivisionRisk)) {
    restored = UndoDivisionRewrites(restored);
  }

  const Fragment& base = original.fragment;
  if (base.kind != restored.kind) {
    report.problems.push_back("fragment kind differs");
    return report;
  }
  if (base.kind == FragmentKind::kStatementLevel) {
    CompareBodies("statements", AsBlock(base.statements),
                  AsBlock(restored.statements), report);
    return report;
  }
  if (base.members.size() != restored.members.size()) {
    report.problems.push_back("member count differs");
    return report;
  }
  for (std::size_t i = 0; i < base.members.size(); ++i) {
    const Member& m = base.members[i];
    const Member& v = restored.members[i];
    std::string what = "member " + std::to_string(i + 1);
    if (m.node.index() != v.node.index()) {
      report.problems.push_back(what + ": kind differs");
    } else if (const auto* fn = m.As<FunctionDef>()) {
      const auto* other = v.As<FunctionDef>();
      what = "function " + fn->name;
      if (!SameTokens(fn->header, other->header)) {
        report.problems.push_back(what + ": header differs");
      }
      CompareBodies(what, fn->body, other->body, report);
    } else if (const auto* decl = m.As<StateVarDecl>()) {
      if (!SameTokens(decl->text, v.As<StateVarDecl>()->text)) {
        report.problems.push_back(what + ": declaration differs");
      }
    } else if (!SameTokens(std::get<RawRegion>(m.node).text,
                           std::get<RawRegion>(v.node).text)) {
      report.problems.push_back(what + ": text differs");
    }
  }
  return report;
}

}  // namespace solmorph
