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

#include "solmorph/substitution.h"

#include <utility>
#include <vector>

#include "solmorph/lexer.h"

namespace solmorph {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string Rename(const std::string& name, const Substitution& subst) {
  auto it = subst.names.find(name);
  return it == subst.names.end() ? name : it->second;
}

class ExprRewriter {
 public:
  explicit ExprRewriter(const Substitution& subst) : subst_(subst) {}

  ExprPtr Run(const ExprPtr& e) {
    if (!e) {
      return e;
    }
    if (subst_.tx_origin && IsTxOrigin(*e)) {
      auto out = MakeExpr(Identifier{*subst_.tx_origin});
      if (!e->verbatim.empty()) {
        auto copy = std::make_shared<Expr>(*out);
        copy->verbatim = e->parenthesized ? "(" + *subst_.tx_origin + ")"
                                          : *subst_.tx_origin;
        copy->parenthesized = e->parenthesized;
        return copy;
      }
      return out;
    }
    bool changed = false;
    auto sub = [&](const ExprPtr& child) {
      ExprPtr out = Run(child);
      changed = changed || out != child;
      return out;
    };
    Expr::Node node = std::visit(
        Overloaded{
            [&](const Identifier& n) -> Expr::Node {
              std::string name = Rename(n.name, subst_);
              changed = changed || name != n.name;
              return Identifier{name};
            },
            [&](const Literal& n) -> Expr::Node { return n; },
            [&](const Binary& n) -> Expr::Node {
              return Binary{n.op, sub(n.lhs), sub(n.rhs)};
            },
            [&](const Unary& n) -> Expr::Node {
              return Unary{n.op, sub(n.operand)};
            },
            [&](const Assign& n) -> Expr::Node {
              return Assign{n.op, sub(n.target), sub(n.value)};
            },
            [&](const MemberAccess& n) -> Expr::Node {
              std::string member = n.member;
              const auto* base = n.base->As<Identifier>();
              if (base && base->name == "this" &&
                  subst_.function_names.contains(member)) {
                member = Rename(member, subst_);
                changed = changed || member != n.member;
              }
              return MemberAccess{sub(n.base), member};
            },
            [&](const Call& n) -> Expr::Node {
              Call call = n;
              call.callee = sub(n.callee);
              for (auto& option : call.options) {
                option.value = sub(option.value);
              }
              for (auto& arg : call.args) {
                arg = sub(arg);
              }
              return call;
            },
            [&](const Index& n) -> Expr::Node {
              return Index{sub(n.base), sub(n.index)};
            },
            [&](const Conditional& n) -> Expr::Node {
              return Conditional{sub(n.cond), sub(n.then_value),
                                 sub(n.else_value)};
            },
            [&](const Tuple& n) -> Expr::Node {
              Tuple tuple = n;
              for (auto& element : tuple.elements) {
                element = sub(element);
              }
              return tuple;
            },
            [&](const New& n) -> Expr::Node { return n; },
            [&](const RawExpr& n) -> Expr::Node {
              std::string text = SubstituteText(n.text, subst_);
              changed = changed || text != n.text;
              return RawExpr{text};
            },
        },
        e->node);
    if (!changed) {
      return e;
    }
    auto out = std::make_shared<Expr>();
    out->node = std::move(node);
    out->parenthesized = e->parenthesized;
    if (!e->verbatim.empty()) {
      out->verbatim = SubstituteText(e->verbatim, subst_);
    }
    return out;
  }

 private:
  const Substitution& subst_;
};

class StmtRewriter {
 public:
  explicit StmtRewriter(const Substitution& subst) : subst_(subst) {}

  StmtPtr Run(const StmtPtr& s) {
    if (!s) {
      return s;
    }
    bool changed = false;
    auto expr = [&](const ExprPtr& e) {
      ExprPtr out = ExprRewriter(subst_).Run(e);
      changed = changed || out != e;
      return out;
    };
    auto stmt = [&](const StmtPtr& child) {
      StmtPtr out = Run(child);
      changed = changed || out != child;
      return out;
    };
    Stmt::Node node = std::visit(
        Overloaded{
            [&](const Block& n) -> Stmt::Node {
              Block block = n;
              for (auto& child : block.statements) {
                child = stmt(child);
              }
              return block;
            },
            [&](const If& n) -> Stmt::Node {
              return If{expr(n.cond), stmt(n.then_branch),
                        stmt(n.else_branch), n.else_trivia};
            },
            [&](const While& n) -> Stmt::Node {
              return While{expr(n.cond), stmt(n.body)};
            },
            [&](const For& n) -> Stmt::Node {
              return For{stmt(n.init), expr(n.cond), expr(n.post),
                         stmt(n.body)};
            },
            [&](const ExprStmt& n) -> Stmt::Node {
              return ExprStmt{expr(n.expr)};
            },
            [&](const VarDecl& n) -> Stmt::Node {
              VarDecl decl = n;
              for (auto& d : decl.declarators) {
                if (d) {
                  std::string name = Rename(d->name, subst_);
                  changed = changed || name != d->name;
                  d->name = name;
                }
              }
              decl.init = expr(n.init);
              return decl;
            },
            [&](const Return& n) -> Stmt::Node {
              return Return{expr(n.value)};
            },
            [&](const Break& n) -> Stmt::Node { return n; },
            [&](const Continue& n) -> Stmt::Node { return n; },
            [&](const Emit& n) -> Stmt::Node { return Emit{expr(n.event)}; },
            [&](const RawStmt& n) -> Stmt::Node {
              std::string text = SubstituteText(n.text, subst_);
              changed = changed || text != n.text;
              return RawStmt{text};
            },
        },
        s->node);
    if (!changed) {
      return s;
    }
    auto out = std::make_shared<Stmt>();
    out->node = std::move(node);
    out->leading = s->leading;
    out->span = s->span;
    if (!s->verbatim.empty()) {
      out->verbatim = SubstituteText(s->verbatim, subst_);
    }
    return out;
  }

 private:
  const Substitution& subst_;
};

}  // namespace

bool IsTxOrigin(const Expr& expr) {
  const auto* access = expr.As<MemberAccess>();
  if (access == nullptr || access->member != "origin") {
    return false;
  }
  const auto* base = access->base->As<Identifier>();
  return base != nullptr && base->name == "tx";
}

bool ContainsTxOrigin(const ExprPtr& expr) {
  if (!expr) {
    return false;
  }
  Substitution probe;
  probe.tx_origin = "__probe";
  return ExprRewriter(probe).Run(expr) != expr;
}

std::string SubstituteText(std::string_view text, const Substitution& subst) {
  if (subst.Empty()) {
    return std::string(text);
  }
  std::vector<Token> tokens = Lex(text);
  std::string out;
  std::size_t copied = 0;
  auto replace = [&](std::size_t begin, std::size_t end,
                     const std::string& with) {
    out.append(text.substr(copied, begin - copied));
    out += with;
    copied = end;
  };
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (!t.IsIdentifier()) {
      continue;
    }
    bool after_dot = i > 0 && tokens[i - 1].Is(".");
    if (subst.tx_origin && !after_dot && t.text == "tx" &&
        i + 2 < tokens.size() && tokens[i + 1].Is(".") &&
        tokens[i + 2].Is("origin")) {
      replace(t.begin, tokens[i + 2].end, *subst.tx_origin);
      i += 2;
      continue;
    }
    auto it = subst.names.find(std::string(t.text));
    if (it == subst.names.end()) {
      continue;
    }
    if (after_dot) {
      bool this_member = i > 1 && tokens[i - 2].Is("this") &&
                         subst.function_names.contains(it->first);
      if (!this_member) {
        continue;
      }
    }
    bool named_key = i > 0 && tokens[i + 1].Is(":") &&
                     (tokens[i - 1].Is("{") || tokens[i - 1].Is(","));
    if (named_key) {
      continue;
    }
    replace(t.begin, t.end, it->second);
  }
  out.append(text.substr(copied));
  return out;
}

ExprPtr Substitute(const ExprPtr& expr, const Substitution& subst) {
  return ExprRewriter(subst).Run(expr);
}

StmtPtr Substitute(const StmtPtr& stmt, const Substitution& subst) {
  return StmtRewriter(subst).Run(stmt);
}

Member Substitute(const Member& member, const Substitution& subst) {
  Member out = member;
  std::visit(
      Overloaded{
          [&](FunctionDef& fn) {
            fn.header = SubstituteText(fn.header, subst);
            fn.name = Rename(fn.name, subst);
            for (auto& p : fn.params) {
              p.name = Rename(p.name, subst);
            }
            for (auto& p : fn.returns) {
              p.name = Rename(p.name, subst);
            }
            fn.body = Substitute(fn.body, subst);
            if (!fn.verbatim.empty()) {
              fn.verbatim = SubstituteText(fn.verbatim, subst);
            }
          },
          [&](StateVarDecl& decl) {
            decl.text = SubstituteText(decl.text, subst);
            decl.name = Rename(decl.name, subst);
          },
          [&](RawRegion& raw) { raw.text = SubstituteText(raw.text, subst); },
      },
      out.node);
  return out;
}

Fragment Substitute(const Fragment& fragment, const Substitution& subst) {
  Fragment out = fragment;
  for (auto& member : out.members) {
    member = Substitute(member, subst);
  }
  for (auto& stmt : out.statements) {
    stmt = Substitute(stmt, subst);
  }
  return out;
}

}  // namespace solmorph
