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

#include "solmorph/syntax_utils.h"

#include <utility>

#include "solmorph/lexer.h"

namespace solmorph {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool RawMentionsJump(std::string_view text) {
  for (const Token& t : Lex(text)) {
    if (t.Is("break") || t.Is("continue")) {
      return true;
    }
  }
  return false;
}

bool EscapingJump(const StmtPtr& s) {
  if (!s) {
    return false;
  }
  return std::visit(
      Overloaded{
          [](const Break&) { return true; },
          [](const Continue&) { return true; },
          [](const Block& n) {
            for (const StmtPtr& c : n.statements) {
              if (EscapingJump(c)) {
                return true;
              }
            }
            return false;
          },
          [](const If& n) {
            return EscapingJump(n.then_branch) || EscapingJump(n.else_branch);
          },
          [](const While&) { return false; },
          [](const For&) { return false; },
          [](const RawStmt& n) { return RawMentionsJump(n.text); },
          [](const auto&) { return false; },
      },
      s->node);
}

}  // namespace

ExprPtr MapChildren(const ExprPtr& e, const ExprFn& fn) {
  if (!e) {
    return e;
  }
  bool changed = false;
  auto sub = [&](const ExprPtr& child) {
    if (!child) {
      return child;
    }
    ExprPtr out = fn(child);
    changed = changed || out != child;
    return out;
  };
  Expr::Node node = std::visit(
      Overloaded{
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
            return MemberAccess{sub(n.base), n.member};
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
          [&](const auto& n) -> Expr::Node { return n; },
      },
      e->node);
  return changed ? MakeExpr(std::move(node)) : e;
}

void VisitExprs(const ExprPtr& e, const std::function<void(const Expr&)>& fn) {
  if (!e) {
    return;
  }
  fn(*e);
  MapChildren(e, [&](const ExprPtr& child) {
    VisitExprs(child, fn);
    return child;
  });
}

bool HasSideEffects(const ExprPtr& expr) {
  bool effects = false;
  VisitExprs(expr, [&](const Expr& e) {
    if (e.Is<Call>() || e.Is<Assign>() || e.Is<New>() || e.Is<RawExpr>()) {
      effects = true;
    } else if (const auto* u = e.As<Unary>()) {
      effects = effects || (u->op != UnaryOp::kNot && u->op != UnaryOp::kNeg &&
                            u->op != UnaryOp::kBitNot);
    }
  });
  return effects;
}

StmtPtr Rebuild(const StmtPtr& old, Stmt::Node node) {
  auto out = std::make_shared<Stmt>();
  out->node = std::move(node);
  out->leading = old->leading;
  out->span = old->span;
  return out;
}

std::vector<ExprPtr> OwnExprs(const Stmt& s) {
  std::vector<ExprPtr> out;
  auto add = [&](const ExprPtr& e) {
    if (e) {
      out.push_back(e);
    }
  };
  std::visit(Overloaded{
                 [&](const If& n) { add(n.cond); },
                 [&](const While& n) { add(n.cond); },
                 [&](const For& n) {
                   if (n.init) {
                     out = OwnExprs(*n.init);
                   }
                   add(n.cond);
                   add(n.post);
                 },
                 [&](const ExprStmt& n) { add(n.expr); },
                 [&](const VarDecl& n) { add(n.init); },
                 [&](const Return& n) { add(n.value); },
                 [&](const Emit& n) { add(n.event); },
                 [](const auto&) {},
             },
             s.node);
  return out;
}

void VisitStmts(const StmtPtr& s, const std::function<void(const Stmt&)>& fn) {
  if (!s) {
    return;
  }
  fn(*s);
  std::visit(Overloaded{
                 [&](const Block& n) {
                   for (const StmtPtr& c : n.statements) {
                     VisitStmts(c, fn);
                   }
                 },
                 [&](const If& n) {
                   VisitStmts(n.then_branch, fn);
                   VisitStmts(n.else_branch, fn);
                 },
                 [&](const While& n) { VisitStmts(n.body, fn); },
                 [&](const For& n) {
                   VisitStmts(n.init, fn);
                   VisitStmts(n.body, fn);
                 },
                 [](const auto&) {},
             },
             s->node);
}

StmtPtr MapStmtsPostOrder(const StmtPtr& s, const StmtFn& fn) {
  if (!s) {
    return s;
  }
  bool changed = false;
  auto sub = [&](const StmtPtr& child) {
    StmtPtr out = MapStmtsPostOrder(child, fn);
    changed = changed || out != child;
    return out;
  };
  StmtPtr rebuilt = s;
  if (const auto* n = s->As<Block>()) {
    std::vector<StmtPtr> statements;
    for (const StmtPtr& c : n->statements) {
      statements.push_back(sub(c));
    }
    if (changed) {
      rebuilt = Rebuild(s, Block{std::move(statements), n->closing});
    }
  } else if (const auto* n = s->As<If>()) {
    StmtPtr then_branch = sub(n->then_branch);
    StmtPtr else_branch = sub(n->else_branch);
    if (changed) {
      rebuilt = Rebuild(s, If{n->cond, then_branch, else_branch, n->else_trivia});
    }
  } else if (const auto* n = s->As<While>()) {
    StmtPtr body = sub(n->body);
    if (changed) {
      rebuilt = Rebuild(s, While{n->cond, body});
    }
  } else if (const auto* n = s->As<For>()) {
    StmtPtr body = sub(n->body);
    if (changed) {
      rebuilt = Rebuild(s, For{n->init, n->cond, n->post, body});
    }
  }
  return fn(rebuilt);
}

StmtPtr MapStmtExprs(const StmtPtr& s, const ExprFn& fn) {
  if (!s) {
    return s;
  }
  bool changed = false;
  auto expr = [&](const ExprPtr& e) {
    if (!e) {
      return e;
    }
    ExprPtr out = fn(e);
    changed = changed || out != e;
    return out;
  };
  auto stmt = [&](const StmtPtr& c) {
    StmtPtr out = MapStmtExprs(c, fn);
    changed = changed || out != c;
    return out;
  };
  Stmt::Node node = std::visit(
      Overloaded{
          [&](const Block& n) -> Stmt::Node {
            Block block = n;
            for (auto& c : block.statements) {
              c = stmt(c);
            }
            return block;
          },
          [&](const If& n) -> Stmt::Node {
            return If{expr(n.cond), stmt(n.then_branch), stmt(n.else_branch),
                      n.else_trivia};
          },
          [&](const While& n) -> Stmt::Node {
            return While{expr(n.cond), stmt(n.body)};
          },
          [&](const For& n) -> Stmt::Node {
            return For{stmt(n.init), expr(n.cond), expr(n.post), stmt(n.body)};
          },
          [&](const ExprStmt& n) -> Stmt::Node {
            return ExprStmt{expr(n.expr)};
          },
          [&](const VarDecl& n) -> Stmt::Node {
            VarDecl decl = n;
            decl.init = expr(n.init);
            return decl;
          },
          [&](const Return& n) -> Stmt::Node { return Return{expr(n.value)}; },
          [&](const Emit& n) -> Stmt::Node { return Emit{expr(n.event)}; },
          [&](const auto& n) -> Stmt::Node { return n; },
      },
      s->node);
  return changed ? Rebuild(s, std::move(node)) : s;
}

bool HasEscapingJump(const StmtPtr& stmt) { return EscapingJump(stmt); }

void ForEachBody(const Fragment& fragment,
                 const std::function<void(const StmtPtr&)>& fn) {
  if (fragment.kind == FragmentKind::kFunctionLevel) {
    for (const Member& m : fragment.members) {
      if (const auto* f = m.As<FunctionDef>()) {
        fn(f->body);
      }
    }
    return;
  }
  fn(MakeStmt(Block{fragment.statements, ""}));
}

Fragment MapBodies(const Fragment& fragment, const StmtFn& fn) {
  Fragment out = fragment;
  if (fragment.kind == FragmentKind::kFunctionLevel) {
    for (Member& m : out.members) {
      auto* f = std::get_if<FunctionDef>(&m.node);
      if (f == nullptr) {
        continue;
      }
      StmtPtr body = fn(f->body);
      if (body != f->body) {
        f->body = body;
        f->verbatim.clear();
      }
    }
    return out;
  }
  StmtPtr wrapped = MakeStmt(Block{fragment.statements, ""});
  StmtPtr body = fn(wrapped);
  if (body != wrapped) {
    out.statements = body->As<Block>()->statements;
  }
  return out;
}

}  // namespace solmorph
