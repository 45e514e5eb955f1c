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

#include "solmorph/ast_equal.h"

#include <string>
#include <vector>

#include "solmorph/lexer.h"

namespace solmorph {
namespace {

bool SameTokens(std::string_view a, std::string_view b) {
  std::vector<Token> ta = Lex(a);
  std::vector<Token> tb = Lex(b);
  if (ta.size() != tb.size()) {
    return false;
  }
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (ta[i].text != tb[i].text) {
      return false;
    }
  }
  return true;
}

template <typename T, typename F>
bool SameList(const std::vector<T>& a, const std::vector<T>& b, F eq) {
  if (a.size() != b.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!eq(a[i], b[i])) {
      return false;
    }
  }
  return true;
}

bool Eq(const ExprPtr& a, const ExprPtr& b);
bool Eq(const StmtPtr& a, const StmtPtr& b);

bool EqNode(const Identifier& a, const Identifier& b) {
  return a.name == b.name;
}
bool EqNode(const Literal& a, const Literal& b) {
  return SameTokens(a.text, b.text);
}
bool EqNode(const Binary& a, const Binary& b) {
  return a.op == b.op && Eq(a.lhs, b.lhs) && Eq(a.rhs, b.rhs);
}
bool EqNode(const Unary& a, const Unary& b) {
  return a.op == b.op && Eq(a.operand, b.operand);
}
bool EqNode(const Assign& a, const Assign& b) {
  return a.op == b.op && Eq(a.target, b.target) && Eq(a.value, b.value);
}
bool EqNode(const MemberAccess& a, const MemberAccess& b) {
  return a.member == b.member && Eq(a.base, b.base);
}
bool EqNode(const Call& a, const Call& b) {
  auto same_option = [](const CallOption& x, const CallOption& y) {
    return x.name == y.name && Eq(x.value, y.value);
  };
  auto same_expr = [](const ExprPtr& x, const ExprPtr& y) { return Eq(x, y); };
  return Eq(a.callee, b.callee) && SameList(a.options, b.options, same_option) &&
         SameList(a.args, b.args, same_expr) && a.arg_names == b.arg_names;
}
bool EqNode(const Index& a, const Index& b) {
  return Eq(a.base, b.base) && Eq(a.index, b.index);
}
bool EqNode(const Conditional& a, const Conditional& b) {
  return Eq(a.cond, b.cond) && Eq(a.then_value, b.then_value) &&
         Eq(a.else_value, b.else_value);
}
bool EqNode(const Tuple& a, const Tuple& b) {
  auto same_expr = [](const ExprPtr& x, const ExprPtr& y) { return Eq(x, y); };
  return SameList(a.elements, b.elements, same_expr);
}
bool EqNode(const New& a, const New& b) { return a.type_name == b.type_name; }
bool EqNode(const RawExpr& a, const RawExpr& b) {
  return SameTokens(a.text, b.text);
}

bool EqNode(const Block& a, const Block& b) {
  auto same = [](const StmtPtr& x, const StmtPtr& y) { return Eq(x, y); };
  return SameList(a.statements, b.statements, same);
}
bool EqNode(const If& a, const If& b) {
  return Eq(a.cond, b.cond) && Eq(a.then_branch, b.then_branch) &&
         Eq(a.else_branch, b.else_branch);
}
bool EqNode(const While& a, const While& b) {
  return Eq(a.cond, b.cond) && Eq(a.body, b.body);
}
bool EqNode(const For& a, const For& b) {
  return Eq(a.init, b.init) && Eq(a.cond, b.cond) && Eq(a.post, b.post) &&
         Eq(a.body, b.body);
}
bool EqNode(const ExprStmt& a, const ExprStmt& b) { return Eq(a.expr, b.expr); }
bool EqNode(const VarDecl& a, const VarDecl& b) {
  auto same = [](const std::optional<Declarator>& x,
                 const std::optional<Declarator>& y) {
    if (x.has_value() != y.has_value()) {
      return false;
    }
    return !x || (x->type == y->type && x->location == y->location &&
                  x->name == y->name);
  };
  return a.tuple == b.tuple && SameList(a.declarators, b.declarators, same) &&
         Eq(a.init, b.init);
}
bool EqNode(const Return& a, const Return& b) { return Eq(a.value, b.value); }
bool EqNode(const Break&, const Break&) { return true; }
bool EqNode(const Continue&, const Continue&) { return true; }
bool EqNode(const Emit& a, const Emit& b) { return Eq(a.event, b.event); }
bool EqNode(const RawStmt& a, const RawStmt& b) {
  return SameTokens(a.text, b.text);
}

template <typename Variant>
bool EqVariant(const Variant& a, const Variant& b) {
  if (a.index() != b.index()) {
    return false;
  }
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        return EqNode(x, std::get<T>(b));
      },
      a);
}

bool Eq(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) {
    return !a && !b;
  }
  return EqVariant(a->node, b->node);
}

bool Eq(const StmtPtr& a, const StmtPtr& b) {
  if (!a || !b) {
    return !a && !b;
  }
  return EqVariant(a->node, b->node);
}

bool EqParams(const std::vector<Param>& a, const std::vector<Param>& b) {
  return SameList(a, b, [](const Param& x, const Param& y) {
    return x.type == y.type && x.name == y.name;
  });
}

bool EqContract(const ContractDef& a, const ContractDef& b) {
  return a.kind == b.kind && a.name == b.name &&
         SameTokens(a.header, b.header) &&
         SameList(a.members, b.members, [](const Member& x, const Member& y) {
           return StructurallyEqual(x, y);
         });
}

}  // namespace

bool StructurallyEqual(const ExprPtr& a, const ExprPtr& b) { return Eq(a, b); }

bool StructurallyEqual(const StmtPtr& a, const StmtPtr& b) { return Eq(a, b); }

bool StructurallyEqual(const Member& a, const Member& b) {
  if (a.node.index() != b.node.index()) {
    return false;
  }
  if (const auto* fa = a.As<FunctionDef>()) {
    const auto* fb = b.As<FunctionDef>();
    return fa->name == fb->name && SameTokens(fa->header, fb->header) &&
           EqParams(fa->params, fb->params) &&
           EqParams(fa->returns, fb->returns) && Eq(fa->body, fb->body);
  }
  if (const auto* sa = a.As<StateVarDecl>()) {
    const auto* sb = b.As<StateVarDecl>();
    return sa->name == sb->name && sa->type == sb->type &&
           SameTokens(sa->text, sb->text);
  }
  return SameTokens(a.As<RawRegion>()->text, b.As<RawRegion>()->text);
}

bool StructurallyEqual(const Fragment& a, const Fragment& b) {
  return a.kind == b.kind &&
         SameList(a.members, b.members,
                  [](const Member& x, const Member& y) {
                    return StructurallyEqual(x, y);
                  }) &&
         SameList(a.statements, b.statements,
                  [](const StmtPtr& x, const StmtPtr& y) { return Eq(x, y); });
}

bool StructurallyEqual(const SourceUnit& a, const SourceUnit& b) {
  return SameList(a.items, b.items,
                  [](const TopLevelItem& x, const TopLevelItem& y) {
                    if (x.node.index() != y.node.index()) {
                      return false;
                    }
                    if (const auto* rx = std::get_if<RawRegion>(&x.node)) {
                      return SameTokens(rx->text,
                                        std::get<RawRegion>(y.node).text);
                    }
                    return EqContract(std::get<ContractDef>(x.node),
                                      std::get<ContractDef>(y.node));
                  });
}

}  // namespace solmorph
