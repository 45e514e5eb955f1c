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

#include "solmorph/printer.h"

#include <string>
#include <variant>

namespace solmorph {
namespace {

constexpr std::string_view kIndentStep = "    ";

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

class Printer {
 public:
  explicit Printer(bool use_verbatim) : use_verbatim_(use_verbatim) {}

  std::string Expr(const ExprPtr& e) const {
    if (!e) {
      return "";
    }
    if (use_verbatim_ && !e->verbatim.empty()) {
      return e->verbatim;
    }
    return std::visit(
        Overloaded{
            [&](const Identifier& n) { return n.name; },
            [&](const Literal& n) { return n.text; },
            [&](const Binary& n) {
              return "(" + Operand(n.lhs) + " " + std::string(ToString(n.op)) +
                     " " + Operand(n.rhs) + ")";
            },
            [&](const Unary& n) {
              switch (n.op) {
                case UnaryOp::kNot:
                case UnaryOp::kNeg:
                case UnaryOp::kBitNot:
                  return std::string(ToString(n.op)) + Parenthesized(n.operand);
                case UnaryOp::kPreInc:
                case UnaryOp::kPreDec:
                  return std::string(ToString(n.op)) + Operand(n.operand);
                case UnaryOp::kPostInc:
                case UnaryOp::kPostDec:
                  return Operand(n.operand) + std::string(ToString(n.op));
                case UnaryOp::kDelete:
                  return "delete " + Operand(n.operand);
              }
              return std::string();
            },
            [&](const Assign& n) {
              return Expr(n.target) + " " + n.op + " " + Expr(n.value);
            },
            [&](const MemberAccess& n) {
              return Operand(n.base) + "." + n.member;
            },
            [&](const Call& n) {
              std::string out = Operand(n.callee);
              if (!n.options.empty()) {
                out += "{";
                for (std::size_t i = 0; i < n.options.size(); ++i) {
                  out += (i ? ", " : "") + n.options[i].name + ": " +
                         Expr(n.options[i].value);
                }
                out += "}";
              }
              out += "(";
              bool named = !n.arg_names.empty();
              if (named) {
                out += "{";
              }
              for (std::size_t i = 0; i < n.args.size(); ++i) {
                out += i ? ", " : "";
                if (named) {
                  out += n.arg_names[i] + ": ";
                }
                out += Expr(n.args[i]);
              }
              if (named) {
                out += "}";
              }
              return out + ")";
            },
            [&](const Index& n) {
              return Operand(n.base) + "[" + Expr(n.index) + "]";
            },
            [&](const Conditional& n) {
              return "(" + Operand(n.cond) + " ? " + Expr(n.then_value) +
                     " : " + Expr(n.else_value) + ")";
            },
            [&](const Tuple& n) {
              std::string out = "(";
              for (std::size_t i = 0; i < n.elements.size(); ++i) {
                out += (i ? ", " : "") + Expr(n.elements[i]);
              }
              return out + ")";
            },
            [&](const New& n) { return "new " + n.type_name; },
            [&](const RawExpr& n) { return n.text; },
        },
        e->node);
  }

  std::string Stmt(const StmtPtr& s, std::string_view indent) const {
    if (use_verbatim_ && !s->verbatim.empty()) {
      return s->verbatim;
    }
    return std::visit(
        Overloaded{
            [&](const Block& n) {
              if (n.statements.empty() && n.closing.empty()) {
                return std::string("{ }");
              }
              std::string child_indent = std::string(indent) +
                                         std::string(kIndentStep);
              std::string out = "{";
              for (const auto& child : n.statements) {
                out += Leading(child, child_indent);
                out += Stmt(child, ChildIndent(child, child_indent));
              }
              out += n.closing.empty() || !use_verbatim_
                         ? "\n" + std::string(indent)
                         : n.closing;
              return out + "}";
            },
            [&](const If& n) {
              std::string out = "if (" + Expr(n.cond) + ")" +
                                Branch(n.then_branch, indent);
              if (n.else_branch) {
                out += n.else_trivia.empty() || !use_verbatim_
                           ? std::string(" ")
                           : n.else_trivia;
                out += "else" + Branch(n.else_branch, indent);
              }
              return out;
            },
            [&](const While& n) {
              return "while (" + Expr(n.cond) + ")" + Branch(n.body, indent);
            },
            [&](const For& n) {
              std::string out = "for (";
              if (n.init) {
                out += ForInit(n.init);
              }
              out += ";";
              if (n.cond) {
                out += " " + Expr(n.cond);
              }
              out += ";";
              out += n.post ? " " + Expr(n.post) : std::string(" ");
              return out + ")" + Branch(n.body, indent);
            },
            [&](const ExprStmt& n) { return Expr(n.expr) + ";"; },
            [&](const VarDecl& n) { return Declaration(n) + ";"; },
            [&](const Return& n) {
              return n.value ? "return " + Expr(n.value) + ";"
                             : std::string("return;");
            },
            [&](const Break&) { return std::string("break;"); },
            [&](const Continue&) { return std::string("continue;"); },
            [&](const Emit& n) { return "emit " + Expr(n.event) + ";"; },
            [&](const RawStmt& n) { return n.text; },
        },
        s->node);
  }

 private:
  static bool IsAtomic(const ExprPtr& e) {
    return e->parenthesized || e->Is<Identifier>() || e->Is<Literal>() ||
           e->Is<MemberAccess>() || e->Is<Call>() || e->Is<Index>() ||
           e->Is<New>() || e->Is<Tuple>();
  }

  bool IsVerbatim(const ExprPtr& e) const {
    return use_verbatim_ && !e->verbatim.empty();
  }

  // An operand of a transform-built node. Original subexpressions keep their
  // text but are wrapped when they could bind differently in a new context.
  std::string Operand(const ExprPtr& e) const {
    std::string text = Expr(e);
    if (IsVerbatim(e)) {
      return IsAtomic(e) ? text : "(" + text + ")";
    }
    if (e->Is<Assign>() || (e->Is<Unary>() && !use_verbatim_)) {
      return "(" + text + ")";
    }
    return text;
  }

  // Exactly one pair of parentheses around `e`.
  std::string Parenthesized(const ExprPtr& e) const {
    if (IsVerbatim(e)) {
      return e->parenthesized ? e->verbatim : "(" + e->verbatim + ")";
    }
    if (e->Is<Binary>() || e->Is<Conditional>()) {
      return Expr(e);
    }
    return "(" + Expr(e) + ")";
  }

  std::string Leading(const StmtPtr& s, std::string_view child_indent) const {
    if (s->leading.empty() || !use_verbatim_) {
      return "\n" + std::string(child_indent);
    }
    return s->leading;
  }

  std::string ChildIndent(const StmtPtr& s,
                          std::string_view fallback) const {
    if (use_verbatim_ && s->leading.find('\n') != std::string::npos) {
      return IndentOf(s->leading);
    }
    return std::string(fallback);
  }

  // The body of an if/while/for, including the separating trivia.
  std::string Branch(const StmtPtr& s, std::string_view indent) const {
    std::string lead =
        s->leading.empty() || !use_verbatim_ ? std::string(" ") : s->leading;
    std::string branch_indent =
        lead.find('\n') != std::string::npos ? IndentOf(lead)
                                             : std::string(indent);
    return lead + Stmt(s, branch_indent);
  }

  std::string Declaration(const VarDecl& n) const {
    auto one = [](const Declarator& d) {
      std::string out = d.type;
      if (!d.location.empty()) {
        out += " " + d.location;
      }
      return out + " " + d.name;
    };
    std::string out;
    if (n.tuple) {
      out = "(";
      for (std::size_t i = 0; i < n.declarators.size(); ++i) {
        out += i ? ", " : "";
        if (n.declarators[i]) {
          out += one(*n.declarators[i]);
        }
      }
      out += ")";
    } else {
      out = one(*n.declarators.front());
    }
    if (n.init) {
      out += " = " + Expr(n.init);
    }
    return out;
  }

  std::string ForInit(const StmtPtr& init) const {
    std::string text = Stmt(init, "");
    if (!text.empty() && text.back() == ';') {
      text.pop_back();
    }
    return text;
  }

  bool use_verbatim_;
};

}  // namespace

std::string IndentOf(std::string_view trivia) {
  std::size_t nl = trivia.rfind('\n');
  if (nl == std::string_view::npos) {
    return "";
  }
  std::string_view tail = trivia.substr(nl + 1);
  std::size_t end = tail.find_first_not_of(" \t");
  return std::string(tail.substr(0, end));
}

std::string PrintExpr(const ExprPtr& expr) { return Printer(true).Expr(expr); }

std::string PrintExprCanonical(const ExprPtr& expr) {
  return Printer(false).Expr(expr);
}

std::string PrintStmt(const StmtPtr& stmt, std::string_view indent) {
  return Printer(true).Stmt(stmt, indent);
}

std::string PrintStmtCanonical(const StmtPtr& stmt) {
  return Printer(false).Stmt(stmt, "");
}

std::string PrintMember(const Member& member) {
  return std::visit(
      Overloaded{
          [&](const FunctionDef& fn) {
            if (!fn.verbatim.empty()) {
              return fn.verbatim;
            }
            return fn.header + PrintStmt(fn.body, IndentOf(member.leading));
          },
          [](const StateVarDecl& decl) { return decl.text; },
          [](const RawRegion& raw) { return raw.text; },
      },
      member.node);
}

std::string Print(const ContractDef& contract) {
  if (!contract.verbatim.empty()) {
    return contract.verbatim;
  }
  std::string out = contract.header + "{";
  for (const auto& member : contract.members) {
    out += member.leading + PrintMember(member);
  }
  return out + contract.closing + "}";
}

std::string Print(const SourceUnit& unit) {
  std::string out;
  for (const auto& item : unit.items) {
    out += item.leading;
    if (const auto* raw = std::get_if<RawRegion>(&item.node)) {
      out += raw->text;
    } else {
      out += Print(std::get<ContractDef>(item.node));
    }
  }
  return out + unit.trailing;
}

std::string Print(const Fragment& fragment) {
  std::string out;
  if (fragment.kind == FragmentKind::kFunctionLevel) {
    for (const auto& member : fragment.members) {
      out += member.leading + PrintMember(member);
    }
  } else {
    for (const auto& stmt : fragment.statements) {
      out += stmt->leading + PrintStmt(stmt, IndentOf(stmt->leading));
    }
  }
  return out + fragment.trailing;
}

}  // namespace solmorph
