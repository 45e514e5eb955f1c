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

#include "solmorph/cfg.h"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <variant>

#include "solmorph/canonical.h"
#include "solmorph/interpreter.h"
#include "solmorph/lexer.h"
#include "solmorph/printer.h"
#include "solmorph/syntax_utils.h"

namespace solmorph {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// ---------------------------------------------------------------------------
// Construction

struct Pending {
  int from;
  EdgeLabel label;
};

struct LoopFrame {
  std::vector<Pending> breaks;
  int continue_target;
};

class Builder {
 public:
  Cfg Run(const StmtPtr& body) {
    cfg_.nodes.push_back({CfgNodeKind::kEntry, {}, nullptr, {}});
    cfg_.nodes.push_back({CfgNodeKind::kExit, {}, nullptr, {}});
    std::vector<Pending> pending = {{Cfg::kEntry, EdgeLabel::kFallthrough}};
    pending = Build(body, pending);
    Connect(pending, Cfg::kExit);
    return std::move(cfg_);
  }

 private:
  int Add(CfgNodeKind kind, ExprPtr cond = nullptr) {
    cfg_.nodes.push_back({kind, {}, std::move(cond), {}});
    return static_cast<int>(cfg_.nodes.size()) - 1;
  }

  void Connect(const std::vector<Pending>& pending, int target) {
    for (const Pending& p : pending) {
      cfg_.nodes[p.from].out.push_back({p.label, target});
    }
  }

  std::vector<Pending> Simple(const StmtPtr& s, std::vector<Pending> pending) {
    int node = Add(CfgNodeKind::kBasic);
    cfg_.nodes[node].statements.push_back(s);
    Connect(pending, node);
    return {{node, EdgeLabel::kFallthrough}};
  }

  std::vector<Pending> Build(const StmtPtr& s, std::vector<Pending> pending) {
    if (!s) {
      return pending;
    }
    return std::visit(
        Overloaded{
            [&](const Block& n) {
              for (const StmtPtr& child : n.statements) {
                pending = Build(child, std::move(pending));
              }
              return pending;
            },
            [&](const If& n) {
              int cond = Add(CfgNodeKind::kCond, n.cond);
              Connect(pending, cond);
              std::vector<Pending> out =
                  Build(n.then_branch, {{cond, EdgeLabel::kTrue}});
              std::vector<Pending> other = {{cond, EdgeLabel::kFalse}};
              if (n.else_branch) {
                other = Build(n.else_branch, other);
              }
              out.insert(out.end(), other.begin(), other.end());
              return out;
            },
            [&](const While& n) {
              int cond = Add(CfgNodeKind::kCond, n.cond);
              Connect(pending, cond);
              return Loop(cond, cond, n.body);
            },
            [&](const For& n) {
              if (n.init) {
                pending = Simple(n.init, std::move(pending));
              }
              ExprPtr c = n.cond ? n.cond : MakeExpr(Literal{"true"});
              int cond = Add(CfgNodeKind::kCond, c);
              Connect(pending, cond);
              int next = cond;
              if (n.post) {
                next = Add(CfgNodeKind::kBasic);
                cfg_.nodes[next].statements.push_back(
                    MakeStmt(ExprStmt{n.post}));
                cfg_.nodes[next].out.push_back(
                    {EdgeLabel::kFallthrough, cond});
              }
              return Loop(cond, next, n.body);
            },
            [&](const Return&) {
              std::vector<Pending> after = Simple(s, std::move(pending));
              Connect(after, Cfg::kExit);
              return std::vector<Pending>{};
            },
            [&](const Break&) {
              if (loops_.empty()) {
                throw CfgError("break outside a loop");
              }
              auto& breaks = loops_.back().breaks;
              breaks.insert(breaks.end(), pending.begin(), pending.end());
              return std::vector<Pending>{};
            },
            [&](const Continue&) {
              if (loops_.empty()) {
                throw CfgError("continue outside a loop");
              }
              Connect(pending, loops_.back().continue_target);
              return std::vector<Pending>{};
            },
            [&](const RawStmt& n) -> std::vector<Pending> {
              throw RawEncountered("raw statement: " + n.text);
            },
            [&](const auto&) { return Simple(s, std::move(pending)); },
        },
        s->node);
  }

  std::vector<Pending> Loop(int cond, int continue_target,
                            const StmtPtr& body) {
    loops_.push_back({{}, continue_target});
    std::vector<Pending> end = Build(body, {{cond, EdgeLabel::kTrue}});
    Connect(end, continue_target);
    std::vector<Pending> out = {{cond, EdgeLabel::kFalse}};
    const auto& breaks = loops_.back().breaks;
    out.insert(out.end(), breaks.begin(), breaks.end());
    loops_.pop_back();
    return out;
  }

  Cfg cfg_;
  std::vector<LoopFrame> loops_;
};

// ---------------------------------------------------------------------------
// Normalization

std::vector<ExprPtr> NodeExprs(const CfgNode& node) {
  std::vector<ExprPtr> out;
  if (node.cond) {
    out.push_back(node.cond);
  }
  for (const StmtPtr& s : node.statements) {
    for (const ExprPtr& e : OwnExprs(*s)) {
      out.push_back(e);
    }
  }
  return out;
}

// Identifier names read or written anywhere in the expressions.
void CollectNames(const ExprPtr& e, std::multiset<std::string>& names) {
  VisitExprs(e, [&](const Expr& x) {
    if (const auto* id = x.As<Identifier>()) {
      names.insert(id->name);
    } else if (const auto* raw = x.As<RawExpr>()) {
      for (const Token& t : Lex(raw->text)) {
        if (t.IsIdentifier()) {
          names.emplace(t.text);
        }
      }
    }
  });
}

void CollectWritten(const ExprPtr& e, std::set<std::string>& names) {
  auto all = [&](const ExprPtr& target) {
    std::multiset<std::string> found;
    CollectNames(target, found);
    names.insert(found.begin(), found.end());
  };
  VisitExprs(e, [&](const Expr& x) {
    if (const auto* a = x.As<Assign>()) {
      all(a->target);
    } else if (const auto* u = x.As<Unary>()) {
      if (u->op != UnaryOp::kNot && u->op != UnaryOp::kNeg &&
          u->op != UnaryOp::kBitNot) {
        all(u->operand);
      }
    } else if (const auto* raw = x.As<RawExpr>()) {
      for (const Token& t : Lex(raw->text)) {
        if (t.IsIdentifier()) {
          names.emplace(t.text);
        }
      }
    }
  });
}

bool IsEnvironmentConstant(const ExprPtr& e) {
  if (const auto* lit = e->As<Literal>()) {
    return !lit->text.empty();
  }
  if (const auto* id = e->As<Identifier>()) {
    return id->name == "now";
  }
  if (const auto* m = e->As<MemberAccess>()) {
    const auto* base = m->base->As<Identifier>();
    return base != nullptr &&
           (base->name == "tx" || base->name == "msg" || base->name == "block");
  }
  return false;
}

const Declarator* SingleDeclarator(const Stmt& s) {
  const auto* decl = s.As<VarDecl>();
  if (decl == nullptr || decl->tuple || decl->declarators.size() != 1 ||
      !decl->declarators[0]) {
    return nullptr;
  }
  return &*decl->declarators[0];
}

ExprPtr ReplaceIdentifier(const ExprPtr& e, const std::string& name,
                          const ExprPtr& with) {
  if (!e) {
    return e;
  }
  if (const auto* id = e->As<Identifier>(); id && id->name == name) {
    return with;
  }
  return MapChildren(e, [&](const ExprPtr& child) {
    return ReplaceIdentifier(child, name, with);
  });
}

StmtPtr ReplaceInStmt(const StmtPtr& s, const std::string& name,
                      const ExprPtr& with) {
  return MapStmtExprs(s, [&](const ExprPtr& e) {
    return ReplaceIdentifier(e, name, with);
  });
}

class Normalizer {
 public:
  explicit Normalizer(Cfg cfg) : cfg_(std::move(cfg)) {}

  Cfg Run() {
    bool changed = true;
    while (changed) {
      changed = false;
      changed |= RemoveUnreachable();
      changed |= ForwardConstants();
      changed |= RemoveUnreadDeclarations();
      changed |= BypassEmpty();
      changed |= MergeChains();
    }
    CanonicalizeConditions();
    return std::move(cfg_);
  }

 private:
  bool RemoveUnreachable() {
    std::vector<bool> seen(cfg_.nodes.size(), false);
    std::deque<int> queue = {Cfg::kEntry};
    seen[Cfg::kEntry] = true;
    seen[Cfg::kExit] = true;
    while (!queue.empty()) {
      int n = queue.front();
      queue.pop_front();
      for (const CfgEdge& e : cfg_.nodes[n].out) {
        if (!seen[e.target]) {
          seen[e.target] = true;
          queue.push_back(e.target);
        }
      }
    }
    if (std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
      return false;
    }
    std::vector<int> remap(cfg_.nodes.size(), -1);
    std::vector<CfgNode> kept;
    for (std::size_t i = 0; i < cfg_.nodes.size(); ++i) {
      if (seen[i]) {
        remap[i] = static_cast<int>(kept.size());
        kept.push_back(std::move(cfg_.nodes[i]));
      }
    }
    for (CfgNode& node : kept) {
      for (CfgEdge& e : node.out) {
        e.target = remap[e.target];
      }
    }
    cfg_.nodes = std::move(kept);
    return true;
  }

  std::multiset<std::string> AllNames() const {
    std::multiset<std::string> names;
    for (const CfgNode& node : cfg_.nodes) {
      for (const ExprPtr& e : NodeExprs(node)) {
        CollectNames(e, names);
      }
    }
    return names;
  }

  std::multiset<std::string> DeclaredNames() const {
    std::multiset<std::string> names;
    for (const CfgNode& node : cfg_.nodes) {
      for (const StmtPtr& s : node.statements) {
        if (const auto* decl = s->As<VarDecl>()) {
          for (const auto& d : decl->declarators) {
            if (d) {
              names.insert(d->name);
            }
          }
        }
      }
    }
    return names;
  }

  bool ForwardConstants() {
    std::set<std::string> written;
    for (const CfgNode& node : cfg_.nodes) {
      for (const ExprPtr& e : NodeExprs(node)) {
        CollectWritten(e, written);
      }
    }
    std::multiset<std::string> declared = DeclaredNames();
    for (CfgNode& node : cfg_.nodes) {
      for (std::size_t i = 0; i < node.statements.size(); ++i) {
        const Declarator* d = SingleDeclarator(*node.statements[i]);
        if (d == nullptr) {
          continue;
        }
        const ExprPtr& init = node.statements[i]->As<VarDecl>()->init;
        if (!init || !IsEnvironmentConstant(init) || written.contains(d->name) ||
            declared.count(d->name) != 1) {
          continue;
        }
        std::string name = d->name;
        ExprPtr value = init;
        node.statements.erase(node.statements.begin() +
                              static_cast<std::ptrdiff_t>(i));
        for (CfgNode& other : cfg_.nodes) {
          if (other.cond) {
            other.cond = ReplaceIdentifier(other.cond, name, value);
          }
          for (StmtPtr& s : other.statements) {
            s = ReplaceInStmt(s, name, value);
          }
        }
        return true;
      }
    }
    return false;
  }

  bool RemoveUnreadDeclarations() {
    std::multiset<std::string> names = AllNames();
    bool changed = false;
    for (CfgNode& node : cfg_.nodes) {
      auto unread = [&](const StmtPtr& s) {
        const auto* decl = s->As<VarDecl>();
        if (decl == nullptr || (decl->init && HasSideEffects(decl->init))) {
          return false;
        }
        return std::all_of(decl->declarators.begin(), decl->declarators.end(),
                           [&](const auto& d) {
                             return !d || names.count(d->name) == 0;
                           });
      };
      auto end = std::remove_if(node.statements.begin(), node.statements.end(),
                                unread);
      if (end != node.statements.end()) {
        node.statements.erase(end, node.statements.end());
        changed = true;
      }
    }
    return changed;
  }

  bool BypassEmpty() {
    for (std::size_t n = 0; n < cfg_.nodes.size(); ++n) {
      CfgNode& node = cfg_.nodes[n];
      if (node.kind != CfgNodeKind::kBasic || !node.statements.empty() ||
          node.out.size() != 1 || node.out[0].target == static_cast<int>(n)) {
        continue;
      }
      int target = node.out[0].target;
      for (CfgNode& other : cfg_.nodes) {
        for (CfgEdge& e : other.out) {
          if (e.target == static_cast<int>(n)) {
            e.target = target;
          }
        }
      }
      node.out.clear();
      return true;
    }
    return false;
  }

  bool MergeChains() {
    for (std::size_t a = 0; a < cfg_.nodes.size(); ++a) {
      CfgNode& node = cfg_.nodes[a];
      if (node.kind != CfgNodeKind::kBasic || node.out.size() != 1) {
        continue;
      }
      int b = node.out[0].target;
      if (b == static_cast<int>(a) ||
          cfg_.nodes[b].kind != CfgNodeKind::kBasic ||
          cfg_.Predecessors(b).size() != 1) {
        continue;
      }
      CfgNode& next = cfg_.nodes[b];
      node.statements.insert(node.statements.end(), next.statements.begin(),
                             next.statements.end());
      node.out = std::move(next.out);
      next.out.clear();
      next.statements.clear();
      return true;
    }
    return false;
  }

  void CanonicalizeConditions() {
    for (CfgNode& node : cfg_.nodes) {
      if (node.kind != CfgNodeKind::kCond) {
        continue;
      }
      node.cond = CanonicalExpr(node.cond);
      if (const auto* u = node.cond->As<Unary>(); u && u->op == UnaryOp::kNot) {
        node.cond = u->operand;
        for (CfgEdge& e : node.out) {
          if (e.label == EdgeLabel::kTrue) {
            e.label = EdgeLabel::kFalse;
          } else if (e.label == EdgeLabel::kFalse) {
            e.label = EdgeLabel::kTrue;
          }
        }
      }
      std::sort(node.out.begin(), node.out.end(),
                [](const CfgEdge& x, const CfgEdge& y) {
                  return x.label < y.label;
                });
    }
  }

  Cfg cfg_;
};

// ---------------------------------------------------------------------------
// Comparison

bool SameTokens(std::string_view a, std::string_view b) {
  std::vector<Token> x = Lex(a);
  std::vector<Token> y = Lex(b);
  if (x.size() != y.size()) {
    return false;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].text != y[i].text) {
      return false;
    }
  }
  return true;
}

bool IsValueLiteral(const Literal& lit) {
  if (lit.text == "true" || lit.text == "false") {
    return true;
  }
  return !lit.text.empty() && lit.text[0] >= '0' && lit.text[0] <= '9';
}

bool IsArithmetic(const ExprPtr& e) {
  if (e->Is<Binary>() || e->Is<Conditional>()) {
    return true;
  }
  if (const auto* u = e->As<Unary>()) {
    return u->op == UnaryOp::kNot || u->op == UnaryOp::kNeg ||
           u->op == UnaryOp::kBitNot;
  }
  if (const auto* lit = e->As<Literal>()) {
    return IsValueLiteral(*lit);
  }
  if (const auto* t = e->As<Tuple>()) {
    return t->elements.size() == 1 && t->elements[0] &&
           IsArithmetic(t->elements[0]);
  }
  return false;
}

// Replaces maximal non-arithmetic subterms by placeholder identifiers, one
// per class of equivalent subterms.
ExprPtr Abstract(const ExprPtr& e, std::vector<ExprPtr>& classes) {
  if (!IsArithmetic(e)) {
    std::size_t k = 0;
    while (k < classes.size() && !EquivalentExprsForCfg(classes[k], e)) {
      ++k;
    }
    if (k == classes.size()) {
      classes.push_back(e);
    }
    return MakeExpr(Identifier{"$" + std::to_string(k)});
  }
  return MapChildren(
      e, [&](const ExprPtr& child) { return Abstract(child, classes); });
}

bool SweepEqual(const ExprPtr& a, const ExprPtr& b) {
  std::vector<ExprPtr> classes;
  ExprPtr x = Abstract(a, classes);
  ExprPtr y = Abstract(b, classes);
  int n = static_cast<int>(classes.size());
  int width = n == 0 ? 8 : std::max(1, std::min(8, 16 / n));
  if (n * width > kMaxSweepBits) {
    return false;
  }
  return EquivalentExprs(x, y, width, Semantics::kWrap, 1).equal;
}

template <typename T>
bool AllEquivalent(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!EquivalentExprsForCfg(a[i], b[i])) {
      return false;
    }
  }
  return true;
}

bool StructurallyEquivalent(const ExprPtr& a, const ExprPtr& b) {
  if (a->node.index() != b->node.index()) {
    return false;
  }
  return std::visit(
      Overloaded{
          [&](const Assign& x) {
            const auto& y = *b->As<Assign>();
            return x.op == y.op && EquivalentExprsForCfg(x.target, y.target) &&
                   EquivalentExprsForCfg(x.value, y.value);
          },
          [&](const MemberAccess& x) {
            const auto& y = *b->As<MemberAccess>();
            return x.member == y.member && EquivalentExprsForCfg(x.base, y.base);
          },
          [&](const Call& x) {
            const auto& y = *b->As<Call>();
            if (x.arg_names != y.arg_names ||
                x.options.size() != y.options.size()) {
              return false;
            }
            for (std::size_t i = 0; i < x.options.size(); ++i) {
              if (x.options[i].name != y.options[i].name ||
                  !EquivalentExprsForCfg(x.options[i].value,
                                         y.options[i].value)) {
                return false;
              }
            }
            return EquivalentExprsForCfg(x.callee, y.callee) &&
                   AllEquivalent(x.args, y.args);
          },
          [&](const Index& x) {
            const auto& y = *b->As<Index>();
            return EquivalentExprsForCfg(x.base, y.base) &&
                   EquivalentExprsForCfg(x.index, y.index);
          },
          [&](const Tuple& x) {
            return AllEquivalent(x.elements, b->As<Tuple>()->elements);
          },
          [&](const Unary& x) {
            const auto& y = *b->As<Unary>();
            return x.op == y.op && EquivalentExprsForCfg(x.operand, y.operand);
          },
          [&](const New& x) {
            return SameTokens(x.type_name, b->As<New>()->type_name);
          },
          [&](const RawExpr& x) {
            return SameTokens(x.text, b->As<RawExpr>()->text);
          },
          [&](const Literal& x) {
            return SameTokens(x.text, b->As<Literal>()->text);
          },
          [&](const Identifier& x) {
            return x.name == b->As<Identifier>()->name;
          },
          [&](const auto&) { return false; },
      },
      a->node);
}

bool SameNode(const CfgNode& a, const CfgNode& b) {
  if (a.kind != b.kind || a.out.size() != b.out.size() ||
      a.statements.size() != b.statements.size()) {
    return false;
  }
  if (a.kind == CfgNodeKind::kCond && !EquivalentExprsForCfg(a.cond, b.cond)) {
    return false;
  }
  for (std::size_t i = 0; i < a.statements.size(); ++i) {
    if (!EquivalentStmts(a.statements[i], b.statements[i])) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string_view ToString(CfgNodeKind kind) {
  switch (kind) {
    case CfgNodeKind::kEntry:
      return "entry";
    case CfgNodeKind::kExit:
      return "exit";
    case CfgNodeKind::kBasic:
      return "basic";
    case CfgNodeKind::kCond:
      return "cond";
  }
  return "";
}

std::string_view ToString(EdgeLabel label) {
  switch (label) {
    case EdgeLabel::kFallthrough:
      return "ft";
    case EdgeLabel::kTrue:
      return "true";
    case EdgeLabel::kFalse:
      return "false";
  }
  return "";
}

std::size_t Cfg::EdgeCount() const {
  std::size_t count = 0;
  for (const CfgNode& node : nodes) {
    count += node.out.size();
  }
  return count;
}

std::vector<int> Cfg::Predecessors(int node) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (const CfgEdge& e : nodes[i].out) {
      if (e.target == node) {
        out.push_back(static_cast<int>(i));
      }
    }
  }
  return out;
}

std::string Cfg::ToString() const {
  std::string out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const CfgNode& node = nodes[i];
    out += std::to_string(i) + " " + std::string(solmorph::ToString(node.kind));
    if (node.cond) {
      out += " [" + PrintExprCanonical(node.cond) + "]";
    }
    for (const StmtPtr& s : node.statements) {
      out += " [" + PrintStmtCanonical(s) + "]";
    }
    out += " ->";
    for (const CfgEdge& e : node.out) {
      out += " " + std::string(solmorph::ToString(e.label)) + ":" +
             std::to_string(e.target);
    }
    out += "\n";
  }
  return out;
}

Cfg BuildCfg(const StmtPtr& body) { return Builder().Run(body); }

Cfg NormalizeCfg(const Cfg& cfg) { return Normalizer(cfg).Run(); }

bool EquivalentExprsForCfg(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) {
    return !a && !b;
  }
  if (CanonicalText(a) == CanonicalText(b)) {
    return true;
  }
  if (IsArithmetic(a) || IsArithmetic(b)) {
    return SweepEqual(a, b);
  }
  return StructurallyEquivalent(a, b);
}

bool EquivalentStmts(const StmtPtr& a, const StmtPtr& b) {
  if (!a || !b) {
    return !a && !b;
  }
  if (a->node.index() != b->node.index()) {
    return false;
  }
  return std::visit(
      Overloaded{
          [&](const ExprStmt& x) {
            return EquivalentExprsForCfg(x.expr, b->As<ExprStmt>()->expr);
          },
          [&](const Return& x) {
            return EquivalentExprsForCfg(x.value, b->As<Return>()->value);
          },
          [&](const Emit& x) {
            return EquivalentExprsForCfg(x.event, b->As<Emit>()->event);
          },
          [&](const VarDecl& x) {
            const auto& y = *b->As<VarDecl>();
            if (x.tuple != y.tuple ||
                x.declarators.size() != y.declarators.size()) {
              return false;
            }
            for (std::size_t i = 0; i < x.declarators.size(); ++i) {
              const auto& p = x.declarators[i];
              const auto& q = y.declarators[i];
              if (p.has_value() != q.has_value()) {
                return false;
              }
              if (p && (p->name != q->name || p->location != q->location ||
                        !SameTokens(p->type, q->type))) {
                return false;
              }
            }
            return EquivalentExprsForCfg(x.init, y.init);
          },
          [&](const RawStmt& x) {
            return SameTokens(x.text, b->As<RawStmt>()->text);
          },
          [&](const Break&) { return true; },
          [&](const Continue&) { return true; },
          [&](const auto&) {
            return PrintStmtCanonical(a) == PrintStmtCanonical(b);
          },
      },
      a->node);
}

bool CfgEqual(const Cfg& a, const Cfg& b) {
  std::map<int, int> forward;
  std::map<int, int> backward;
  std::vector<std::pair<int, int>> stack = {{Cfg::kEntry, Cfg::kEntry}};
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    auto fx = forward.find(x);
    auto by = backward.find(y);
    if (fx != forward.end() || by != backward.end()) {
      if (fx == forward.end() || by == backward.end() || fx->second != y ||
          by->second != x) {
        return false;
      }
      continue;
    }
    forward[x] = y;
    backward[y] = x;
    const CfgNode& p = a.nodes[x];
    const CfgNode& q = b.nodes[y];
    if (!SameNode(p, q)) {
      return false;
    }
    for (const CfgEdge& e : p.out) {
      auto match = std::find_if(q.out.begin(), q.out.end(),
                                [&](const CfgEdge& f) {
                                  return f.label == e.label;
                                });
      if (match == q.out.end()) {
        return false;
      }
      stack.emplace_back(e.target, match->target);
    }
  }
  return true;
}

}  // namespace solmorph
