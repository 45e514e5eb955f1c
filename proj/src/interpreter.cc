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

#include "solmorph/interpreter.h"

#include <algorithm>
#include <cctype>
#include <optional>

#include "solmorph/canonical.h"

namespace solmorph {
namespace {

// Flattened expression: nodes in post-order, children referenced by index.
struct Node {
  enum class Op {
    kConst,
    kLeaf,
    kBinary,
    kUnary,
    kConditional,
  };
  Op op = Op::kConst;
  Value constant;
  int leaf = -1;
  BinaryOp binary = BinaryOp::kAdd;
  UnaryOp unary = UnaryOp::kNot;
  int a = -1, b = -1, c = -1;
};

struct Program {
  std::vector<Node> nodes;
  int root = -1;
};

std::uint64_t Mask(int width) {
  return width >= 64 ? ~0ULL : (1ULL << width) - 1;
}

std::optional<std::uint64_t> Denomination(std::string_view unit) {
  static const std::pair<std::string_view, std::uint64_t> kUnits[] = {
      {"wei", 1ULL},
      {"gwei", 1000000000ULL},
      {"szabo", 1000000000000ULL},
      {"finney", 1000000000000000ULL},
      {"ether", 1000000000000000000ULL},
      {"seconds", 1ULL},
      {"minutes", 60ULL},
      {"hours", 3600ULL},
      {"days", 86400ULL},
      {"weeks", 604800ULL},
      {"years", 31536000ULL},
  };
  for (const auto& [name, factor] : kUnits) {
    if (name == unit) {
      return factor;
    }
  }
  return std::nullopt;
}

// Numeric literal value modulo 2^64 (and therefore modulo 2^width).
std::optional<std::uint64_t> NumericLiteral(std::string_view text) {
  std::size_t space = text.find_first_of(" \t\n");
  std::string_view number = text.substr(0, space);
  std::uint64_t factor = 1;
  if (space != std::string_view::npos) {
    std::string_view unit = text.substr(space);
    unit.remove_prefix(std::min(unit.find_first_not_of(" \t\n"), unit.size()));
    auto d = Denomination(unit);
    if (!d) {
      return std::nullopt;
    }
    factor = *d;
  }
  if (number.empty() || !std::isdigit(static_cast<unsigned char>(number[0]))) {
    return std::nullopt;
  }
  std::uint64_t value = 0;
  if (number.size() > 2 && number[0] == '0' &&
      (number[1] == 'x' || number[1] == 'X')) {
    for (char ch : number.substr(2)) {
      if (ch == '_') {
        continue;
      }
      if (!std::isxdigit(static_cast<unsigned char>(ch))) {
        return std::nullopt;
      }
      int digit = std::isdigit(static_cast<unsigned char>(ch))
                      ? ch - '0'
                      : std::tolower(static_cast<unsigned char>(ch)) - 'a' + 10;
      value = value * 16 + static_cast<std::uint64_t>(digit);
    }
    return value * factor;
  }
  std::size_t i = 0;
  for (; i < number.size(); ++i) {
    char ch = number[i];
    if (ch == '_') {
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      break;
    }
    value = value * 10 + static_cast<std::uint64_t>(ch - '0');
  }
  if (i < number.size()) {
    if (number[i] != 'e' && number[i] != 'E') {
      return std::nullopt;  // fractional literals are not modelled
    }
    std::uint64_t exponent = 0;
    for (char ch : number.substr(i + 1)) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) {
        return std::nullopt;
      }
      exponent = exponent * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    for (std::uint64_t k = 0; k < exponent && value != 0; ++k) {
      value *= 10;
    }
  }
  return value * factor;
}

class Compiler {
 public:
  explicit Compiler(std::map<std::string, int>& leaves) : leaves_(leaves) {}

  int Compile(const ExprPtr& e, Program& p) {
    Node node;
    if (const auto* b = e->As<Binary>()) {
      node.op = Node::Op::kBinary;
      node.binary = b->op;
      node.a = Compile(b->lhs, p);
      node.b = Compile(b->rhs, p);
    } else if (const auto* u = e->As<Unary>();
               u && (u->op == UnaryOp::kNot || u->op == UnaryOp::kNeg ||
                     u->op == UnaryOp::kBitNot)) {
      node.op = Node::Op::kUnary;
      node.unary = u->op;
      node.a = Compile(u->operand, p);
    } else if (const auto* c = e->As<Conditional>()) {
      node.op = Node::Op::kConditional;
      node.a = Compile(c->cond, p);
      node.b = Compile(c->then_value, p);
      node.c = Compile(c->else_value, p);
    } else if (const auto* t = e->As<Tuple>();
               t && t->elements.size() == 1 && t->elements[0]) {
      return Compile(t->elements[0], p);
    } else if (const auto* lit = e->As<Literal>();
               lit && (lit->text == "true" || lit->text == "false")) {
      node.constant = Value::Bool(lit->text == "true");
    } else if (auto number = lit ? NumericLiteral(lit->text) : std::nullopt) {
      node.constant = Value::Int(*number);
    } else {
      std::string key = e->Is<Identifier>() ? e->As<Identifier>()->name
                                            : CanonicalText(e);
      auto [it, inserted] =
          leaves_.emplace(key, static_cast<int>(leaves_.size()));
      node.op = Node::Op::kLeaf;
      node.leaf = it->second;
    }
    p.nodes.push_back(node);
    return static_cast<int>(p.nodes.size()) - 1;
  }

 private:
  std::map<std::string, int>& leaves_;
};

class Machine {
 public:
  Machine(const Program& p, int width, Semantics semantics)
      : p_(p), mask_(Mask(width)), checked_(semantics == Semantics::kChecked) {}

  Value Run(const std::vector<std::uint64_t>& leaves, EvalTrace* trace) {
    leaves_ = &leaves;
    trace_ = trace;
    return Eval(p_.root);
  }

 private:
  static std::uint64_t AsInt(const Value& v) { return v.bits; }
  static bool AsBool(const Value& v) { return v.bits != 0; }

  Value Overflow() const { return Value::Signal(Value::Kind::kOverflow); }

  Value Arith(BinaryOp op, std::uint64_t x, std::uint64_t y) {
    switch (op) {
      case BinaryOp::kAdd: {
        unsigned __int128 r = static_cast<unsigned __int128>(x) + y;
        if (checked_ && r > mask_) {
          return Overflow();
        }
        return Value::Int(static_cast<std::uint64_t>(r) & mask_);
      }
      case BinaryOp::kSub:
        if (checked_ && x < y) {
          return Overflow();
        }
        return Value::Int((x - y) & mask_);
      case BinaryOp::kMul: {
        unsigned __int128 r = static_cast<unsigned __int128>(x) * y;
        if (checked_ && r > mask_) {
          return Overflow();
        }
        return Value::Int(static_cast<std::uint64_t>(r) & mask_);
      }
      case BinaryOp::kDiv:
      case BinaryOp::kMod:
        if (y == 0) {
          if (trace_) {
            trace_->div_by_zero = true;
          }
          return Value::Signal(Value::Kind::kDivByZero);
        }
        if (trace_ && x % y != 0) {
          trace_->truncated = true;
        }
        return Value::Int(op == BinaryOp::kDiv ? x / y : x % y);
      case BinaryOp::kExp: {
        unsigned __int128 r = 1;
        for (std::uint64_t k = 0; k < y; ++k) {
          r *= x;
          if (r > mask_) {
            if (checked_) {
              return Overflow();
            }
            r &= mask_;
          }
          if (r == 0 || r == 1) {
            break;
          }
        }
        return Value::Int(static_cast<std::uint64_t>(r) & mask_);
      }
      case BinaryOp::kBitAnd:
        return Value::Int(x & y);
      case BinaryOp::kBitOr:
        return Value::Int(x | y);
      case BinaryOp::kBitXor:
        return Value::Int(x ^ y);
      case BinaryOp::kShl:
        return Value::Int(y >= 64 ? 0 : (x << y) & mask_);
      case BinaryOp::kShr:
        return Value::Int(y >= 64 ? 0 : x >> y);
      case BinaryOp::kEq:
        return Value::Bool(x == y);
      case BinaryOp::kNe:
        return Value::Bool(x != y);
      case BinaryOp::kLt:
        return Value::Bool(x < y);
      case BinaryOp::kGt:
        return Value::Bool(x > y);
      case BinaryOp::kLe:
        return Value::Bool(x <= y);
      case BinaryOp::kGe:
        return Value::Bool(x >= y);
      default:
        return Value::Int(0);
    }
  }

  Value Eval(int index) {
    const Node& n = p_.nodes[index];
    switch (n.op) {
      case Node::Op::kConst:
        return n.constant.kind == Value::Kind::kInt
                   ? Value::Int(n.constant.bits & mask_)
                   : n.constant;
      case Node::Op::kLeaf:
        return Value::Int((*leaves_)[n.leaf] & mask_);
      case Node::Op::kConditional: {
        Value c = Eval(n.a);
        if (c.IsSignal()) {
          return c;
        }
        return AsBool(c) ? Eval(n.b) : Eval(n.c);
      }
      case Node::Op::kUnary: {
        Value v = Eval(n.a);
        if (v.IsSignal()) {
          return v;
        }
        switch (n.unary) {
          case UnaryOp::kNot:
            return Value::Bool(!AsBool(v));
          case UnaryOp::kNeg:
            if (checked_ && AsInt(v) != 0) {
              return Overflow();
            }
            return Value::Int((0 - AsInt(v)) & mask_);
          default:
            return Value::Int(~AsInt(v) & mask_);
        }
      }
      case Node::Op::kBinary: {
        Value x = Eval(n.a);
        if (x.IsSignal()) {
          return x;
        }
        if (n.binary == BinaryOp::kAnd || n.binary == BinaryOp::kOr) {
          bool short_circuit = (n.binary == BinaryOp::kAnd) != AsBool(x);
          if (short_circuit) {
            return Value::Bool(AsBool(x));
          }
          Value y = Eval(n.b);
          return y.IsSignal() ? y : Value::Bool(AsBool(y));
        }
        Value y = Eval(n.b);
        if (y.IsSignal()) {
          return y;
        }
        return Arith(n.binary, AsInt(x), AsInt(y));
      }
    }
    return Value::Int(0);
  }

  const Program& p_;
  std::uint64_t mask_;
  bool checked_;
  const std::vector<std::uint64_t>* leaves_ = nullptr;
  EvalTrace* trace_ = nullptr;
};

Program CompileWith(const ExprPtr& e, std::map<std::string, int>& leaves) {
  Program p;
  p.root = Compiler(leaves).Compile(e, p);
  return p;
}

}  // namespace

std::string ToString(const Value& value) {
  switch (value.kind) {
    case Value::Kind::kInt:
      return std::to_string(value.bits);
    case Value::Kind::kBool:
      return value.bits ? "true" : "false";
    case Value::Kind::kDivByZero:
      return "DivByZero";
    case Value::Kind::kOverflow:
      return "Overflow";
  }
  return "";
}

std::vector<std::string> FreeVariables(const ExprPtr& expr) {
  std::map<std::string, int> leaves;
  CompileWith(expr, leaves);
  std::vector<std::string> out;
  for (const auto& [name, index] : leaves) {
    out.push_back(name);
  }
  return out;
}

Value EvalExpr(const ExprPtr& expr, const EvalEnv& env, EvalTrace* trace) {
  std::map<std::string, int> leaves;
  Program p = CompileWith(expr, leaves);
  std::vector<std::uint64_t> values(leaves.size());
  for (const auto& [name, index] : leaves) {
    auto it = env.bindings.find(name);
    if (it == env.bindings.end()) {
      throw UnboundIdentifier("unbound identifier: " + name);
    }
    values[index] = it->second;
  }
  return Machine(p, env.width, env.semantics).Run(values, trace);
}

bool EquivalenceResult::HasWitness(
    const std::map<std::string, std::uint64_t>& assignment) const {
  std::vector<std::uint64_t> wanted;
  for (const std::string& v : variables) {
    auto it = assignment.find(v);
    if (it == assignment.end()) {
      return false;
    }
    wanted.push_back(it->second);
  }
  return std::find(witnesses.begin(), witnesses.end(), wanted) !=
         witnesses.end();
}

EquivalenceResult EquivalentExprs(const ExprPtr& lhs, const ExprPtr& rhs,
                                  int width, Semantics semantics,
                                  std::size_t max_witnesses) {
  std::map<std::string, int> leaves;
  Program pl = CompileWith(lhs, leaves);
  Program pr = CompileWith(rhs, leaves);
  EquivalenceResult result;
  for (const auto& [name, index] : leaves) {
    result.variables.push_back(name);
  }
  std::size_t n = leaves.size();
  if (n * static_cast<std::size_t>(width) > kMaxSweepBits) {
    throw DomainTooLarge("sweep domain too large: " + std::to_string(n) +
                         " variables at " + std::to_string(width) + " bits");
  }
  // Sweep order follows the sorted variable names; `order[i]` is the leaf
  // slot of the i-th sorted variable.
  std::vector<int> order;
  for (const auto& [name, index] : leaves) {
    order.push_back(index);
  }
  Machine ml(pl, width, semantics);
  Machine mr(pr, width, semantics);
  std::uint64_t per_var = 1ULL << width;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= per_var;
  }
  std::vector<std::uint64_t> slots(n);
  std::vector<std::uint64_t> sorted(n);
  for (std::uint64_t k = 0; k < total; ++k) {
    std::uint64_t rest = k;
    for (std::size_t i = n; i-- > 0;) {
      sorted[i] = rest % per_var;
      rest /= per_var;
      slots[order[i]] = sorted[i];
    }
    if (ml.Run(slots, nullptr) != mr.Run(slots, nullptr)) {
      result.equal = false;
      ++result.divergent;
      if (result.witnesses.size() < max_witnesses) {
        result.witnesses.push_back(sorted);
      }
    }
  }
  result.cases = total;
  return result;
}

}  // namespace solmorph
