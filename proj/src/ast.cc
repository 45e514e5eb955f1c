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

#include "solmorph/ast.h"

#include <utility>

namespace solmorph {

std::string_view ToString(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd:
      return "+";
    case BinaryOp::kSub:
      return "-";
    case BinaryOp::kMul:
      return "*";
    case BinaryOp::kDiv:
      return "/";
    case BinaryOp::kMod:
      return "%";
    case BinaryOp::kExp:
      return "**";
    case BinaryOp::kEq:
      return "==";
    case BinaryOp::kNe:
      return "!=";
    case BinaryOp::kLt:
      return "<";
    case BinaryOp::kGt:
      return ">";
    case BinaryOp::kLe:
      return "<=";
    case BinaryOp::kGe:
      return ">=";
    case BinaryOp::kAnd:
      return "&&";
    case BinaryOp::kOr:
      return "||";
    case BinaryOp::kBitAnd:
      return "&";
    case BinaryOp::kBitOr:
      return "|";
    case BinaryOp::kBitXor:
      return "^";
    case BinaryOp::kShl:
      return "<<";
    case BinaryOp::kShr:
      return ">>";
  }
  return "?";
}

std::string_view ToString(UnaryOp op) {
  switch (op) {
    case UnaryOp::kNot:
      return "!";
    case UnaryOp::kNeg:
      return "-";
    case UnaryOp::kBitNot:
      return "~";
    case UnaryOp::kPreInc:
    case UnaryOp::kPostInc:
      return "++";
    case UnaryOp::kPreDec:
    case UnaryOp::kPostDec:
      return "--";
    case UnaryOp::kDelete:
      return "delete";
  }
  return "?";
}

Span Member::span() const {
  return std::visit([](const auto& m) { return m.span; }, node);
}

std::vector<std::string> SourceUnit::Pragmas() const {
  std::vector<std::string> out;
  for (const auto& item : items) {
    if (const auto* raw = std::get_if<RawRegion>(&item.node)) {
      if (raw->text.starts_with("pragma")) {
        out.push_back(raw->text);
      }
    }
  }
  return out;
}

std::vector<const ContractDef*> SourceUnit::Contracts() const {
  std::vector<const ContractDef*> out;
  for (const auto& item : items) {
    if (const auto* contract = std::get_if<ContractDef>(&item.node)) {
      out.push_back(contract);
    }
  }
  return out;
}

ExprPtr MakeExpr(Expr::Node node) {
  auto expr = std::make_shared<Expr>();
  expr->node = std::move(node);
  return expr;
}

StmtPtr MakeStmt(Stmt::Node node, std::string leading) {
  auto stmt = std::make_shared<Stmt>();
  stmt->node = std::move(node);
  stmt->leading = std::move(leading);
  return stmt;
}

StmtPtr WithLeading(const StmtPtr& stmt, std::string leading) {
  if (stmt->leading == leading) {
    return stmt;
  }
  auto copy = std::make_shared<Stmt>(*stmt);
  copy->leading = std::move(leading);
  return copy;
}

}  // namespace solmorph
