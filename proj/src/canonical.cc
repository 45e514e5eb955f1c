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

#include "solmorph/canonical.h"

#include "solmorph/printer.h"
#include "solmorph/syntax_utils.h"

namespace solmorph {
namespace {

ExprPtr Not(ExprPtr e) {
  if (const auto* u = e->As<Unary>(); u && u->op == UnaryOp::kNot) {
    return u->operand;
  }
  return MakeExpr(Unary{UnaryOp::kNot, std::move(e)});
}

ExprPtr Bin(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  if (op == BinaryOp::kAdd || op == BinaryOp::kMul || op == BinaryOp::kEq) {
    if (PrintExprCanonical(rhs) < PrintExprCanonical(lhs)) {
      std::swap(lhs, rhs);
    }
  }
  return MakeExpr(Binary{op, std::move(lhs), std::move(rhs)});
}

}  // namespace

ExprPtr CanonicalExpr(const ExprPtr& expr) {
  if (!expr) {
    return expr;
  }
  ExprPtr e = MapChildren(expr, CanonicalExpr);
  if (const auto* u = e->As<Unary>(); u && u->op == UnaryOp::kNot) {
    return Not(u->operand);
  }
  const auto* b = e->As<Binary>();
  if (b == nullptr) {
    return e;
  }
  switch (b->op) {
    case BinaryOp::kNe:
      return Not(Bin(BinaryOp::kEq, b->lhs, b->rhs));
    case BinaryOp::kGt:
      return Bin(BinaryOp::kLt, b->rhs, b->lhs);
    case BinaryOp::kGe:
      return Not(Bin(BinaryOp::kLt, b->lhs, b->rhs));
    case BinaryOp::kLe:
      return Not(Bin(BinaryOp::kLt, b->rhs, b->lhs));
    default:
      return Bin(b->op, b->lhs, b->rhs);
  }
}

std::string CanonicalText(const ExprPtr& expr) {
  return PrintExprCanonical(CanonicalExpr(expr));
}

}  // namespace solmorph
