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

#ifndef SOLMORPH_SYNTAX_UTILS_H
#define SOLMORPH_SYNTAX_UTILS_H

#include <functional>
#include <vector>

#include "solmorph/ast.h"

// Traversal and rebuilding helpers over the immutable syntax tree. Mapping
// functions return the input pointer when nothing changed; rebuilt nodes have
// empty verbatim text.

namespace solmorph {

using ExprFn = std::function<ExprPtr(const ExprPtr&)>;
using StmtFn = std::function<StmtPtr(const StmtPtr&)>;

ExprPtr MapChildren(const ExprPtr& expr, const ExprFn& fn);
void VisitExprs(const ExprPtr& expr, const std::function<void(const Expr&)>& fn);

// Calls, assignments, increments, delete, `new` and raw expressions.
bool HasSideEffects(const ExprPtr& expr);

// A statement with a new node, keeping leading trivia and span.
StmtPtr Rebuild(const StmtPtr& old, Stmt::Node node);

// Expressions owned directly by a statement (not by nested statements). A
// for loop owns its init, condition and post expressions.
std::vector<ExprPtr> OwnExprs(const Stmt& stmt);

// Pre-order over a statement and all nested statements, for-init included.
void VisitStmts(const StmtPtr& stmt, const std::function<void(const Stmt&)>& fn);

// Rebuilds nested statements first, then applies `fn` to the result.
StmtPtr MapStmtsPostOrder(const StmtPtr& stmt, const StmtFn& fn);

// Applies `fn` to every top-level expression in the statement tree.
StmtPtr MapStmtExprs(const StmtPtr& stmt, const ExprFn& fn);

// True if `stmt` contains a break or continue not enclosed by a loop inside
// `stmt`. Raw statements mentioning either keyword count as escaping.
bool HasEscapingJump(const StmtPtr& stmt);

// Function bodies of a function-level fragment, or the statement list of a
// statement-level fragment wrapped in one block.
void ForEachBody(const Fragment& fragment,
                 const std::function<void(const StmtPtr&)>& fn);
Fragment MapBodies(const Fragment& fragment, const StmtFn& fn);

}  // namespace solmorph

#endif  // SOLMORPH_SYNTAX_UTILS_H
