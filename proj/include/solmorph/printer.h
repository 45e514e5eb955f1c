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

#ifndef SOLMORPH_PRINTER_H
#define SOLMORPH_PRINTER_H

#include <string>
#include <string_view>

#include "solmorph/ast.h"

namespace solmorph {

std::string Print(const SourceUnit& unit);
std::string Print(const Fragment& fragment);
std::string Print(const ContractDef& contract);

// A member or statement without its leading trivia. `indent` is the
// indentation of the line the node starts on; it only matters for nodes
// built by a transform.
std::string PrintMember(const Member& member);
std::string PrintStmt(const StmtPtr& stmt, std::string_view indent = "");
std::string PrintExpr(const ExprPtr& expr);

// Prints from structure only, ignoring verbatim text: every binary
// expression is parenthesized. Stable across formatting differences.
std::string PrintExprCanonical(const ExprPtr& expr);
std::string PrintStmtCanonical(const StmtPtr& stmt);

// Whitespace after the last newline of `trivia`, or "" without a newline.
std::string IndentOf(std::string_view trivia);

}  // namespace solmorph

#endif  // SOLMORPH_PRINTER_H
