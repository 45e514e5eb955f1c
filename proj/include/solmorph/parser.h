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

#ifndef SOLMORPH_PARSER_H
#define SOLMORPH_PARSER_H

#include <string_view>

#include "solmorph/ast.h"

namespace solmorph {

// Parses a Solidity source file. Contracts, functions, state variables,
// statements and expressions of the supported subset are structured; any
// other region is kept as raw text. Throws ParseError only when brackets are
// unbalanced (or a string/comment is unterminated); a statement the subset
// grammar cannot model becomes a RawStmt instead.
SourceUnit Parse(std::string_view source);

// Parses a snippet: a sequence of contract members, or of statements.
Fragment ParseFragment(std::string_view source, FragmentKind kind);

// Parses a single expression (used by tests and the oracle).
ExprPtr ParseExpression(std::string_view source);

// Parses a single statement.
StmtPtr ParseStatement(std::string_view source);

}  // namespace solmorph

#endif  // SOLMORPH_PARSER_H
