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

#ifndef SOLMORPH_AST_EQUAL_H
#define SOLMORPH_AST_EQUAL_H

#include "solmorph/ast.h"

namespace solmorph {

// Structural equality. Trivia, spans, verbatim text and redundant
// parentheses are ignored; raw text and headers are compared token by token.
bool StructurallyEqual(const ExprPtr& a, const ExprPtr& b);
bool StructurallyEqual(const StmtPtr& a, const StmtPtr& b);
bool StructurallyEqual(const Member& a, const Member& b);
bool StructurallyEqual(const Fragment& a, const Fragment& b);
bool StructurallyEqual(const SourceUnit& a, const SourceUnit& b);

}  // namespace solmorph

#endif  // SOLMORPH_AST_EQUAL_H
