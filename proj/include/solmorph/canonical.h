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

#ifndef SOLMORPH_CANONICAL_H
#define SOLMORPH_CANONICAL_H

#include <string>

#include "solmorph/ast.h"

namespace solmorph {

// A canonical form for comparing expressions independently of how a
// transform spelled them: comparisons are reduced to == and < (with
// negation), double negation is removed and operands of +, * and == are
// sorted by their canonical text. Nothing beyond these rewrites is applied.
ExprPtr CanonicalExpr(const ExprPtr& expr);

// PrintExprCanonical(CanonicalExpr(expr)).
std::string CanonicalText(const ExprPtr& expr);

}  // namespace solmorph

#endif  // SOLMORPH_CANONICAL_H
