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

#ifndef SOLMORPH_SUBSTITUTION_H
#define SOLMORPH_SUBSTITUTION_H

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "solmorph/ast.h"

namespace solmorph {

// A purely lexical rewrite: identifier renaming and replacement of the
// `tx.origin` expression by an identifier. It is applied to the tree and to
// the verbatim text of every affected node alike, so rewritten code keeps its
// original layout.
//
// A name is replaced wherever it appears as a plain identifier; member names
// (`x.name`) are left alone except `this.name` for names in
// `function_names`. Keys of named arguments and call options are never
// touched.
struct Substitution {
  std::map<std::string, std::string> names;
  std::set<std::string> function_names;
  std::optional<std::string> tx_origin;

  bool Empty() const { return names.empty() && !tx_origin; }
};

std::string SubstituteText(std::string_view text, const Substitution& subst);

ExprPtr Substitute(const ExprPtr& expr, const Substitution& subst);
StmtPtr Substitute(const StmtPtr& stmt, const Substitution& subst);
Member Substitute(const Member& member, const Substitution& subst);
Fragment Substitute(const Fragment& fragment, const Substitution& subst);

bool IsTxOrigin(const Expr& expr);
bool ContainsTxOrigin(const ExprPtr& expr);

}  // namespace solmorph

#endif  // SOLMORPH_SUBSTITUTION_H
