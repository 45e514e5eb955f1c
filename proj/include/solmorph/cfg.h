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

#ifndef SOLMORPH_CFG_H
#define SOLMORPH_CFG_H

#include <stdexcept>
#include <string>
#include <vector>

#include "solmorph/ast.h"

namespace solmorph {

enum class CfgNodeKind { kEntry, kExit, kBasic, kCond };
enum class EdgeLabel { kFallthrough, kTrue, kFalse };

std::string_view ToString(CfgNodeKind kind);
std::string_view ToString(EdgeLabel label);

struct CfgEdge {
  EdgeLabel label = EdgeLabel::kFallthrough;
  int target = -1;
};

// A basic node holds simple statements (expression statements, declarations,
// returns, emits); a condition node holds the branch expression and has
// exactly one true and one false edge.
struct CfgNode {
  CfgNodeKind kind = CfgNodeKind::kBasic;
  std::vector<StmtPtr> statements;
  ExprPtr cond;
  std::vector<CfgEdge> out;
};

// Node 0 is the entry and node 1 the exit.
struct Cfg {
  static constexpr int kEntry = 0;
  static constexpr int kExit = 1;

  std::vector<CfgNode> nodes;

  std::size_t EdgeCount() const;
  std::vector<int> Predecessors(int node) const;
  // One line per node: `<id> <kind> [summary] -> label:target ...`.
  std::string ToString() const;
};

class RawEncountered : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CfgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One basic node per simple statement; loops get a condition node (a literal
// `true` when a for loop has none) and for loops a separate node for the
// post expression. Throws RawEncountered on raw statements and CfgError on a
// break or continue outside a loop.
Cfg BuildCfg(const StmtPtr& body);

// Rewrites to a fixpoint: drops unreachable nodes; forwards declarations of
// never-written temporaries initialized from transaction or block constants;
// drops side-effect-free declarations whose variables are never read; drops
// empty basic nodes; merges straight-line chains of basic nodes; strips a
// leading negation from conditions by swapping the true and false edges.
Cfg NormalizeCfg(const Cfg& cfg);

// Label-respecting isomorphism. Node contents are compared by canonical
// text, then structurally, with arithmetic subterms compared by an
// exhaustive small-width sweep.
bool CfgEqual(const Cfg& a, const Cfg& b);

bool EquivalentStmts(const StmtPtr& a, const StmtPtr& b);
bool EquivalentExprsForCfg(const ExprPtr& a, const ExprPtr& b);

}  // namespace solmorph

#endif  // SOLMORPH_CFG_H
