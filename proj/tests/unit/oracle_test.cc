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

#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "solmorph/canonical.h"
#include "solmorph/cfg.h"
#include "solmorph/interpreter.h"
#include "solmorph/parser.h"
#include "solmorph/printer.h"
#include "solmorph/syntax_utils.h"
#include "solmorph/verify.h"
#include "test_util.h"

namespace solmorph {
namespace {

Value Eval(const std::string& src, std::map<std::string, std::uint64_t> vars,
           int width = 8, Semantics semantics = Semantics::kWrap) {
  EvalEnv env;
  env.width = width;
  env.semantics = semantics;
  env.bindings = std::move(vars);
  return EvalExpr(ParseExpression(src), env);
}

EquivalenceResult Sweep(const std::string& a, const std::string& b,
                        int width = 8) {
  return EquivalentExprs(ParseExpression(a), ParseExpression(b), width);
}

StmtPtr Body(const std::string& src) { return ParseStatement(src); }

Cfg Normalized(const std::string& src) {
  return NormalizeCfg(BuildCfg(Body(src)));
}

const FunctionDef& OnlyFunction(const SourceUnit& unit) {
  for (const Member& m : unit.Contracts().front()->members) {
    if (const auto* fn = m.As<FunctionDef>()) {
      return *fn;
    }
  }
  throw std::runtime_error("no function");
}

std::vector<Snippet> Corpus() {
  return LoadCorpus(testing::DataDir("corpus"));
}

// ---------------------------------------------------------------------------
// Interpreter

TEST(InterpreterTest, WrapArithmetic) {
  EXPECT_EQ(Eval("a + b", {{"a", 200}, {"b", 100}}), Value::Int(44));
  EXPECT_EQ(Eval("-(b - a)", {{"a", 5}, {"b", 3}}), Value::Int(2));
  EXPECT_EQ(Eval("a - b", {{"a", 5}, {"b", 3}}), Value::Int(2));
  EXPECT_EQ(Eval("a - b", {{"a", 3}, {"b", 5}}), Value::Int(254));
  EXPECT_EQ(Eval("a * b", {{"a", 16}, {"b", 17}}), Value::Int(16));
  EXPECT_EQ(Eval("a ** 2", {{"a", 17}}), Value::Int(33));
  EXPECT_EQ(Eval("~a", {{"a", 0}}), Value::Int(255));
  EXPECT_EQ(Eval("a << 4", {{"a", 0x1f}}), Value::Int(0xf0));
  EXPECT_EQ(Eval("a % 7", {{"a", 20}}), Value::Int(6));
}

TEST(InterpreterTest, DivisionByZeroIsASignal) {
  EXPECT_EQ(Eval("1 / (b / a)", {{"a", 6}, {"b", 3}}),
            Value::Signal(Value::Kind::kDivByZero));
  EXPECT_EQ(Eval("a / b", {{"a", 6}, {"b", 3}}), Value::Int(2));
  EXPECT_EQ(Eval("a % b", {{"a", 6}, {"b", 0}}),
            Value::Signal(Value::Kind::kDivByZero));
}

TEST(InterpreterTest, CheckedSemanticsSignalsOverflow) {
  EXPECT_EQ(Eval("a + b", {{"a", 200}, {"b", 100}}, 8, Semantics::kChecked),
            Value::Signal(Value::Kind::kOverflow));
  EXPECT_EQ(Eval("a - b", {{"a", 3}, {"b", 5}}, 8, Semantics::kChecked),
            Value::Signal(Value::Kind::kOverflow));
  EXPECT_EQ(Eval("-(b - a)", {{"a", 5}, {"b", 3}}, 8, Semantics::kChecked),
            Value::Signal(Value::Kind::kOverflow));
  EXPECT_EQ(Eval("a + b", {{"a", 100}, {"b", 100}}, 8, Semantics::kChecked),
            Value::Int(200));
}

TEST(InterpreterTest, BooleansAndComparisons) {
  EXPECT_EQ(Eval("a < b", {{"a", 1}, {"b", 2}}), Value::Bool(true));
  EXPECT_EQ(Eval("!(b <= a)", {{"a", 1}, {"b", 2}}), Value::Bool(true));
  EXPECT_EQ(Eval("a != b && a >= 1", {{"a", 1}, {"b", 2}}), Value::Bool(true));
  EXPECT_EQ(Eval("true || a / b > 0", {{"a", 1}, {"b", 0}}), Value::Bool(true));
  EXPECT_EQ(Eval("a > 0 ? a : b", {{"a", 0}, {"b", 9}}), Value::Int(9));
}

TEST(InterpreterTest, LiteralsAndDenominations) {
  EXPECT_EQ(Eval("0x1_0 + 1", {}), Value::Int(17));
  EXPECT_EQ(Eval("2e2", {}, 16), Value::Int(200));
  EXPECT_EQ(Eval("1 minutes", {}, 16), Value::Int(60));
  EXPECT_EQ(Eval("1 days", {}, 32), Value::Int(86400));
  EXPECT_EQ(Eval("1 days", {}, 8), Value::Int(86400 % 256));
}

TEST(InterpreterTest, NonArithmeticSubtermsAreVariables) {
  ExprPtr e = ParseExpression("balances[msg.sender] - amount + now");
  EXPECT_EQ(FreeVariables(e),
            (std::vector<std::string>{"amount", "balances[msg.sender]", "now"}));
  EXPECT_EQ(Eval("msg.value * 2", {{"msg.value", 3}}), Value::Int(6));
  EXPECT_THROW(Eval("a + b", {{"a", 1}}), UnboundIdentifier);
}

TEST(InterpreterTest, TraceRecordsTruncationAndDivisionByZero) {
  EvalEnv env;
  env.bindings = {{"a", 7}, {"b", 2}};
  EvalTrace trace;
  EvalExpr(ParseExpression("a / b"), env, &trace);
  EXPECT_TRUE(trace.truncated);
  EXPECT_FALSE(trace.div_by_zero);
  env.bindings = {{"a", 6}, {"b", 3}};
  trace = {};
  EvalExpr(ParseExpression("1 / (b / a)"), env, &trace);
  EXPECT_TRUE(trace.div_by_zero);
}

// Reference semantics for the random differential test below.
std::uint64_t Reference(char op, std::uint64_t x, std::uint64_t y, bool& bad) {
  switch (op) {
    case '+':
      return (x + y) & 0xff;
    case '-':
      return (x - y) & 0xff;
    case '*':
      return (x * y) & 0xff;
    case '/':
      bad = bad || y == 0;
      return y == 0 ? 0 : x / y;
    case '%':
      bad = bad || y == 0;
      return y == 0 ? 0 : x % y;
    case '&':
      return x & y;
    case '|':
      return x | y;
    default:
      return x ^ y;
  }
}

TEST(InterpreterTest, MatchesReferenceOnRandomExpressions) {
  std::mt19937 rng(7);
  const std::string ops = "+-*/%&|^";
  for (int round = 0; round < 300; ++round) {
    char op1 = ops[rng() % ops.size()];
    char op2 = ops[rng() % ops.size()];
    std::uint64_t a = rng() % 256, b = rng() % 256, c = rng() % 256;
    std::string src = "(a " + std::string(1, op1) + " b) " +
                      std::string(1, op2) + " c";
    bool bad = false;
    std::uint64_t expected = Reference(op2, Reference(op1, a, b, bad), c, bad);
    Value got = Eval(src, {{"a", a}, {"b", b}, {"c", c}});
    if (bad) {
      EXPECT_EQ(got, Value::Signal(Value::Kind::kDivByZero)) << src;
    } else {
      EXPECT_EQ(got, Value::Int(expected)) << src << " a=" << a << " b=" << b
                                           << " c=" << c;
    }
  }
}

// ---------------------------------------------------------------------------
// Sweeps

TEST(SweepTest, EqualPairs) {
  for (const auto& [a, b] : std::vector<std::pair<std::string, std::string>>{
           {"a + b", "b + a"},
           {"a * b", "b * a"},
           {"a - b", "-(b - a)"},
           {"a < b", "!(b <= a)"},
           {"a != b", "!(b == a)"},
           {"a > b", "!(a <= b)"},
           {"a == b", "b == a"}}) {
    EquivalenceResult r = Sweep(a, b);
    EXPECT_TRUE(r.equal) << a << " vs " << b;
    EXPECT_EQ(r.cases, 65536u);
    EXPECT_EQ(r.divergent, 0u);
  }
}

TEST(SweepTest, DivisionRewriteDiverges) {
  EquivalenceResult r = Sweep("a / b", "1 / (b / a)");
  EXPECT_FALSE(r.equal);
  EXPECT_EQ(r.variables, (std::vector<std::string>{"a", "b"}));
  EXPECT_FALSE(r.witnesses.empty());
  EXPECT_TRUE(r.HasWitness({{"a", 6}, {"b", 3}}));
  EXPECT_FALSE(r.HasWitness({{"a", 1}, {"b", 1}}));
}

TEST(SweepTest, WrongRewritesAreCaught) {
  EXPECT_FALSE(Sweep("a - b", "b - a").equal);
  EXPECT_FALSE(Sweep("a < b", "!(b < a)").equal);
  EXPECT_FALSE(Sweep("a != b", "b == a").equal);
}

TEST(SweepTest, DivisionWitnessesInvolveTruncationOrZero) {
  ExprPtr lhs = ParseExpression("a / b");
  ExprPtr rhs = ParseExpression("1 / (b / a)");
  EquivalenceResult r = EquivalentExprs(lhs, rhs, 6);
  ASSERT_FALSE(r.witnesses.empty());
  for (const auto& w : r.witnesses) {
    EvalEnv env;
    env.width = 6;
    env.bindings = {{"a", w[0]}, {"b", w[1]}};
    EvalTrace left, right;
    EvalExpr(lhs, env, &left);
    EvalExpr(rhs, env, &right);
    EXPECT_TRUE(left.truncated || left.div_by_zero || right.truncated ||
                right.div_by_zero)
        << "a=" << w[0] << " b=" << w[1];
  }
}

TEST(SweepTest, DomainCap) {
  EXPECT_THROW(Sweep("a + b + c + d", "d + c + b + a"), DomainTooLarge);
  EXPECT_TRUE(Sweep("a + b + c + d", "d + c + b + a", 4).equal);
}

TEST(CanonicalTest, Forms) {
  EXPECT_EQ(CanonicalText(ParseExpression("a > b")), "(b < a)");
  EXPECT_EQ(CanonicalText(ParseExpression("!(!(x))")), "x");
  EXPECT_EQ(CanonicalText(ParseExpression("a != b")),
            CanonicalText(ParseExpression("!(b == a)")));
  EXPECT_EQ(CanonicalText(ParseExpression("a >= b")),
            CanonicalText(ParseExpression("!(a < b)")));
  EXPECT_EQ(CanonicalText(ParseExpression("b + a")),
            CanonicalText(ParseExpression("a + b")));
}

// ---------------------------------------------------------------------------
// Control-flow graphs

TEST(CfgTest, EmptyBlock) {
  Cfg g = BuildCfg(Body("{ }"));
  ASSERT_EQ(g.nodes.size(), 2u);
  ASSERT_EQ(g.nodes[Cfg::kEntry].out.size(), 1u);
  EXPECT_EQ(g.nodes[Cfg::kEntry].out[0].target, Cfg::kExit);
}

TEST(CfgTest, GuardedSubShape) {
  SourceUnit unit =
      Parse(testing::ReadFile(testing::Fixture("samples/guarded_sub.sol")));
  Cfg g = BuildCfg(OnlyFunction(unit).body);
  EXPECT_EQ(g.ToString(),
            "0 entry -> ft:2\n"
            "1 exit ->\n"
            "2 cond [(p_intou7 > 0)] -> true:3 false:1\n"
            "3 basic [vundflw = (vundflw - p_intou7);] -> ft:1\n");
}

TEST(CfgTest, LoopGuardedSubIsLoopShaped) {
  SourceUnit unit =
      Parse(testing::ReadFile(testing::Fixture("samples/loop_guarded_sub.sol")));
  Cfg g = BuildCfg(OnlyFunction(unit).body);
  EXPECT_EQ(g.ToString(),
            "0 entry -> ft:2\n"
            "1 exit ->\n"
            "2 basic [uint i = 0;] -> ft:3\n"
            "3 cond [(p_intou7 > 0)] -> true:5 false:1\n"
            "4 basic [i++;] -> ft:3\n"
            "5 basic [vundflw = (vundflw - p_intou7);] -> ft:1\n");
  EXPECT_EQ(g.Predecessors(4).size(), 0u);
}

TEST(CfgTest, GuardedSubEqualsLoopAfterNormalization) {
  SourceUnit u1 =
      Parse(testing::ReadFile(testing::Fixture("samples/guarded_sub.sol")));
  SourceUnit u2 =
      Parse(testing::ReadFile(testing::Fixture("samples/loop_guarded_sub.sol")));
  const FunctionDef& f1 = OnlyFunction(u1);
  const FunctionDef& f2 = OnlyFunction(u2);
  Cfg a = NormalizeCfg(BuildCfg(f1.body));
  Cfg b = NormalizeCfg(BuildCfg(f2.body));
  EXPECT_TRUE(CfgEqual(a, b)) << a.ToString() << "\n" << b.ToString();
  EXPECT_FALSE(CfgEqual(BuildCfg(f1.body), BuildCfg(f2.body)));
}

TEST(CfgTest, SelfEquality) {
  Cfg g = Normalized("{ if (a > 0) { x = 1; } else { x = 2; } return x; }");
  EXPECT_TRUE(CfgEqual(g, g));
}

TEST(CfgTest, TwoBranchIfDiffers) {
  Cfg one = Normalized("{ if (p > 0) { v = v - p; } }");
  Cfg two = Normalized("{ if (p > 0) { v = v - p; } else { v = 0; } }");
  EXPECT_FALSE(CfgEqual(one, two));
  EXPECT_FALSE(CfgEqual(two, one));
}

TEST(CfgTest, NegatedConditionWithSwappedBranches) {
  Cfg a = Normalized("{ if (a < b) { x = 1; } else { y = 2; } }");
  Cfg b = Normalized("{ if (!(a < b)) { y = 2; } else { x = 1; } }");
  Cfg c = Normalized("{ if (!(a < b)) { x = 1; } else { y = 2; } }");
  EXPECT_TRUE(CfgEqual(a, b));
  EXPECT_FALSE(CfgEqual(a, c));
}

TEST(CfgTest, ComparatorUsesSweepsForArithmetic) {
  EXPECT_TRUE(CfgEqual(Normalized("{ x = a - b; }"),
                       Normalized("{ x = -(b - a); }")));
  EXPECT_TRUE(CfgEqual(Normalized("{ m[a - b] = f(a + 1); }"),
                       Normalized("{ m[-(b - a)] = f(1 + a); }")));
  EXPECT_FALSE(CfgEqual(Normalized("{ x = a - b; }"),
                        Normalized("{ x = b - a; }")));
  EXPECT_FALSE(CfgEqual(Normalized("{ f(a); }"), Normalized("{ g(a); }")));
}

TEST(CfgTest, ConstantTemporariesAreForwarded) {
  EXPECT_TRUE(CfgEqual(
      Normalized("{ require(tx.origin == owner); }"),
      Normalized("{ address t = tx.origin; require(t == owner); }")));
  EXPECT_FALSE(CfgEqual(
      Normalized("{ require(tx.origin == owner); }"),
      Normalized("{ address t = tx.origin; t = other; require(t == owner); }")));
}

TEST(CfgTest, BreakAndContinue) {
  Cfg g = BuildCfg(Body("{ while (a) { if (b) { break; } if (c) { continue; } "
                        "x = 1; } y = 2; }"));
  Cfg n = NormalizeCfg(g);
  EXPECT_TRUE(CfgEqual(n, NormalizeCfg(n)));
  EXPECT_THROW(BuildCfg(Body("{ break; }")), CfgError);
  EXPECT_THROW(BuildCfg(Body("{ assembly { let x := 1 } }")), RawEncountered);
}

TEST(CfgTest, ForWithoutConditionLoopsOnTrue) {
  Cfg g = BuildCfg(Body("{ for (;;) { x = 1; } }"));
  EXPECT_NE(g.ToString().find("cond [true]"), std::string::npos);
}

TEST(CfgTest, NormalizationIsIdempotent) {
  for (const std::string& src : {
           "{ }",
           "{ if (p > 0) { v = v - p; } }",
           "{ for (uint i = 0; p > 0; i++) { v = v - p; break; } }",
           "{ uint z = 0; while (!(a != b)) { x = 1; break; } return; }",
           "{ address t = tx.origin; if (t == o) { x = 1; } else { "
           "revert(); } }",
       }) {
    Cfg once = Normalized(src);
    Cfg twice = NormalizeCfg(once);
    EXPECT_EQ(once.ToString(), twice.ToString()) << src;
    EXPECT_TRUE(CfgEqual(once, twice)) << src;
  }
}

TEST(CfgTest, RandomBodiesWhileBreakMatchesIf) {
  const std::vector<std::string> pool = {
      "x = x + 1;",
      "balances[msg.sender] = 0;",
      "if (y > 2) { z = 3; } else { z = 4; }",
      "emit Done(x);",
      "require(ok);",
      "msg.sender.transfer(amount);",
      "if (q) { return; }",
      "uint t = x * 2; w = t;",
  };
  std::mt19937 rng(20260101);
  for (int round = 0; round < 5; ++round) {
    std::string body;
    int n = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) {
      body += pool[rng() % pool.size()] + " ";
    }
    Cfg plain = Normalized("{ if (e < 5) { " + body + "} }");
    Cfg loop = Normalized("{ while (e < 5) { " + body + "break; } }");
    Cfg counted = Normalized("{ for (uint k = 0; e < 5; k++) { " + body +
                             "break; } }");
    EXPECT_TRUE(CfgEqual(plain, loop)) << body;
    EXPECT_TRUE(CfgEqual(plain, counted)) << body;
  }
}

// ---------------------------------------------------------------------------
// Variant verification

TEST(VerifyTest, EveryCorpusVariantPasses) {
  auto start = std::chrono::steady_clock::now();
  int variants = 0;
  for (const Snippet& s : Corpus()) {
    std::set<OperatorGroup> available;
    for (OperatorGroup g : kAllGroups) {
      if (Applicable(g, s.fragment)) {
        available.insert(g);
      }
    }
    for (const Chain& chain : EnumerateValidChains(available)) {
      Variant v = ApplyChain(s, chain);
      VerifyReport r = VerifyVariant(s, v);
      ++variants;
      EXPECT_TRUE(r.Passed())
          << s.id << " " << ChainToken(chain) << ": " << r.problems.front();
      if (!v.flags.contains(SoundnessFlag::kIntegerDivisionRisk)) {
        EXPECT_FALSE(r.HasDivergence()) << s.id << " " << ChainToken(chain);
      }
    }
  }
  EXPECT_GT(variants, 100);
  auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_LT(elapsed, std::chrono::seconds(60));
}

TEST(VerifyTest, DivisionVariantIsReportedWithWitness) {
  for (const Snippet& s : Corpus()) {
    if (!Applicable(OperatorId::kDivision, s.fragment)) {
      continue;
    }
    Variant v = ApplyChain(s, {OperatorGroup::kPermutation});
    ASSERT_TRUE(v.flags.contains(SoundnessFlag::kIntegerDivisionRisk));
    VerifyReport r = VerifyVariant(s, v);
    EXPECT_TRUE(r.Passed());
    EXPECT_TRUE(r.HasDivergence());
    bool found = false;
    for (const RewriteCheck& c : r.rewrites) {
      if (c.rule == OperatorId::kDivision) {
        EXPECT_FALSE(c.result.equal);
        found = found || c.result.HasWitness({{"a", 6}, {"b", 3}});
      }
    }
    EXPECT_TRUE(found) << s.id;
    return;
  }
  FAIL() << "no division site in the corpus";
}

StmtPtr NegateIfConditions(const StmtPtr& body) {
  return MapStmtsPostOrder(body, [](const StmtPtr& s) -> StmtPtr {
    const auto* n = s->As<If>();
    if (n == nullptr || !n->else_branch) {
      return s;
    }
    If broken = *n;
    broken.cond = MakeExpr(Unary{UnaryOp::kNot, n->cond});
    return Rebuild(s, broken);
  });
}

TEST(VerifyTest, BrokenElseSwapFails) {
  for (const Snippet& s : Corpus()) {
    if (!Applicable(OperatorId::kIfSwap, s.fragment)) {
      continue;
    }
    Variant v = Identity(s);
    v.chain = {OperatorGroup::kIfSwap};
    v.fragment = MapBodies(v.fragment, NegateIfConditions);
    VerifyReport r = VerifyVariant(s, v);
    EXPECT_FALSE(r.Passed()) << s.id;
  }
}

TEST(VerifyTest, WrongRewriteAndStaleNameFail) {
  Snippet s = MakeSnippet("t", VulnType::kOverflowUnderflow,
                          FragmentKind::kFunctionLevel,
                          "function f(uint a, uint b) public {\n"
                          "    x = a - b;\n"
                          "}\n");
  Variant good = ApplyChain(s, {OperatorGroup::kPermutation});
  EXPECT_TRUE(VerifyVariant(s, good).Passed());

  Variant wrong = good;
  wrong.rewrites.front().after = ParseExpression("b - a");
  EXPECT_FALSE(VerifyVariant(s, wrong).Passed());

  Variant renamed = ApplyChain(s, {OperatorGroup::kRenameVariable});
  EXPECT_TRUE(VerifyVariant(s, renamed).Passed());
  Variant stale = renamed;
  stale.fragment = ParseFragment(
      "function f(uint v_0, uint v_1) public {\n    x = a - v_1;\n}\n",
      FragmentKind::kFunctionLevel);
  VerifyReport r = VerifyVariant(s, stale);
  EXPECT_FALSE(r.Passed());
}

TEST(VerifyTest, UndoDivision) {
  Fragment f = ParseFragment("function g() public { y = 1 / (b / a); }",
                             FragmentKind::kFunctionLevel);
  Fragment undone = UndoDivisionRewrites(f);
  EXPECT_EQ(PrintStmtCanonical(undone.members[0].As<FunctionDef>()->body),
            "{\n    y = (a / b);\n}");
}

}  // namespace
}  // namespace solmorph
