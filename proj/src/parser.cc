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

#include "solmorph/parser.h"

#include <cassert>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "solmorph/lexer.h"

namespace solmorph {
namespace {

// Thrown when a construct is outside the subset grammar. Caught at statement
// or member granularity, where the region degrades to raw text.
struct Unsupported {};

const std::set<std::string_view>& NonTypeKeywords() {
  static const std::set<std::string_view> kWords = {
      "if",       "else",      "for",       "while",    "do",
      "return",   "break",     "continue",  "emit",     "delete",
      "new",      "true",      "false",     "event",    "struct",
      "enum",     "using",     "modifier",  "function", "constructor",
      "error",    "import",    "pragma",    "contract", "library",
      "interface", "assembly", "unchecked", "try",      "catch",
      "throw",    "revert",    "fallback",  "receive",  "type",
      "is",       "returns",   "public",    "private",  "internal",
      "external", "constant",  "immutable", "override", "virtual",
      "memory",   "storage",   "calldata",  "payable",  "view",
      "pure",     "indexed",   "anonymous", "this",     "super",
      "abstract"};
  return kWords;
}

const std::set<std::string_view>& ExpressionKeywords() {
  static const std::set<std::string_view> kWords = {
      "if",        "else",     "for",      "while",     "do",
      "return",    "break",    "continue", "emit",      "event",
      "struct",    "enum",     "using",    "modifier",  "function",
      "constructor", "error",  "import",   "pragma",    "contract",
      "library",   "interface", "assembly", "unchecked", "try",
      "catch",     "throw",    "returns",  "public",    "private",
      "internal",  "external", "constant", "immutable", "override",
      "virtual",   "memory",   "storage",  "calldata",  "view",
      "pure",      "indexed",  "anonymous", "is",       "abstract"};
  return kWords;
}

const std::set<std::string_view>& Denominations() {
  static const std::set<std::string_view> kWords = {
      "wei",     "gwei",    "szabo", "finney", "ether", "seconds",
      "minutes", "hours",   "days",  "weeks",  "years"};
  return kWords;
}

bool IsDataLocation(std::string_view word) {
  return word == "memory" || word == "storage" || word == "calldata";
}

bool IsWordToken(const Token& t) {
  return t.kind == TokenKind::kIdentifier || t.kind == TokenKind::kNumber ||
         t.kind == TokenKind::kString;
}

struct BinaryInfo {
  BinaryOp op;
  int precedence;
};

std::optional<BinaryInfo> BinaryOperator(const Token& t) {
  if (t.kind != TokenKind::kPunct) {
    return std::nullopt;
  }
  static const std::vector<std::pair<std::string_view, BinaryInfo>> kTable = {
      {"||", {BinaryOp::kOr, 1}},      {"&&", {BinaryOp::kAnd, 2}},
      {"==", {BinaryOp::kEq, 3}},      {"!=", {BinaryOp::kNe, 3}},
      {"<", {BinaryOp::kLt, 4}},       {">", {BinaryOp::kGt, 4}},
      {"<=", {BinaryOp::kLe, 4}},      {">=", {BinaryOp::kGe, 4}},
      {"|", {BinaryOp::kBitOr, 5}},    {"^", {BinaryOp::kBitXor, 6}},
      {"&", {BinaryOp::kBitAnd, 7}},   {"<<", {BinaryOp::kShl, 8}},
      {">>", {BinaryOp::kShr, 8}},     {"+", {BinaryOp::kAdd, 9}},
      {"-", {BinaryOp::kSub, 9}},      {"*", {BinaryOp::kMul, 10}},
      {"/", {BinaryOp::kDiv, 10}},     {"%", {BinaryOp::kMod, 10}},
      {"**", {BinaryOp::kExp, 11}},
  };
  for (const auto& [text, info] : kTable) {
    if (t.text == text) {
      return info;
    }
  }
  return std::nullopt;
}

bool IsAssignmentOperator(const Token& t) {
  static const std::set<std::string_view> kOps = {
      "=", "+=", "-=", "*=", "/=", "%=", "|=", "&=", "^=", "<<=", ">>=",
      ">>>="};
  return t.kind == TokenKind::kPunct && kOps.contains(t.text);
}

class Parser {
 public:
  explicit Parser(std::string_view source)
      : source_(source), tokens_(Lex(source)) {
    MatchBrackets();
  }

  SourceUnit ParseUnit() {
    SourceUnit unit;
    while (!AtEnd()) {
      TopLevelItem item;
      item.leading = Trivia(pos_);
      if (AtContractStart()) {
        item.node = ParseContract();
      } else {
        std::size_t first = pos_;
        std::size_t last = ScanDeclarationEnd(pos_);
        pos_ = last + 1;
        item.node = RawRegion{Text(first, last), SpanOf(first, last)};
      }
      unit.items.push_back(std::move(item));
    }
    unit.trailing = Trivia(pos_);
    return unit;
  }

  Fragment ParseFragmentBody(FragmentKind kind) {
    Fragment fragment;
    fragment.kind = kind;
    while (!AtEnd()) {
      if (kind == FragmentKind::kFunctionLevel) {
        fragment.members.push_back(ParseMember());
      } else {
        fragment.statements.push_back(ParseStatement());
      }
    }
    fragment.trailing = Trivia(pos_);
    return fragment;
  }

  ExprPtr ParseWholeExpression() {
    ExprPtr expr;
    try {
      expr = ParseExpr();
    } catch (const Unsupported&) {
      throw ParseError(Peek().line, "unsupported expression");
    }
    if (!AtEnd()) {
      throw ParseError(Peek().line, "trailing input after expression");
    }
    return expr;
  }

  StmtPtr ParseWholeStatement() {
    StmtPtr stmt = ParseStatement();
    if (!AtEnd()) {
      throw ParseError(Peek().line, "trailing input after statement");
    }
    return stmt;
  }

 private:
  // ---- token helpers ------------------------------------------------------

  const Token& Peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  bool AtEnd() const { return Peek().kind == TokenKind::kEnd; }
  bool At(std::string_view s, std::size_t ahead = 0) const {
    return Peek(ahead).Is(s);
  }
  const Token& Next() {
    const Token& t = tokens_[pos_];
    if (t.kind != TokenKind::kEnd) {
      ++pos_;
    }
    return t;
  }
  void Expect(std::string_view s) {
    if (!At(s)) {
      throw Unsupported{};
    }
    ++pos_;
  }
  std::string ExpectIdentifier() {
    if (!Peek().IsIdentifier()) {
      throw Unsupported{};
    }
    return std::string(Next().text);
  }

  std::string Trivia(std::size_t index) const {
    const Token& t = tokens_[index];
    return std::string(source_.substr(t.trivia_begin, t.begin - t.trivia_begin));
  }

  std::string Text(std::size_t first, std::size_t last) const {
    std::size_t begin = tokens_[first].begin;
    std::size_t end = tokens_[last].end;
    return std::string(source_.substr(begin, end - begin));
  }

  Span SpanOf(std::size_t first, std::size_t last) const {
    return {tokens_[first].line, tokens_[last].end_line};
  }

  // Tokens joined with a single space between adjacent word tokens only.
  std::string JoinTokens(std::size_t first, std::size_t last) const {
    std::string out;
    for (std::size_t i = first; i <= last; ++i) {
      if (i > first && IsWordToken(tokens_[i - 1]) && IsWordToken(tokens_[i])) {
        out += ' ';
      }
      out += tokens_[i].text;
    }
    return out;
  }

  void MatchBrackets() {
    match_.assign(tokens_.size(), 0);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      const Token& t = tokens_[i];
      if (t.kind != TokenKind::kPunct) {
        continue;
      }
      if (t.text == "(" || t.text == "[" || t.text == "{") {
        stack.push_back(i);
      } else if (t.text == ")" || t.text == "]" || t.text == "}") {
        if (stack.empty()) {
          throw ParseError(t.line, "unbalanced '" + std::string(t.text) + "'");
        }
        std::size_t open = stack.back();
        stack.pop_back();
        std::string_view o = tokens_[open].text;
        bool ok = (o == "(" && t.text == ")") || (o == "[" && t.text == "]") ||
                  (o == "{" && t.text == "}");
        if (!ok) {
          throw ParseError(t.line, "mismatched '" + std::string(t.text) +
                                       "' (opened at line " +
                                       std::to_string(tokens_[open].line) +
                                       ")");
        }
        match_[open] = i;
        match_[i] = open;
      }
    }
    if (!stack.empty()) {
      const Token& open = tokens_[stack.back()];
      throw ParseError(open.line,
                       "unclosed '" + std::string(open.text) + "'");
    }
  }

  bool IsOpenBracket(std::size_t i) const {
    const Token& t = tokens_[i];
    return t.kind == TokenKind::kPunct &&
           (t.text == "(" || t.text == "[" || t.text == "{");
  }

  // End of a top-level or member declaration: the first `;` at depth zero,
  // or the closing brace of the first brace group at depth zero.
  std::size_t ScanDeclarationEnd(std::size_t i) const {
    while (true) {
      const Token& t = tokens_[i];
      if (t.kind == TokenKind::kEnd) {
        return i == 0 ? 0 : i - 1;
      }
      if (t.Is("}")) {
        // Unbalanced close of the enclosing scope; stop before it.
        return i - 1;
      }
      if (t.Is("{")) {
        return match_[i];
      }
      if (IsOpenBracket(i)) {
        i = match_[i] + 1;
        continue;
      }
      if (t.Is(";")) {
        return i;
      }
      ++i;
    }
  }

  // End of a statement that the grammar could not structure.
  std::size_t ScanStatementEnd(std::size_t start) const {
    bool starts_with_if = tokens_[start].Is("if");
    bool starts_with_do = tokens_[start].Is("do");
    std::size_t i = start;
    while (true) {
      const Token& t = tokens_[i];
      if (t.kind == TokenKind::kEnd || (t.Is("}") && i != start)) {
        return i - 1;
      }
      if (t.Is("{")) {
        i = match_[i];
        const Token& next = tokens_[i + 1];
        if (next.Is("else") || next.Is("catch") ||
            (starts_with_do && next.Is("while"))) {
          ++i;
          continue;
        }
        return i;
      }
      if (IsOpenBracket(i)) {
        i = match_[i] + 1;
        continue;
      }
      if (t.Is(";")) {
        if (starts_with_if && tokens_[i + 1].Is("else")) {
          ++i;
          continue;
        }
        return i;
      }
      ++i;
    }
  }

  // ---- contracts and members ----------------------------------------------

  bool AtContractStart() const {
    if (At("contract") || At("library") || At("interface")) {
      return Peek(1).IsIdentifier();
    }
    return At("abstract") && At("contract", 1) && Peek(2).IsIdentifier();
  }

  ContractDef ParseContract() {
    ContractDef contract;
    std::size_t first = pos_;
    if (At("abstract")) {
      contract.kind = ContractKind::kAbstractContract;
      ++pos_;
    } else if (At("library")) {
      contract.kind = ContractKind::kLibrary;
    } else if (At("interface")) {
      contract.kind = ContractKind::kInterface;
    }
    ++pos_;
    contract.name = std::string(Next().text);
    while (!At("{")) {
      if (AtEnd() || At(";")) {
        throw ParseError(Peek().line,
                         "expected '{' in definition of " + contract.name);
      }
      if (IsOpenBracket(pos_)) {
        pos_ = match_[pos_];
      }
      ++pos_;
    }
    std::size_t brace = pos_;
    contract.header = std::string(
        source_.substr(tokens_[first].begin,
                       tokens_[brace].begin - tokens_[first].begin));
    std::size_t close = match_[brace];
    ++pos_;
    while (pos_ < close) {
      contract.members.push_back(ParseMember());
    }
    contract.closing = Trivia(close);
    pos_ = close + 1;
    contract.span = SpanOf(first, close);
    contract.verbatim = Text(first, close);
    return contract;
  }

  Member ParseMember() {
    Member member;
    member.leading = Trivia(pos_);
    std::size_t first = pos_;
    if (At("function")) {
      try {
        member.node = ParseFunction();
        return member;
      } catch (const Unsupported&) {
        pos_ = first;
      }
    }
    std::size_t last = ScanDeclarationEnd(pos_);
    if (tokens_[last].Is(";")) {
      try {
        member.node = ParseStateVariable(first, last);
        pos_ = last + 1;
        return member;
      } catch (const Unsupported&) {
        pos_ = first;
      }
    }
    pos_ = last + 1;
    member.node = RawRegion{Text(first, last), SpanOf(first, last)};
    return member;
  }

  std::vector<Param> ParseParamList(std::size_t open) const {
    std::vector<Param> params;
    std::size_t close = match_[open];
    std::size_t start = open + 1;
    auto flush = [&](std::size_t end) {
      if (end <= start) {
        return;
      }
      std::size_t last = end - 1;
      Param param;
      const Token& tail = tokens_[last];
      if (last > start && tail.IsIdentifier() && !IsDataLocation(tail.text) &&
          !NonTypeKeywords().contains(tail.text) &&
          !(tail.text == "payable" && tokens_[last - 1].Is("address"))) {
        param.name = std::string(tail.text);
        param.type = JoinTokens(start, last - 1);
      } else {
        param.type = JoinTokens(start, last);
      }
      params.push_back(std::move(param));
    };
    for (std::size_t i = start; i < close; ++i) {
      if (IsOpenBracket(i)) {
        i = match_[i];
        continue;
      }
      if (tokens_[i].Is(",")) {
        flush(i);
        start = i + 1;
      }
    }
    flush(close);
    return params;
  }

  FunctionDef ParseFunction() {
    FunctionDef fn;
    std::size_t first = pos_;
    Expect("function");
    fn.name = ExpectIdentifier();
    if (!At("(")) {
      throw Unsupported{};
    }
    fn.params = ParseParamList(pos_);
    pos_ = match_[pos_] + 1;
    while (!At("{")) {
      if (AtEnd() || At(";") || At("}")) {
        throw Unsupported{};
      }
      if (At("returns") && At("(", 1)) {
        fn.returns = ParseParamList(pos_ + 1);
      }
      if (IsOpenBracket(pos_)) {
        pos_ = match_[pos_];
      }
      ++pos_;
    }
    std::size_t brace = pos_;
    fn.header = std::string(source_.substr(
        tokens_[first].begin, tokens_[brace].begin - tokens_[first].begin));
    fn.body = ParseBlockStatement(/*leading=*/"");
    fn.verbatim = Text(first, pos_ - 1);
    fn.span = SpanOf(first, pos_ - 1);
    return fn;
  }

  StateVarDecl ParseStateVariable(std::size_t first, std::size_t last) {
    pos_ = first;
    StateVarDecl decl;
    decl.type = ParseTypeName();
    static const std::set<std::string_view> kModifiers = {
        "public", "private", "internal", "constant", "immutable", "override",
        "transient"};
    while (Peek().IsIdentifier() && kModifiers.contains(Peek().text)) {
      ++pos_;
      if (At("(")) {
        pos_ = match_[pos_] + 1;
      }
    }
    if (!Peek().IsIdentifier() || NonTypeKeywords().contains(Peek().text)) {
      throw Unsupported{};
    }
    decl.name = std::string(Next().text);
    if (At("=")) {
      ++pos_;
      ParseExpr();
    }
    if (pos_ != last || !At(";")) {
      throw Unsupported{};
    }
    decl.text = Text(first, last);
    decl.span = SpanOf(first, last);
    return decl;
  }

  // ---- types --------------------------------------------------------------

  std::string ParseTypeName() {
    std::string type;
    if (At("mapping")) {
      ++pos_;
      Expect("(");
      std::string key = ParseTypeName();
      if (Peek().IsIdentifier() && !At("=>")) {
        ++pos_;  // named mapping key
      }
      Expect("=>");
      std::string value = ParseTypeName();
      if (Peek().IsIdentifier()) {
        ++pos_;
      }
      Expect(")");
      type = "mapping(" + key + " => " + value + ")";
    } else {
      if (!Peek().IsIdentifier() || NonTypeKeywords().contains(Peek().text)) {
        throw Unsupported{};
      }
      type = std::string(Next().text);
      if (type == "address" && At("payable")) {
        ++pos_;
        type += " payable";
      }
      while (At(".") && Peek(1).IsIdentifier()) {
        pos_ += 2;
        type += ".";
        type += tokens_[pos_ - 1].text;
      }
    }
    while (At("[")) {
      std::size_t close = match_[pos_];
      type += "[";
      if (close > pos_ + 1) {
        type += JoinTokens(pos_ + 1, close - 1);
      }
      type += "]";
      pos_ = close + 1;
    }
    return type;
  }

  // ---- statements ---------------------------------------------------------

  StmtPtr Finish(Stmt::Node node, std::string leading, std::size_t first) {
    auto stmt = std::make_shared<Stmt>();
    stmt->node = std::move(node);
    stmt->leading = std::move(leading);
    stmt->verbatim = Text(first, pos_ - 1);
    stmt->span = SpanOf(first, pos_ - 1);
    return stmt;
  }

  StmtPtr ParseStatement() {
    std::string leading = Trivia(pos_);
    std::size_t first = pos_;
    if (At("{")) {
      return ParseBlockStatement(std::move(leading));
    }
    try {
      Stmt::Node node = ParseStatementNode();
      return Finish(std::move(node), std::move(leading), first);
    } catch (const Unsupported&) {
      pos_ = first;
    }
    std::size_t last = ScanStatementEnd(first);
    pos_ = last + 1;
    return Finish(RawStmt{Text(first, last)}, std::move(leading), first);
  }

  StmtPtr ParseBlockStatement(std::string leading) {
    std::size_t first = pos_;
    assert(At("{"));
    std::size_t close = match_[pos_];
    ++pos_;
    Block block;
    while (pos_ < close) {
      block.statements.push_back(ParseStatement());
    }
    block.closing = Trivia(close);
    pos_ = close + 1;
    return Finish(std::move(block), std::move(leading), first);
  }

  Stmt::Node ParseStatementNode() {
    if (At("if")) {
      ++pos_;
      Expect("(");
      If node;
      node.cond = ParseExpr();
      Expect(")");
      node.then_branch = ParseStatement();
      if (At("else")) {
        node.else_trivia = Trivia(pos_);
        ++pos_;
        node.else_branch = ParseStatement();
      }
      return node;
    }
    if (At("while")) {
      ++pos_;
      Expect("(");
      While node;
      node.cond = ParseExpr();
      Expect(")");
      node.body = ParseStatement();
      return node;
    }
    if (At("for")) {
      ++pos_;
      Expect("(");
      For node;
      if (At(";")) {
        ++pos_;
      } else {
        std::string init_leading = Trivia(pos_);
        std::size_t init_first = pos_;
        node.init = Finish(ParseSimpleStatement(), init_leading, init_first);
      }
      if (!At(";")) {
        node.cond = ParseExpr();
      }
      Expect(";");
      if (!At(")")) {
        node.post = ParseExpr();
      }
      Expect(")");
      node.body = ParseStatement();
      return node;
    }
    if (At("return")) {
      ++pos_;
      Return node;
      if (!At(";")) {
        node.value = ParseExpr();
      }
      Expect(";");
      return node;
    }
    if (At("break") && At(";", 1)) {
      pos_ += 2;
      return Break{};
    }
    if (At("continue") && At(";", 1)) {
      pos_ += 2;
      return Continue{};
    }
    if (At("emit")) {
      ++pos_;
      Emit node;
      node.event = ParseExpr();
      if (!node.event->Is<Call>()) {
        throw Unsupported{};
      }
      Expect(";");
      return node;
    }
    static const std::set<std::string_view> kRawStatements = {
        "do", "assembly", "unchecked", "try", "throw", "else", "catch"};
    if (Peek().IsIdentifier() && kRawStatements.contains(Peek().text)) {
      throw Unsupported{};
    }
    return ParseSimpleStatement();
  }

  // Variable declaration or expression statement, including the `;`.
  Stmt::Node ParseSimpleStatement() {
    std::size_t first = pos_;
    if (auto decl = TryParseVarDecl()) {
      return *decl;
    }
    pos_ = first;
    ExprStmt node;
    node.expr = ParseExpr();
    Expect(";");
    return node;
  }

  std::optional<Declarator> TryParseDeclarator() {
    std::size_t first = pos_;
    try {
      Declarator decl;
      decl.type = ParseTypeName();
      if (Peek().IsIdentifier() && IsDataLocation(Peek().text)) {
        decl.location = std::string(Next().text);
      }
      if (!Peek().IsIdentifier() || NonTypeKeywords().contains(Peek().text)) {
        throw Unsupported{};
      }
      decl.name = std::string(Next().text);
      return decl;
    } catch (const Unsupported&) {
      pos_ = first;
      return std::nullopt;
    }
  }

  std::optional<VarDecl> TryParseVarDecl() {
    std::size_t first = pos_;
    VarDecl decl;
    if (At("(")) {
      decl.tuple = true;
      ++pos_;
      while (true) {
        if (At(",") || At(")")) {
          decl.declarators.emplace_back(std::nullopt);
        } else {
          auto d = TryParseDeclarator();
          if (!d) {
            pos_ = first;
            return std::nullopt;
          }
          decl.declarators.emplace_back(std::move(*d));
        }
        if (At(",")) {
          ++pos_;
          continue;
        }
        if (At(")")) {
          ++pos_;
          break;
        }
        pos_ = first;
        return std::nullopt;
      }
      bool any = false;
      for (const auto& d : decl.declarators) {
        any = any || d.has_value();
      }
      if (!any || !At("=")) {
        pos_ = first;
        return std::nullopt;
      }
    } else {
      auto d = TryParseDeclarator();
      if (!d || !(At("=") || At(";"))) {
        pos_ = first;
        return std::nullopt;
      }
      decl.declarators.emplace_back(std::move(*d));
    }
    if (At("=")) {
      ++pos_;
      decl.init = ParseExpr();
    }
    Expect(";");
    return decl;
  }

  // ---- expressions --------------------------------------------------------

  ExprPtr FinishExpr(Expr::Node node, std::size_t first) {
    auto expr = std::make_shared<Expr>();
    expr->node = std::move(node);
    expr->verbatim = Text(first, pos_ - 1);
    return expr;
  }

  ExprPtr ParseExpr() {
    std::size_t first = pos_;
    ExprPtr lhs = ParseConditional();
    if (IsAssignmentOperator(Peek())) {
      std::string op(Next().text);
      ExprPtr rhs = ParseExpr();
      return FinishExpr(Assign{op, lhs, rhs}, first);
    }
    return lhs;
  }

  ExprPtr ParseConditional() {
    std::size_t first = pos_;
    ExprPtr cond = ParseBinary(1);
    if (At("?")) {
      ++pos_;
      ExprPtr then_value = ParseExpr();
      Expect(":");
      ExprPtr else_value = ParseExpr();
      return FinishExpr(Conditional{cond, then_value, else_value}, first);
    }
    return cond;
  }

  ExprPtr ParseBinary(int min_precedence) {
    std::size_t first = pos_;
    ExprPtr lhs = ParseUnary();
    while (true) {
      auto info = BinaryOperator(Peek());
      if (!info || info->precedence < min_precedence) {
        return lhs;
      }
      ++pos_;
      // `**` is right-associative.
      int next = info->op == BinaryOp::kExp ? info->precedence
                                            : info->precedence + 1;
      ExprPtr rhs = ParseBinary(next);
      lhs = FinishExpr(Binary{info->op, lhs, rhs}, first);
    }
  }

  ExprPtr ParseUnary() {
    std::size_t first = pos_;
    std::optional<UnaryOp> op;
    if (At("!")) {
      op = UnaryOp::kNot;
    } else if (At("-")) {
      op = UnaryOp::kNeg;
    } else if (At("~")) {
      op = UnaryOp::kBitNot;
    } else if (At("++")) {
      op = UnaryOp::kPreInc;
    } else if (At("--")) {
      op = UnaryOp::kPreDec;
    } else if (At("delete")) {
      op = UnaryOp::kDelete;
    }
    if (op) {
      ++pos_;
      ExprPtr operand = ParseUnary();
      return FinishExpr(Unary{*op, operand}, first);
    }
    return ParsePostfix();
  }

  ExprPtr ParsePostfix() {
    std::size_t first = pos_;
    ExprPtr expr = ParsePrimary();
    while (true) {
      if (At(".")) {
        ++pos_;
        std::string member = ExpectIdentifier();
        expr = FinishExpr(MemberAccess{expr, member}, first);
      } else if (At("[")) {
        std::size_t close = match_[pos_];
        ++pos_;
        ExprPtr index;
        if (!At("]")) {
          index = ParseExpr();
        }
        if (pos_ != close) {
          throw Unsupported{};  // slices and other forms
        }
        ++pos_;
        expr = FinishExpr(Index{expr, index}, first);
      } else if (At("(")) {
        Call call;
        call.callee = expr;
        ParseArguments(call);
        expr = FinishExpr(std::move(call), first);
      } else if (At("{") && Peek(1).IsIdentifier() && At(":", 2)) {
        Call call;
        call.callee = expr;
        call.options = ParseNamedList();
        if (!At("(")) {
          throw Unsupported{};
        }
        ParseArguments(call);
        expr = FinishExpr(std::move(call), first);
      } else if (At("++") || At("--")) {
        UnaryOp op = At("++") ? UnaryOp::kPostInc : UnaryOp::kPostDec;
        ++pos_;
        expr = FinishExpr(Unary{op, expr}, first);
      } else {
        return expr;
      }
    }
  }

  std::vector<CallOption> ParseNamedList() {
    std::vector<CallOption> list;
    Expect("{");
    while (!At("}")) {
      CallOption option;
      option.name = ExpectIdentifier();
      Expect(":");
      option.value = ParseExpr();
      list.push_back(std::move(option));
      if (At(",")) {
        ++pos_;
      } else if (!At("}")) {
        throw Unsupported{};
      }
    }
    ++pos_;
    return list;
  }

  void ParseArguments(Call& call) {
    Expect("(");
    if (At("{") && (At("}", 1) || (Peek(1).IsIdentifier() && At(":", 2)))) {
      for (auto& named : ParseNamedList()) {
        call.arg_names.push_back(std::move(named.name));
        call.args.push_back(std::move(named.value));
      }
      Expect(")");
      return;
    }
    while (!At(")")) {
      call.args.push_back(ParseExpr());
      if (At(",")) {
        ++pos_;
      } else if (!At(")")) {
        throw Unsupported{};
      }
    }
    ++pos_;
  }

  ExprPtr ParsePrimary() {
    std::size_t first = pos_;
    const Token& t = Peek();
    if (t.kind == TokenKind::kNumber) {
      ++pos_;
      std::string text(t.text);
      if (Peek().IsIdentifier() && Denominations().contains(Peek().text)) {
        text += " ";
        text += Next().text;
      }
      return FinishExpr(Literal{text}, first);
    }
    if (t.kind == TokenKind::kString) {
      std::string text;
      while (Peek().kind == TokenKind::kString) {
        if (!text.empty()) {
          text += " ";
        }
        text += Next().text;
      }
      return FinishExpr(Literal{text}, first);
    }
    if (t.Is("true") || t.Is("false")) {
      ++pos_;
      return FinishExpr(Literal{std::string(t.text)}, first);
    }
    if (t.Is("(")) {
      std::size_t close = match_[pos_];
      ++pos_;
      Tuple tuple;
      bool saw_comma = false;
      while (pos_ < close) {
        if (At(",")) {
          tuple.elements.push_back(nullptr);
          saw_comma = true;
          ++pos_;
          continue;
        }
        tuple.elements.push_back(ParseExpr());
        if (At(",")) {
          saw_comma = true;
          ++pos_;
          if (pos_ == close) {
            tuple.elements.push_back(nullptr);
          }
        } else if (pos_ != close) {
          throw Unsupported{};
        }
      }
      ++pos_;
      if (!saw_comma && tuple.elements.size() == 1) {
        auto inner = std::make_shared<Expr>(*tuple.elements.front());
        inner->verbatim = Text(first, pos_ - 1);
        inner->parenthesized = true;
        return inner;
      }
      return FinishExpr(std::move(tuple), first);
    }
    if (t.Is("new")) {
      ++pos_;
      std::string type = ParseTypeName();
      return FinishExpr(New{type}, first);
    }
    if (t.IsIdentifier() && !ExpressionKeywords().contains(t.text)) {
      ++pos_;
      std::string name(t.text);
      // `address payable(x)` is not valid; `payable(x)` is an ordinary call.
      return FinishExpr(Identifier{name}, first);
    }
    throw Unsupported{};
  }

  std::string_view source_;
  std::vector<Token> tokens_;
  std::vector<std::size_t> match_;
  std::size_t pos_ = 0;
};

}  // namespace

SourceUnit Parse(std::string_view source) {
  return Parser(source).ParseUnit();
}

Fragment ParseFragment(std::string_view source, FragmentKind kind) {
  return Parser(source).ParseFragmentBody(kind);
}

ExprPtr ParseExpression(std::string_view source) {
  return Parser(source).ParseWholeExpression();
}

StmtPtr ParseStatement(std::string_view source) {
  return Parser(source).ParseWholeStatement();
}

}  // namespace solmorph
