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

#include "solmorph/lexer.h"

#include <algorithm>
#include <array>
#include <cctype>

namespace solmorph {
namespace {

// Longest first, so that a prefix scan picks the maximal munch.
constexpr std::array<std::string_view, 38> kPunctuators = {
    ">>>=", "<<=", ">>=", ">>>", "**", "=>", "==", "!=", "<=", ">=",
    "&&",   "||",  "++",  "--",  "+=", "-=", "*=", "/=", "%=", "|=",
    "&=",   "^=",  "<<",  ">>",  "->", ":=", "(",  ")",  "[",  "]",
    "{",    "}",   ";",   ",",   ".",  "?",  ":",  "="};

constexpr std::string_view kSingleCharOperators = "+-*/%<>!~&|^@";

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_' ||
         c == '$';
}

bool IsIdentChar(char c) {
  return IsIdentStart(c) || std::isdigit(static_cast<unsigned char>(c)) != 0;
}

class Lexer {
 public:
  explicit Lexer(std::string_view source) : source_(source) {}

  std::vector<Token> Run() {
    std::vector<Token> tokens;
    while (true) {
      std::size_t trivia_begin = pos_;
      SkipTrivia();
      Token token;
      token.trivia_begin = trivia_begin;
      token.begin = pos_;
      token.line = line_;
      if (pos_ >= source_.size()) {
        token.kind = TokenKind::kEnd;
        token.end = pos_;
        token.end_line = line_;
        tokens.push_back(token);
        return tokens;
      }
      LexOne(token);
      token.end = pos_;
      token.text = source_.substr(token.begin, token.end - token.begin);
      token.end_line = line_;
      tokens.push_back(token);
    }
  }

 private:
  char Peek(std::size_t ahead = 0) const {
    return pos_ + ahead < source_.size() ? source_[pos_ + ahead] : '\0';
  }

  void Advance() {
    if (source_[pos_] == '\n') {
      ++line_;
    }
    ++pos_;
  }

  void SkipTrivia() {
    while (pos_ < source_.size()) {
      char c = Peek();
      if (std::isspace(static_cast<unsigned char>(c)) != 0) {
        Advance();
      } else if (c == '/' && Peek(1) == '/') {
        while (pos_ < source_.size() && Peek() != '\n') {
          Advance();
        }
      } else if (c == '/' && Peek(1) == '*') {
        int start_line = line_;
        Advance();
        Advance();
        while (pos_ < source_.size() && !(Peek() == '*' && Peek(1) == '/')) {
          Advance();
        }
        if (pos_ >= source_.size()) {
          throw ParseError(start_line, "unterminated block comment");
        }
        Advance();
        Advance();
      } else {
        return;
      }
    }
  }

  void LexString(char quote) {
    int start_line = line_;
    Advance();
    while (pos_ < source_.size() && Peek() != quote) {
      if (Peek() == '\\' && pos_ + 1 < source_.size()) {
        Advance();
      } else if (Peek() == '\n') {
        throw ParseError(start_line, "unterminated string literal");
      }
      Advance();
    }
    if (pos_ >= source_.size()) {
      throw ParseError(start_line, "unterminated string literal");
    }
    Advance();
  }

  void LexOne(Token& token) {
    char c = Peek();
    if (c == '"' || c == '\'') {
      token.kind = TokenKind::kString;
      LexString(c);
      return;
    }
    if (IsIdentStart(c)) {
      std::size_t start = pos_;
      while (pos_ < source_.size() && IsIdentChar(Peek())) {
        Advance();
      }
      std::string_view word = source_.substr(start, pos_ - start);
      if ((word == "hex" || word == "unicode") &&
          (Peek() == '"' || Peek() == '\'')) {
        token.kind = TokenKind::kString;
        LexString(Peek());
        return;
      }
      token.kind = TokenKind::kIdentifier;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) != 0 ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(Peek(1))) != 0)) {
      token.kind = TokenKind::kNumber;
      if (c == '0' && (Peek(1) == 'x' || Peek(1) == 'X')) {
        Advance();
        Advance();
        while (std::isxdigit(static_cast<unsigned char>(Peek())) != 0 ||
               Peek() == '_') {
          Advance();
        }
        return;
      }
      while (std::isdigit(static_cast<unsigned char>(Peek())) != 0 ||
             Peek() == '_' || Peek() == '.') {
        // `1..2` never occurs in Solidity; a dot followed by an identifier
        // is a member access on a literal, which we leave to the parser.
        if (Peek() == '.' &&
            std::isdigit(static_cast<unsigned char>(Peek(1))) == 0) {
          break;
        }
        Advance();
      }
      if ((Peek() == 'e' || Peek() == 'E') &&
          (std::isdigit(static_cast<unsigned char>(Peek(1))) != 0 ||
           (Peek(1) == '-' &&
            std::isdigit(static_cast<unsigned char>(Peek(2))) != 0))) {
        Advance();
        if (Peek() == '-') {
          Advance();
        }
        while (std::isdigit(static_cast<unsigned char>(Peek())) != 0) {
          Advance();
        }
      }
      return;
    }
    token.kind = TokenKind::kPunct;
    std::string_view rest = source_.substr(pos_);
    for (std::string_view p : kPunctuators) {
      if (rest.starts_with(p)) {
        for (std::size_t i = 0; i < p.size(); ++i) {
          Advance();
        }
        return;
      }
    }
    if (kSingleCharOperators.find(c) != std::string_view::npos) {
      Advance();
      return;
    }
    throw ParseError(line_, std::string("unexpected character '") + c + "'");
  }

  std::string_view source_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace

std::vector<Token> Lex(std::string_view source) {
  return Lexer(source).Run();
}

int CountLines(std::string_view text) {
  if (text.empty()) {
    return 0;
  }
  int lines = static_cast<int>(std::count(text.begin(), text.end(), '\n'));
  if (text.back() != '\n') {
    ++lines;
  }
  return lines;
}

int LineAt(std::string_view source, std::size_t offset) {
  offset = std::min(offset, source.size());
  return 1 + static_cast<int>(std::count(source.begin(),
                                         source.begin() +
                                             static_cast<std::ptrdiff_t>(offset),
                                         '\n'));
}

}  // namespace solmorph
