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

#ifndef SOLMORPH_LEXER_H
#define SOLMORPH_LEXER_H

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace solmorph {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

enum class TokenKind { kIdentifier, kNumber, kString, kPunct, kEnd };

// A token refers back into the source it was lexed from. `trivia_begin` is
// the offset of the whitespace/comments preceding the token, so
// source[trivia_begin, begin) is the token's leading trivia.
struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string_view text;
  std::size_t trivia_begin = 0;
  std::size_t begin = 0;
  std::size_t end = 0;
  int line = 1;      // line of the first character of the token
  int end_line = 1;  // line of the last character of the token

  bool Is(std::string_view s) const {
    return kind != TokenKind::kEnd && kind != TokenKind::kString &&
           text == s;
  }
  bool IsIdentifier() const { return kind == TokenKind::kIdentifier; }
};

// Splits Solidity source into tokens. The final token is always kEnd and its
// trivia covers any whitespace or comments at the end of the input. Throws
// ParseError on an unterminated string or block comment.
std::vector<Token> Lex(std::string_view source);

// Number of lines in `text`, counting a final unterminated line.
int CountLines(std::string_view text);

// 1-based line number of `offset` within `source`.
int LineAt(std::string_view source, std::size_t offset);

}  // namespace solmorph

#endif  // SOLMORPH_LEXER_H
