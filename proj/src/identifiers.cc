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

#include "solmorph/identifiers.h"

#include <cctype>

#include "solmorph/lexer.h"
#include "solmorph/printer.h"

namespace solmorph {
namespace {

const std::set<std::string_view>& ReservedWords() {
  static const std::set<std::string_view> kWords = {
      // keywords
      "abstract", "address", "anonymous", "as", "assembly", "bool", "break",
      "bytes", "calldata", "catch", "constant", "constructor", "continue",
      "contract", "delete", "do", "else", "emit", "enum", "error", "event",
      "external", "fallback", "false", "fixed", "for", "function", "global",
      "hex", "if", "immutable", "import", "indexed", "interface", "internal",
      "is", "library", "mapping", "memory", "modifier", "new", "override",
      "payable", "pragma", "private", "public", "pure", "receive", "return",
      "returns", "revert", "storage", "string", "struct", "true", "try",
      "type", "ufixed", "unchecked", "unicode", "using", "view", "virtual",
      "while", "int", "uint", "byte", "var", "throw", "constant",
      // reserved for future use
      "after", "alias", "apply", "auto", "byte", "case", "copyof", "default",
      "define", "final", "implements", "in", "inline", "let", "macro",
      "match", "mutable", "null", "of", "partial", "promise", "reference",
      "relocatable", "sealed", "sizeof", "static", "supports", "switch",
      "typedef", "typeof",
      // denominations
      "wei", "gwei", "szabo", "finney", "ether", "seconds", "minutes",
      "hours", "days", "weeks", "years",
      // globals
      "abi", "block", "blockhash", "gasleft", "msg", "now", "tx", "this",
      "super", "selfdestruct", "suicide", "keccak256", "sha256", "sha3",
      "ripemd160", "ecrecover", "addmod", "mulmod", "require", "assert"};
  return kWords;
}

bool IsSizedTypeName(std::string_view word) {
  for (std::string_view base : {"uint", "int", "bytes", "fixed", "ufixed"}) {
    if (word.starts_with(base) && word.size() > base.size()) {
      std::string_view rest = word.substr(base.size());
      bool digits = true;
      for (char c : rest) {
        digits = digits && (std::isdigit(static_cast<unsigned char>(c)) != 0 ||
                            c == 'x');
      }
      if (digits) {
        return true;
      }
    }
  }
  return false;
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

bool IsReservedWord(std::string_view word) {
  return ReservedWords().contains(word) || IsSizedTypeName(word);
}

bool IsValidIdentifier(std::string_view word) {
  if (word.empty()) {
    return false;
  }
  auto start = [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_' ||
           c == '$';
  };
  if (!start(word.front())) {
    return false;
  }
  for (char c : word) {
    if (!start(c) && std::isdigit(static_cast<unsigned char>(c)) == 0) {
      return false;
    }
  }
  return !IsReservedWord(word);
}

NameGenerator::NameGenerator(std::string prefix, std::uint64_t seed)
    : prefix_(std::move(prefix)) {
  if (seed != 0) {
    static constexpr std::string_view kDigits =
        "0123456789abcdefghijklmnopqrstuvwxyz";
    std::uint64_t h = SplitMix64(seed);
    for (int i = 0; i < 4; ++i) {
      seed_tag_ += kDigits[h % kDigits.size()];
      h /= kDigits.size();
    }
    seed_tag_ += '_';
  }
}

std::string NameGenerator::Candidate(std::uint64_t n) const {
  return prefix_ + seed_tag_ + std::to_string(n);
}

std::string NameGenerator::Fresh(const std::set<std::string>& forbidden) {
  while (true) {
    std::string name = Candidate(next_++);
    if (!forbidden.contains(name) && !issued_.contains(name) &&
        IsValidIdentifier(name)) {
      issued_.insert(name);
      return name;
    }
  }
}

std::string FreshIdentifier(const std::set<std::string>& forbidden,
                            std::string_view prefix, std::uint64_t seed) {
  return NameGenerator(std::string(prefix), seed).Fresh(forbidden);
}

std::set<std::string> CollectIdentifiers(std::string_view text) {
  std::set<std::string> out;
  for (const Token& t : Lex(text)) {
    if (t.IsIdentifier()) {
      out.emplace(t.text);
    }
  }
  return out;
}

std::set<std::string> CollectIdentifiers(const Fragment& fragment) {
  return CollectIdentifiers(Print(fragment));
}

std::set<std::string> CollectIdentifiers(const SourceUnit& unit) {
  return CollectIdentifiers(Print(unit));
}

}  // namespace solmorph
