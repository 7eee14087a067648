// Tokenizer shared by the predicate and LTL formula parsers.
#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "thermflow/errors.hpp"

namespace thermflow::detail {

enum class Tok { number, ident, punct, end };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

/// Splits `src` into numbers ("12", "1.5"), identifiers (letters, digits, '_'
/// and inner '-' as in "temp-ok") and the punctuators listed in `puncts`,
/// matched longest first. Positions are offset by (line, column).
std::vector<Token> tokenize(std::string_view src, std::initializer_list<std::string_view> puncts,
                            int line = 1, int column = 1);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_end() const { return peek().kind == Tok::end; }

  bool accept(std::string_view text) {
    if (peek().kind != Tok::end && peek().kind != Tok::number && peek().text == text) {
      next();
      return true;
    }
    return false;
  }

  void expect(std::string_view text) {
    if (!accept(text)) fail("expected '" + std::string(text) + "'");
  }

  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = peek();
    std::string near = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    throw ParseError(message + " near " + near, t.line, t.column);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace thermflow::detail
