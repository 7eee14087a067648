#include "lexer.hpp"

#include <algorithm>
#include <cctype>

namespace thermflow::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

}  // namespace

std::vector<Token> tokenize(std::string_view src, std::initializer_list<std::string_view> puncts,
                            int line, int column) {
  std::vector<std::string_view> ordered(puncts);
  std::sort(ordered.begin(), ordered.end(),
            [](std::string_view a, std::string_view b) { return a.size() > b.size(); });

  std::vector<Token> out;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const int tl = line, tc = column;
    std::size_t start = i;
    if (digit(c)) {
      std::size_t j = i;
      while (j < src.size() && digit(src[j])) ++j;
      if (j + 1 < src.size() && src[j] == '.' && digit(src[j + 1])) {
        ++j;
        while (j < src.size() && digit(src[j])) ++j;
      }
      advance(j - start);
      out.push_back({Tok::number, std::string(src.substr(start, j - start)), tl, tc});
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < src.size()) {
        if (ident_char(src[j])) {
          ++j;
        } else if (src[j] == '-' && j + 1 < src.size() && ident_char(src[j + 1])) {
          j += 2;
        } else {
          break;
        }
      }
      advance(j - start);
      out.push_back({Tok::ident, std::string(src.substr(start, j - start)), tl, tc});
      continue;
    }
    bool matched = false;
    for (auto p : ordered) {
      if (src.substr(i, p.size()) == p) {
        advance(p.size());
        out.push_back({Tok::punct, std::string(p), tl, tc});
        matched = true;
        break;
      }
    }
    if (!matched)
      throw ParseError("unexpected character '" + std::string(1, c) + "'", tl, tc);
  }
  out.push_back({Tok::end, "", line, column});
  return out;
}

}  // namespace thermflow::detail
