#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "capcover/graph.hpp"

namespace capcover::text {

struct Line {
  int number = 0;
  std::vector<std::string_view> tokens;
};

/// Splits into whitespace-separated tokens, dropping blank lines and '#' comments.
inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
      if (j > i) line.tokens.push_back(raw.substr(i, j - i));
      i = j;
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

inline long long to_int(std::string_view tok, int line) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
  return value;
}

inline void expect_arity(const Line& l, std::size_t n) {
  if (l.tokens.size() != n)
    throw ParseError(l.number, "'" + std::string(l.tokens[0]) + "' expects " +
                                   std::to_string(n - 1) + " fields");
}

}  // namespace capcover::text
