#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mqa/ascii.hpp"

namespace mqa {

// Scoring tokenizer. Lowercases ASCII letters, splits on whitespace, and
// emits every other byte as its own token, except that a '.' flanked by
// digits stays inside the number ("3.43" is one token, at most one dot).
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      tokens.push_back(cur);
      cur.clear();
    }
  };
  auto all_digits = [](const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (!ascii_digit(c)) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (ascii_space(c)) {
      flush();
    } else if (ascii_alnum(c)) {
      cur.push_back(ascii_lower(c));
    } else if (c == '.' && all_digits(cur) && i + 1 < text.size() && ascii_digit(text[i + 1])) {
      cur.push_back(c);
    } else {
      flush();
      tokens.emplace_back(1, c);
    }
  }
  flush();
  return tokens;
}

}  // namespace mqa
