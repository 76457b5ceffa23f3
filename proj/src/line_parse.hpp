#pragma once

// Helpers shared by the line-oriented input formats.

#include <string>
#include <string_view>

#include "odf/error.hpp"
#include "odf/rational_function.hpp"
#include "odf/rewrite.hpp"
#include "odf/term.hpp"

namespace odf::detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] inline void fail(const std::string& msg, std::size_t line, std::size_t col) {
  throw ParseError(msg + " at " + std::to_string(line) + ":" + std::to_string(col), line, col);
}

/// Rethrows an error from a one-line parser at its position within a file;
/// `offset` is the 0-based column where the parsed text starts.
[[noreturn]] inline void relocate(const ParseError& e, std::size_t line, std::size_t offset) {
  std::string msg = e.what();
  if (auto at = msg.rfind(" at "); at != std::string::npos) msg.erase(at);
  fail(msg, line, e.column() + offset);
}

inline TermPtr parse_term_at(std::string_view text, std::size_t line, std::size_t offset) {
  try {
    return parse_term(text);
  } catch (const ParseError& e) {
    relocate(e, line, offset);
  }
}

inline RationalFunction parse_rf_at(std::string_view text, std::size_t line, std::size_t offset) {
  return rewrite_term(parse_term_at(text, line, offset)).value;
}

/// Splits text into lines, skipping blank lines and `#` comments. The
/// callback receives (line number, line text, 0-based column of the text).
template <class F>
void for_each_statement(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    std::size_t lead = raw.find_first_not_of(" \t\r");
    if (lead == std::string_view::npos || raw[lead] == '#') continue;
    f(line_no, raw.substr(lead), lead);
  }
}

}  // namespace odf::detail
