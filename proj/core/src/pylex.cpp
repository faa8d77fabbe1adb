/*
 * Copyright 2026 The privcode Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pylex.hpp"

#include <algorithm>
#include <cctype>

namespace privcode::pylex {

namespace {

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

bool string_prefix(std::string_view p) {
  if (p.empty() || p.size() > 2) return false;
  std::string lower;
  for (char c : p) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  static constexpr std::string_view kPrefixes[] = {"r", "u", "b", "f", "br", "rb", "fr", "rf"};
  return std::find(std::begin(kPrefixes), std::end(kPrefixes), lower) != std::end(kPrefixes);
}

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  std::vector<LogicalLine> run() {
    while (pos_ < text_.size()) step();
    flush();
    return std::move(lines_);
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void newline() {
    ++line_;
    line_start_ = pos_;
  }

  void emit(TokenKind kind, std::size_t begin, std::size_t begin_line, std::size_t begin_col) {
    current_.tokens.push_back(
        {kind, text_.substr(begin, pos_ - begin), begin_line, line_, begin_col});
  }

  void flush() {
    if (current_.tokens.empty()) return;
    current_.start_line = current_.tokens.front().line;
    current_.end_line = current_.tokens.back().end_line;
    current_.indent = current_.tokens.front().column;
    current_.comment_only = std::all_of(current_.tokens.begin(), current_.tokens.end(),
                                        [](const Token& t) { return t.kind == TokenKind::Comment; });
    lines_.push_back(std::move(current_));
    current_ = {};
  }

  void step() {
    const char c = peek();
    const std::size_t begin = pos_;
    const std::size_t begin_line = line_;
    const std::size_t begin_col = pos_ - line_start_;

    if (c == '\n') {
      ++pos_;
      newline();
      if (depth_ == 0) flush();
      return;
    }
    if (c == ' ' || c == '\t' || c == '\f' || c == '\r' || c == '\v') {
      ++pos_;
      return;
    }
    if (c == '\\' && (peek(1) == '\n' || (peek(1) == '\r' && peek(2) == '\n'))) {
      pos_ += peek(1) == '\n' ? 2 : 3;
      newline();
      return;
    }
    if (c == '#') {
      const bool own_line = current_.tokens.empty() && depth_ == 0;
      while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      emit(TokenKind::Comment, begin, begin_line, begin_col);
      if (own_line) flush();
      return;
    }
    if (c == '"' || c == '\'') {
      scan_string(begin);
      emit(TokenKind::String, begin, begin_line, begin_col);
      return;
    }
    if (ident_start(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() && ident_char(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if ((peek() == '"' || peek() == '\'') && string_prefix(text_.substr(begin, pos_ - begin))) {
        scan_string(pos_);
        emit(TokenKind::String, begin, begin_line, begin_col);
      } else {
        emit(TokenKind::Name, begin, begin_line, begin_col);
      }
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      while (pos_ < text_.size()) {
        const char d = text_[pos_];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '.') {
          ++pos_;
        } else if ((d == '+' || d == '-') && (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E') &&
                   !(pos_ - begin >= 2 && (text_[begin + 1] == 'x' || text_[begin + 1] == 'X'))) {
          ++pos_;
        } else {
          break;
        }
      }
      emit(TokenKind::Number, begin, begin_line, begin_col);
      return;
    }
    ++pos_;
    if (c == '(' || c == '[' || c == '{') ++depth_;
    if ((c == ')' || c == ']' || c == '}') && depth_ > 0) --depth_;
    emit(TokenKind::Op, begin, begin_line, begin_col);
  }

  // pos_ points at the opening quote.
  void scan_string(std::size_t quote_pos) {
    pos_ = quote_pos;
    const char q = text_[pos_];
    const bool triple = peek(1) == q && peek(2) == q;
    pos_ += triple ? 3 : 1;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\\') {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n') {
          pos_ += 2;
          newline();
        } else {
          pos_ += 2;
        }
        continue;
      }
      if (c == '\n') {
        if (!triple) return;  // unterminated single-quoted string ends at the line
        ++pos_;
        newline();
        continue;
      }
      if (c == q) {
        if (!triple) {
          ++pos_;
          return;
        }
        if (peek(1) == q && peek(2) == q) {
          pos_ += 3;
          return;
        }
      }
      ++pos_;
    }
    pos_ = std::min(pos_, text_.size());
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
  int depth_ = 0;
  LogicalLine current_;
  std::vector<LogicalLine> lines_;
};

}  // namespace

std::vector<Token> LogicalLine::code() const {
  std::vector<Token> out;
  for (const auto& t : tokens) {
    if (t.kind != TokenKind::Comment) out.push_back(t);
  }
  return out;
}

std::vector<LogicalLine> logical_lines(std::string_view text) { return Scanner(text).run(); }

std::vector<Token> code_tokens(std::string_view text) {
  std::vector<Token> out;
  for (const auto& line : logical_lines(text)) {
    for (const auto& t : line.tokens) {
      if (t.kind != TokenKind::Comment) out.push_back(t);
    }
  }
  return out;
}

bool is_op(const Token& t, std::string_view op) { return t.kind == TokenKind::Op && t.text == op; }
bool is_name(const Token& t, std::string_view name) {
  return t.kind == TokenKind::Name && t.text == name;
}

std::string_view string_body(std::string_view literal) {
  std::size_t i = 0;
  while (i < literal.size() && literal[i] != '"' && literal[i] != '\'') ++i;
  literal.remove_prefix(i);
  if (literal.empty()) return literal;
  const char q = literal.front();
  const bool triple = literal.size() >= 3 && literal[1] == q && literal[2] == q;
  const std::size_t n = triple ? 3 : 1;
  literal.remove_prefix(std::min(n, literal.size()));
  for (std::size_t k = 0; k < n && !literal.empty() && literal.back() == q; ++k) {
    literal.remove_suffix(1);
  }
  return literal;
}

}  // namespace privcode::pylex
