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

#pragma once

// Lexical scanner for indentation-delimited, Python-style source. It is not a
// grammar: it recognizes just enough (strings, comments, brackets, logical
// lines) for block splitting and call-name extraction.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace privcode::pylex {

enum class TokenKind { Name, Number, String, Op, Comment };

struct Token {
  TokenKind kind;
  std::string_view text;
  std::size_t line;     // 1-based line of the first character
  std::size_t end_line; // 1-based line of the last character
  std::size_t column;   // 0-based byte column of the first character
};

// One logical line: the tokens from a statement start up to the newline that
// ends it at bracket depth 0. Comment-only lines form their own logical line
// with `comment_only` set.
struct LogicalLine {
  std::vector<Token> tokens;  // includes trailing Comment tokens
  std::size_t start_line = 0;
  std::size_t end_line = 0;
  std::size_t indent = 0;  // column of the first token
  bool comment_only = false;

  // Tokens with comments removed.
  std::vector<Token> code() const;
};

std::vector<LogicalLine> logical_lines(std::string_view text);

// Flat token stream (comments dropped) for the whole text.
std::vector<Token> code_tokens(std::string_view text);

bool is_op(const Token& t, std::string_view op);
bool is_name(const Token& t, std::string_view name);

// Text of a string-literal token without prefix and quotes. Escapes are not
// interpreted.
std::string_view string_body(std::string_view literal);

}  // namespace privcode::pylex
