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

#include "privcode/extract.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <unordered_set>

#include "privcode/errors.hpp"
#include "privcode/rng.hpp"
#include "pylex.hpp"

namespace privcode {

namespace {

using pylex::LogicalLine;
using pylex::Token;
using pylex::TokenKind;

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

bool is_def_start(const std::vector<Token>& code) {
  if (code.empty()) return false;
  if (pylex::is_name(code[0], "def") || pylex::is_name(code[0], "class")) return true;
  return code.size() > 1 && pylex::is_name(code[0], "async") && pylex::is_name(code[1], "def");
}

bool is_decorator(const std::vector<Token>& code) {
  return !code.empty() && pylex::is_op(code[0], "@");
}

struct Span {
  bool is_def = false;
  bool has_def = false;
  std::size_t start = 0;
  std::size_t end = 0;

  void add(const LogicalLine& line) {
    if (start == 0 || line.start_line < start) start = line.start_line;
    end = std::max(end, line.end_line);
  }
  void add(const std::vector<const LogicalLine*>& lines) {
    for (const auto* l : lines) add(*l);
  }
};

std::vector<Span> block_spans(const std::vector<LogicalLine>& lines) {
  std::vector<Span> out;
  std::optional<Span> cur;
  std::vector<const LogicalLine*> pending;  // top-level comment lines

  auto close = [&] {
    if (cur && cur->start != 0) out.push_back(*cur);
    cur.reset();
  };
  auto start_run = [&](const std::vector<const LogicalLine*>& with) {
    close();
    cur = Span{};
    cur->add(with);
  };

  for (const auto& line : lines) {
    if (line.comment_only && line.indent == 0) {
      pending.push_back(&line);
      continue;
    }
    if (line.indent > 0) {
      if (!cur) start_run({});
      cur->add(pending);
      cur->add(line);
      pending.clear();
      continue;
    }
    const auto code = line.code();
    const bool def_start = is_def_start(code);
    if (def_start || is_decorator(code)) {
      if (cur && cur->is_def && !cur->has_def) {
        // decorator chain continues
        cur->add(pending);
        cur->add(line);
        cur->has_def = def_start;
        pending.clear();
        continue;
      }
      // Comments directly above (no blank gap) belong to the definition.
      std::size_t split = pending.size();
      std::size_t next_start = line.start_line;
      while (split > 0 && pending[split - 1]->end_line + 1 == next_start) {
        next_start = pending[split - 1]->start_line;
        --split;
      }
      std::vector<const LogicalLine*> detached(pending.begin(), pending.begin() + split);
      std::vector<const LogicalLine*> attached(pending.begin() + split, pending.end());
      if (!detached.empty()) {
        if (cur && !cur->is_def) {
          cur->add(detached);
        } else {
          start_run(detached);
        }
      }
      close();
      cur = Span{true, def_start, 0, 0};
      cur->add(attached);
      cur->add(line);
      pending.clear();
      continue;
    }
    if (cur && !cur->is_def) {
      cur->add(pending);
      cur->add(line);
    } else {
      pending.push_back(&line);
      start_run(pending);
    }
    pending.clear();
  }
  if (!pending.empty()) {
    if (cur && !cur->is_def) {
      cur->add(pending);
    } else {
      start_run(pending);
    }
  }
  close();
  return out;
}

std::string join_words(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out.push_back(' ');
    out += p;
  }
  return out;
}

std::string normalize_docstring(const std::vector<Token>& strings) {
  std::string raw;
  for (const auto& t : strings) raw += pylex::string_body(t.text);
  std::vector<std::string> parts;
  for (auto line : split_lines(raw)) parts.emplace_back(trim(line));
  return join_words(parts);
}

std::string normalize_comment(std::string_view comment) {
  if (starts_with(comment, "#!")) return {};
  if (comment.find("-*-") != std::string_view::npos &&
      comment.find("coding") != std::string_view::npos) {
    return {};
  }
  while (!comment.empty() && comment.front() == '#') comment.remove_prefix(1);
  return std::string(trim(comment));
}

bool all_strings(const std::vector<Token>& code) {
  return !code.empty() && std::all_of(code.begin(), code.end(), [](const Token& t) {
    return t.kind == TokenKind::String;
  });
}

// Tokens after the header colon of a def/class logical line.
std::vector<Token> after_header_colon(const std::vector<Token>& code) {
  int depth = 0;
  for (std::size_t i = 0; i < code.size(); ++i) {
    const auto& t = code[i];
    if (t.kind != TokenKind::Op) continue;
    if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
    if (t.text == ")" || t.text == "]" || t.text == "}") depth = std::max(0, depth - 1);
    if (t.text == ":" && depth == 0) return {code.begin() + static_cast<std::ptrdiff_t>(i) + 1, code.end()};
  }
  return {};
}

std::optional<std::string> docstring(const std::vector<LogicalLine>& lines, std::size_t first) {
  auto code = lines[first].code();
  if (all_strings(code)) return normalize_docstring(code);
  std::size_t i = first;
  while (i < lines.size() && (lines[i].comment_only || is_decorator(lines[i].code()))) ++i;
  if (i >= lines.size()) return std::nullopt;
  code = lines[i].code();
  if (!is_def_start(code)) return std::nullopt;
  const auto rest = after_header_colon(code);
  if (!rest.empty()) {
    // one-liner: def f(): "doc"
    if (all_strings(rest)) return normalize_docstring(rest);
    return std::nullopt;
  }
  for (std::size_t j = i + 1; j < lines.size(); ++j) {
    if (lines[j].comment_only) continue;
    if (lines[j].indent <= lines[i].indent) return std::nullopt;
    const auto body = lines[j].code();
    if (all_strings(body)) return normalize_docstring(body);
    return std::nullopt;
  }
  return std::nullopt;
}

std::string dotted_root(const std::vector<Token>& code, std::size_t& i) {
  if (i >= code.size() || code[i].kind != TokenKind::Name) return {};
  std::string root(code[i].text);
  ++i;
  while (i + 1 < code.size() && pylex::is_op(code[i], ".") && code[i + 1].kind == TokenKind::Name) {
    i += 2;
  }
  return root;
}

void parse_import(const std::vector<Token>& code, AliasMap& out) {
  if (code.empty()) return;
  if (pylex::is_name(code[0], "import")) {
    std::size_t i = 1;
    while (i < code.size()) {
      const auto root = dotted_root(code, i);
      if (root.empty()) return;
      std::string alias = root;
      if (i + 1 < code.size() && pylex::is_name(code[i], "as") &&
          code[i + 1].kind == TokenKind::Name) {
        alias = std::string(code[i + 1].text);
        i += 2;
      }
      out[alias] = {root, AliasBinding::Kind::Module};
      if (i < code.size() && pylex::is_op(code[i], ",")) {
        ++i;
      } else {
        return;
      }
    }
    return;
  }
  if (!pylex::is_name(code[0], "from")) return;
  std::size_t i = 1;
  if (i < code.size() && pylex::is_op(code[i], ".")) return;  // relative import
  const auto root = dotted_root(code, i);
  if (root.empty() || i >= code.size() || !pylex::is_name(code[i], "import")) return;
  ++i;
  if (i < code.size() && pylex::is_op(code[i], "(")) ++i;
  while (i < code.size() && code[i].kind == TokenKind::Name) {
    std::string alias(code[i].text);
    ++i;
    if (i + 1 < code.size() && pylex::is_name(code[i], "as") && code[i + 1].kind == TokenKind::Name) {
      alias = std::string(code[i + 1].text);
      i += 2;
    }
    out[alias] = {root, AliasBinding::Kind::Member};
    if (i < code.size() && pylex::is_op(code[i], ",")) ++i;
  }
}

bool is_open(const Token& t) { return pylex::is_op(t, "(") || pylex::is_op(t, "["); }

std::size_t skip_group(const std::vector<Token>& code, std::size_t i) {
  int depth = 0;
  for (; i < code.size(); ++i) {
    const auto& t = code[i];
    if (t.kind != TokenKind::Op) continue;
    if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
    if (t.text == ")" || t.text == "]" || t.text == "}") {
      if (--depth == 0) return i + 1;
    }
  }
  return code.size();
}

bool defines_name(const std::vector<Token>& code, std::size_t i) {
  return i > 0 && (pylex::is_name(code[i - 1], "def") || pylex::is_name(code[i - 1], "class"));
}

class OrderedNames {
 public:
  void add(std::string_view name) {
    if (seen_.emplace(name).second) names_.emplace_back(name);
  }
  std::vector<std::string> take() { return std::move(names_); }

 private:
  std::set<std::string, std::less<>> seen_;
  std::vector<std::string> names_;
};

}  // namespace

std::vector<CodeBlock> split_blocks(std::string_view file_text, std::string_view file_id) {
  const auto lines = split_lines(file_text);
  std::vector<CodeBlock> blocks;
  for (const auto& span : block_spans(pylex::logical_lines(file_text))) {
    CodeBlock block;
    block.file_id = std::string(file_id);
    block.index_in_file = static_cast<int>(blocks.size());
    block.line_span = {static_cast<int>(span.start), static_cast<int>(span.end)};
    for (std::size_t l = span.start; l <= span.end && l <= lines.size(); ++l) {
      if (l > span.start) block.text.push_back('\n');
      block.text += lines[l - 1];
    }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

AliasMap extract_alias_map(std::string_view file_text) {
  AliasMap out;
  for (const auto& line : pylex::logical_lines(file_text)) {
    const auto code = line.code();
    std::vector<Token> stmt;
    int depth = 0;
    for (const auto& t : code) {
      if (pylex::is_op(t, "(") || pylex::is_op(t, "[") || pylex::is_op(t, "{")) ++depth;
      if (pylex::is_op(t, ")") || pylex::is_op(t, "]") || pylex::is_op(t, "}")) {
        depth = std::max(0, depth - 1);
      }
      // `;` separates statements; a bare `:` ends a compound header such as
      // `if cond: import x`.
      if (pylex::is_op(t, ";") || (depth == 0 && pylex::is_op(t, ":"))) {
        parse_import(stmt, out);
        stmt.clear();
      } else {
        stmt.push_back(t);
      }
    }
    parse_import(stmt, out);
  }
  return out;
}

std::vector<std::string> extract_api_names(std::string_view block_text, const AliasMap& aliases) {
  const auto code = pylex::code_tokens(block_text);
  OrderedNames names;
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (code[i].kind != TokenKind::Name) continue;
    if (i > 0 && pylex::is_op(code[i - 1], ".")) continue;
    if (defines_name(code, i)) continue;
    auto it = aliases.find(code[i].text);
    if (it == aliases.end()) continue;
    std::size_t j = i + 1;
    if (it->second.kind == AliasBinding::Kind::Member && j < code.size() &&
        pylex::is_op(code[j], "(")) {
      names.add(code[i].text);
    }
    while (j < code.size()) {
      if (pylex::is_op(code[j], ".") && j + 1 < code.size() && code[j + 1].kind == TokenKind::Name) {
        if (j + 2 < code.size() && pylex::is_op(code[j + 2], "(")) names.add(code[j + 1].text);
        j += 2;
      } else if (is_open(code[j])) {
        j = skip_group(code, j);
      } else {
        break;
      }
    }
  }
  return names.take();
}

std::vector<std::string> extract_api_names(const CodeBlock& block, const AliasMap& aliases) {
  return extract_api_names(block.text, aliases);
}

std::vector<std::string> extract_call_names(std::string_view text) {
  static const std::set<std::string_view> kKeywords = {
      "and",  "as",     "assert", "await", "del",    "elif",   "else",  "except",
      "for",  "from",   "if",     "import", "in",    "is",     "lambda", "not",
      "or",   "raise",  "return", "while", "with",   "yield"};
  const auto code = pylex::code_tokens(text);
  OrderedNames names;
  for (std::size_t i = 0; i + 1 < code.size(); ++i) {
    if (code[i].kind != TokenKind::Name || !pylex::is_op(code[i + 1], "(")) continue;
    if (defines_name(code, i) || kKeywords.count(code[i].text)) continue;
    names.add(code[i].text);
  }
  return names.take();
}

std::string extract_annotation(std::string_view block_text) {
  const auto lines = pylex::logical_lines(block_text);
  std::size_t first = 0;
  while (first < lines.size() && lines[first].comment_only) ++first;
  if (first == lines.size()) return {};
  if (auto doc = docstring(lines, first)) {
    if (!doc->empty()) return *doc;
  }
  std::vector<std::string> parts;
  std::size_t next_start = lines[first].start_line;
  for (std::size_t i = first; i > 0; --i) {
    const auto& line = lines[i - 1];
    if (line.end_line + 1 != next_start) break;
    parts.push_back(normalize_comment(line.tokens.front().text));
    next_start = line.start_line;
  }
  std::reverse(parts.begin(), parts.end());
  return join_words(parts);
}

std::string extract_annotation(const CodeBlock& block) { return extract_annotation(block.text); }

std::vector<CodeBlock> extract_blocks(std::string_view file_text, std::string_view file_id) {
  const auto aliases = extract_alias_map(file_text);
  auto blocks = split_blocks(file_text, file_id);
  for (auto& b : blocks) {
    b.annotation = extract_annotation(b);
    b.api_names = extract_api_names(b, aliases);
  }
  return blocks;
}

std::vector<TrainingPair> make_pairs(const std::vector<CodeBlock>& blocks, const DocCatalog& catalog,
                                     const PairOptions& options) {
  if (catalog.empty()) throw PreconditionError("make_pairs: empty catalog");
  if (options.n_neg < 1) throw PreconditionError("make_pairs: n_neg must be >= 1");
  if (static_cast<std::size_t>(options.n_neg) >= catalog.size()) {
    throw PreconditionError("make_pairs: catalog of " + std::to_string(catalog.size()) +
                            " records cannot supply " + std::to_string(options.n_neg) +
                            " negatives plus a positive");
  }
  Rng rng(options.seed);
  std::vector<TrainingPair> pairs;
  for (const auto& block : blocks) {
    const auto description = std::string(trim(block.annotation));
    if (description.empty()) continue;

    std::set<std::string, std::less<>> excluded;
    for (const auto& name : block.api_names) {
      if (auto it = catalog.name_index().find(name); it != catalog.name_index().end()) {
        excluded.insert(it->second.begin(), it->second.end());
      }
    }
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
      if (!excluded.count(catalog.records()[i].api_id)) eligible.push_back(i);
    }

    for (const auto& name : block.api_names) {
      const auto positive = resolve_name(catalog, name, rng.next());
      if (!positive) continue;
      const auto n = static_cast<std::size_t>(options.n_neg);
      if (eligible.size() < n) {
        throw PreconditionError("make_pairs: block " + block.file_id + "#" +
                                std::to_string(block.index_in_file) + " has only " +
                                std::to_string(eligible.size()) + " eligible negatives, need " +
                                std::to_string(n));
      }
      auto pool = eligible;
      TrainingPair pair{description, positive->api_id, {}};
      for (std::size_t k = 0; k < n; ++k) {
        const auto pick = k + static_cast<std::size_t>(rng.uniform_index(pool.size() - k));
        std::swap(pool[k], pool[pick]);
        pair.negatives.push_back(catalog.records()[pool[k]].api_id);
      }
      pairs.push_back(std::move(pair));
    }
  }
  return pairs;
}

double resample_api_factor(std::int64_t n_api, std::int64_t m_api) {
  if (n_api <= 0 || m_api <= 0) return 5.0;
  const double ratio = static_cast<double>(m_api) / static_cast<double>(n_api);
  return 5.0 - std::clamp(std::log(ratio), 0.0, 5.0) * 0.2;
}

double resample_star_factor(std::int64_t stars) {
  if (stars < 0) throw PreconditionError("stars must be non-negative");
  return 1.0 + std::clamp(std::log(static_cast<double>(stars) + 1.0), 0.0, 5.0) * 0.2;
}

double resample_ut_factor(double r_ut) { return std::clamp(0.5 + (1.0 - r_ut), 0.0, 1.0); }

double resample_weight(const FileMeta& meta) {
  return resample_api_factor(meta.n_api, meta.m_api) * resample_star_factor(meta.stars) *
         resample_ut_factor(meta.r_ut);
}

FileMeta compute_file_meta(std::string_view file_text, std::string_view file_id, std::int64_t stars,
                           const DocCatalog& catalog) {
  FileMeta meta;
  meta.file_id = std::string(file_id);
  meta.stars = stars;

  const auto aliases = extract_alias_map(file_text);
  OrderedNames names;
  for (const auto& block : split_blocks(file_text)) {
    for (const auto& n : extract_api_names(block, aliases)) names.add(n);
  }
  for (const auto& n : names.take()) {
    ++meta.n_api;
    if (auto it = catalog.name_index().find(n); it != catalog.name_index().end()) {
      meta.m_api += static_cast<std::int64_t>(it->second.size());
    }
  }

  struct Scope {
    std::size_t indent;
    std::string name;
  };
  std::vector<Scope> classes;
  std::size_t functions = 0;
  std::size_t unit_tests = 0;
  for (const auto& line : pylex::logical_lines(file_text)) {
    if (line.comment_only) continue;
    while (!classes.empty() && classes.back().indent >= line.indent) classes.pop_back();
    const auto code = line.code();
    std::size_t i = 0;
    if (i < code.size() && pylex::is_name(code[i], "async")) ++i;
    if (i + 1 >= code.size() || code[i + 1].kind != TokenKind::Name) continue;
    const auto name = code[i + 1].text;
    if (pylex::is_name(code[i], "class")) {
      classes.push_back({line.indent, std::string(name)});
    } else if (pylex::is_name(code[i], "def")) {
      ++functions;
      const bool in_test_class = std::any_of(classes.begin(), classes.end(), [](const Scope& s) {
        return starts_with(s.name, "Test");
      });
      if (starts_with(name, "test") || in_test_class) ++unit_tests;
    }
  }
  meta.r_ut = functions == 0 ? 0.0 : static_cast<double>(unit_tests) / static_cast<double>(functions);
  return meta;
}

std::vector<std::size_t> sample_by_weight(const std::vector<double>& weights, std::size_t count,
                                          std::uint64_t seed) {
  std::vector<double> cumulative;
  cumulative.reserve(weights.size());
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw PreconditionError("weights must be finite and >= 0");
    total += w;
    cumulative.push_back(total);
  }
  if (count > 0 && !(total > 0.0)) throw PreconditionError("weights sum to zero");
  Rng rng(seed);
  std::vector<std::size_t> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double u = rng.uniform01() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) {
      // u rounded up to the total: take the last file with positive weight.
      --it;
      while (it != cumulative.begin() && weights[static_cast<std::size_t>(it - cumulative.begin())] == 0.0) --it;
    }
    out.push_back(static_cast<std::size_t>(it - cumulative.begin()));
  }
  return out;
}

std::vector<SourceFile> load_corpus(const std::filesystem::path& root,
                                    const std::vector<std::string>& extensions) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) throw PreconditionError("not a directory: " + root.string());
  std::vector<SourceFile> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension().string();
    if (std::find(extensions.begin(), extensions.end(), ext) == extensions.end()) continue;
    files.push_back({fs::relative(entry.path(), root).generic_string(), read_text_file(entry.path())});
  }
  std::sort(files.begin(), files.end(),
            [](const SourceFile& a, const SourceFile& b) { return a.file_id < b.file_id; });
  std::unordered_set<std::string> seen;
  std::vector<SourceFile> unique;
  for (auto& f : files) {
    if (seen.insert(f.text).second) unique.push_back(std::move(f));
  }
  return unique;
}

Json to_json(const CodeBlock& b) {
  return Json{{"file_id", b.file_id},
              {"index_in_file", b.index_in_file},
              {"text", b.text},
              {"annotation", b.annotation},
              {"api_names", b.api_names},
              {"line_span", {b.line_span.first, b.line_span.second}}};
}

CodeBlock code_block_from_json(const Json& o) {
  try {
    CodeBlock b;
    b.file_id = o.at("file_id").get<std::string>();
    b.index_in_file = o.at("index_in_file").get<int>();
    b.text = o.at("text").get<std::string>();
    b.annotation = o.value("annotation", std::string{});
    b.api_names = o.value("api_names", std::vector<std::string>{});
    const auto& span = o.at("line_span");
    b.line_span = {span.at(0).get<int>(), span.at(1).get<int>()};
    return b;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad block record: ") + e.what());
  }
}

Json to_json(const TrainingPair& p) {
  return Json{{"description", p.description}, {"positive", p.positive}, {"negatives", p.negatives}};
}

TrainingPair training_pair_from_json(const Json& o) {
  try {
    return {o.at("description").get<std::string>(), o.at("positive").get<std::string>(),
            o.at("negatives").get<std::vector<std::string>>()};
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad pair record: ") + e.what());
  }
}

Json to_json(const FileMeta& m) {
  return Json{{"file_id", m.file_id}, {"stars", m.stars}, {"n_api", m.n_api},
              {"m_api", m.m_api},     {"r_ut", m.r_ut},   {"weight", resample_weight(m)}};
}

FileMeta file_meta_from_json(const Json& o) {
  try {
    return {o.at("file_id").get<std::string>(), o.at("stars").get<std::int64_t>(),
            o.at("n_api").get<std::int64_t>(), o.at("m_api").get<std::int64_t>(),
            o.at("r_ut").get<double>()};
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad meta record: ") + e.what());
  }
}

namespace {

template <typename T, typename F>
std::vector<T> read_records(const std::filesystem::path& file, F decode) {
  std::vector<T> out;
  for_each_json_line(file, [&](const Json& o, std::size_t line) {
    try {
      out.push_back(decode(o));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line);
    }
  });
  return out;
}

}  // namespace

std::vector<CodeBlock> read_blocks(const std::filesystem::path& file) {
  return read_records<CodeBlock>(file, code_block_from_json);
}

std::vector<TrainingPair> read_pairs(const std::filesystem::path& file) {
  return read_records<TrainingPair>(file, training_pair_from_json);
}

std::vector<FileMeta> read_metas(const std::filesystem::path& file) {
  return read_records<FileMeta>(file, file_meta_from_json);
}

}  // namespace privcode
