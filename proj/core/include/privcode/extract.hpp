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

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "privcode/doccatalog.hpp"
#include "privcode/jsonl.hpp"

namespace privcode {

// A contiguous, well-formed snippet of a source file: a top-level definition
// (with its decorators, docstring and directly preceding comments) or a
// maximal run of other top-level statements.
struct CodeBlock {
  std::string file_id;
  int index_in_file = 0;
  std::string text;
  std::string annotation;
  std::vector<std::string> api_names;
  std::pair<int, int> line_span{0, 0};  // 1-based, inclusive

  bool operator==(const CodeBlock&) const = default;
};

struct FileMeta {
  std::string file_id;
  std::int64_t stars = 0;
  std::int64_t n_api = 0;  // distinct extracted API names
  std::int64_t m_api = 0;  // total catalog matches across those names
  double r_ut = 0.0;       // unit-test functions / all functions

  bool operator==(const FileMeta&) const = default;
};

struct TrainingPair {
  std::string description;
  std::string positive;
  std::vector<std::string> negatives;

  bool operator==(const TrainingPair&) const = default;
};

// How a local name got bound by an import statement.
struct AliasBinding {
  enum class Kind {
    Module,  // import X / import X as Y
    Member,  // from X import a [as b]
  };
  std::string library;  // root package, e.g. "monkey" for "monkey.io"
  Kind kind = Kind::Module;

  bool operator==(const AliasBinding&) const = default;
};

using AliasMap = std::map<std::string, AliasBinding, std::less<>>;

std::vector<CodeBlock> split_blocks(std::string_view file_text, std::string_view file_id = "");

AliasMap extract_alias_map(std::string_view file_text);

// Short names of calls rooted at a tracked alias, plus direct calls of
// names bound with `from lib import name`. First-occurrence order, unique.
std::vector<std::string> extract_api_names(std::string_view block_text, const AliasMap& aliases);
std::vector<std::string> extract_api_names(const CodeBlock& block, const AliasMap& aliases);

// Every name that appears in call position (`name(` or `.name(`), regardless
// of its receiver. First-occurrence order, unique.
std::vector<std::string> extract_call_names(std::string_view text);

// Docstring if present, else the comment lines directly preceding the first
// statement, else "". Whitespace-normalized.
std::string extract_annotation(std::string_view block_text);
std::string extract_annotation(const CodeBlock& block);

// split_blocks + extract_alias_map + per-block annotation and API names.
std::vector<CodeBlock> extract_blocks(std::string_view file_text, std::string_view file_id);

struct PairOptions {
  int n_neg = 8;
  std::uint64_t seed = 0;
};

std::vector<TrainingPair> make_pairs(const std::vector<CodeBlock>& blocks, const DocCatalog& catalog,
                                     const PairOptions& options = {});

// Re-sampling factors. Exposed individually for testing.
double resample_api_factor(std::int64_t n_api, std::int64_t m_api);
double resample_star_factor(std::int64_t stars);
double resample_ut_factor(double r_ut);
double resample_weight(const FileMeta& meta);

FileMeta compute_file_meta(std::string_view file_text, std::string_view file_id, std::int64_t stars,
                           const DocCatalog& catalog);

// Draws `count` file indices with probability proportional to `weights`.
std::vector<std::size_t> sample_by_weight(const std::vector<double>& weights, std::size_t count,
                                          std::uint64_t seed);

struct SourceFile {
  std::string file_id;  // path relative to the corpus root, '/'-separated
  std::string text;
};

// Reads every file with one of `extensions` under `root`, sorted by file_id.
// Files whose text is byte-identical to an earlier one are dropped.
std::vector<SourceFile> load_corpus(const std::filesystem::path& root,
                                    const std::vector<std::string>& extensions = {".py"});

Json to_json(const CodeBlock& block);
CodeBlock code_block_from_json(const Json& object);
Json to_json(const TrainingPair& pair);
TrainingPair training_pair_from_json(const Json& object);
Json to_json(const FileMeta& meta);  // includes the computed "weight"
FileMeta file_meta_from_json(const Json& object);

std::vector<CodeBlock> read_blocks(const std::filesystem::path& file);
std::vector<TrainingPair> read_pairs(const std::filesystem::path& file);
std::vector<FileMeta> read_metas(const std::filesystem::path& file);

}  // namespace privcode
