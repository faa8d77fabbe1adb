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
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "privcode/doccatalog.hpp"

namespace privcode {

enum class PromptFormat { Basic, Examples, BasicAndExamples };

// "b" / "e" / "be" (case-insensitive). Throws PreconditionError otherwise.
PromptFormat parse_prompt_format(std::string_view text);
std::string_view to_string(PromptFormat format);

struct RenderedApi {
  std::string text;
  bool fell_back_to_basic = false;  // Examples requested, record has none
};

// Basic:    "# API: <path><signature>\n#   <first sentence>\n"
// Examples: "# Example:\n" + first example, each line prefixed "#   "
// Lines never carry trailing whitespace.
RenderedApi render_api(const ApiRecord& record, PromptFormat format);

struct NoisedApis {
  std::vector<ApiRecord> apis;
  std::optional<std::string> inserted;  // api_id of the noise record, if any
};

// One Bernoulli(noise_rate) draw inserts a uniformly chosen catalog record not
// already present; then the list is shuffled. Pure in (inputs, seed).
NoisedApis inject_noise_and_shuffle(const std::vector<ApiRecord>& apis, const DocCatalog& catalog,
                                    double noise_rate, std::uint64_t seed);

// Human choice over the presented top-5.
struct Selected {
  std::vector<std::string> api_ids;
};
struct NoneOfTheAbove {};
struct NotSure {};
using HumanChoice = std::variant<Selected, NoneOfTheAbove, NotSure>;

std::vector<std::string> resolve_selection(const std::vector<std::string>& top5,
                                           const HumanChoice& choice);

// Experimental configurations for which APIs reach the prompt.
struct NoApi {};
struct OracleApis {
  std::vector<std::string> api_ids;
};
struct TopK {
  std::size_t k = 1;
};
struct Human {
  HumanChoice choice;
};
using ApiSelection = std::variant<NoApi, OracleApis, TopK, Human>;

// API ids a configuration prompts, given the retriever's ranking (only read
// by TopK and Human; Human sees the first five).
std::vector<std::string> selected_api_ids(const ApiSelection& selection,
                                          const std::vector<std::string>& ranked);

struct PromptSpec {
  std::vector<ApiRecord> apis;
  PromptFormat format = PromptFormat::Basic;
  std::string code_context;
  double noise_rate = 0.05;
  std::uint64_t seed = 0;
};

struct AssembledPrompt {
  std::string text;
  std::vector<std::string> api_ids;     // order as rendered
  std::optional<std::string> inserted;  // noise record, if any
  std::vector<std::string> warnings;
};

// Rendered API blocks (after noise and shuffle) joined by "#\n", then the
// code context verbatim. No APIs: the code context alone.
AssembledPrompt assemble_prompt_detailed(const PromptSpec& spec, const DocCatalog& catalog);
std::string assemble_prompt(const PromptSpec& spec, const DocCatalog& catalog);

}  // namespace privcode
