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

#include "privcode/promptbuilder.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "privcode/errors.hpp"
#include "privcode/rng.hpp"

namespace privcode {

namespace {

std::string rstrip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
      continue;
    }
    if (space) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

std::string render_basic(const ApiRecord& r) {
  std::string out = rstrip("# API: " + r.path + r.signature) + "\n";
  const auto sentence = collapse_whitespace(first_sentence(r.description));
  if (!sentence.empty()) out += "#   " + sentence + "\n";
  return out;
}

std::string render_example(std::string_view example) {
  std::string out = "# Example:\n";
  while (!example.empty() && (example.back() == '\n' || example.back() == '\r')) {
    example.remove_suffix(1);
  }
  std::size_t start = 0;
  while (start <= example.size()) {
    auto nl = example.find('\n', start);
    if (nl == std::string_view::npos) nl = example.size();
    const auto line = rstrip(example.substr(start, nl - start));
    out += line.empty() ? "#" : "#   " + line;
    out += "\n";
    start = nl + 1;
  }
  return out;
}

}  // namespace

PromptFormat parse_prompt_format(std::string_view text) {
  std::string lower;
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "b" || lower == "basic") return PromptFormat::Basic;
  if (lower == "e" || lower == "examples") return PromptFormat::Examples;
  if (lower == "be" || lower == "basicandexamples") return PromptFormat::BasicAndExamples;
  throw PreconditionError("unknown prompt format '" + std::string(text) + "' (expected b, e or be)");
}

std::string_view to_string(PromptFormat format) {
  switch (format) {
    case PromptFormat::Basic: return "b";
    case PromptFormat::Examples: return "e";
    case PromptFormat::BasicAndExamples: return "be";
  }
  return "b";
}

RenderedApi render_api(const ApiRecord& record, PromptFormat format) {
  const bool has_example = !record.examples.empty();
  switch (format) {
    case PromptFormat::Basic:
      return {render_basic(record), false};
    case PromptFormat::Examples:
      if (!has_example) return {render_basic(record), true};
      return {render_example(record.examples.front()), false};
    case PromptFormat::BasicAndExamples:
      if (!has_example) return {render_basic(record), true};
      return {render_basic(record) + render_example(record.examples.front()), false};
  }
  return {render_basic(record), false};
}

NoisedApis inject_noise_and_shuffle(const std::vector<ApiRecord>& apis, const DocCatalog& catalog,
                                    double noise_rate, std::uint64_t seed) {
  if (catalog.empty()) throw PreconditionError("noise injection needs a non-empty catalog");
  if (!(noise_rate >= 0.0 && noise_rate < 1.0)) {
    throw PreconditionError("noise_rate must lie in [0, 1)");
  }
  Rng rng(seed);
  NoisedApis out{apis, std::nullopt};
  if (rng.bernoulli(noise_rate)) {
    std::set<std::string> present;
    for (const auto& a : apis) present.insert(a.api_id);
    std::vector<const ApiRecord*> candidates;
    for (const auto& r : catalog.records()) {
      if (!present.count(r.api_id)) candidates.push_back(&r);
    }
    if (!candidates.empty()) {
      const auto* pick = candidates[rng.uniform_index(candidates.size())];
      out.apis.push_back(*pick);
      out.inserted = pick->api_id;
    }
  }
  rng.shuffle(out.apis);
  return out;
}

std::vector<std::string> resolve_selection(const std::vector<std::string>& top5,
                                           const HumanChoice& choice) {
  if (top5.size() > 5) throw PreconditionError("at most five APIs can be presented");
  if (std::holds_alternative<NoneOfTheAbove>(choice)) return {};
  if (std::holds_alternative<NotSure>(choice)) {
    return {top5.begin(), top5.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(2, top5.size()))};
  }
  const auto& ids = std::get<Selected>(choice).api_ids;
  std::set<std::string> seen;
  for (const auto& id : ids) {
    if (std::find(top5.begin(), top5.end(), id) == top5.end()) {
      throw PreconditionError("selected API '" + id + "' was not among the presented APIs");
    }
    if (!seen.insert(id).second) throw PreconditionError("API '" + id + "' selected twice");
  }
  return ids;
}

std::vector<std::string> selected_api_ids(const ApiSelection& selection,
                                          const std::vector<std::string>& ranked) {
  if (std::holds_alternative<NoApi>(selection)) return {};
  if (const auto* oracle = std::get_if<OracleApis>(&selection)) return oracle->api_ids;
  if (const auto* topk = std::get_if<TopK>(&selection)) {
    if (topk->k < 1) throw PreconditionError("TopK requires k >= 1");
    return {ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(std::min(topk->k, ranked.size()))};
  }
  const std::vector<std::string> top5(
      ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(5, ranked.size())));
  return resolve_selection(top5, std::get<Human>(selection).choice);
}

AssembledPrompt assemble_prompt_detailed(const PromptSpec& spec, const DocCatalog& catalog) {
  AssembledPrompt out;
  if (spec.apis.empty()) {
    out.text = spec.code_context;
    return out;
  }
  auto noised = inject_noise_and_shuffle(spec.apis, catalog, spec.noise_rate, spec.seed);
  out.inserted = noised.inserted;
  bool first = true;
  for (const auto& api : noised.apis) {
    if (!first) out.text += "#\n";
    first = false;
    auto rendered = render_api(api, spec.format);
    if (rendered.fell_back_to_basic) {
      out.warnings.push_back(api.api_id + ": no example available, rendered API basic instead");
    }
    out.text += rendered.text;
    out.api_ids.push_back(api.api_id);
  }
  out.text += spec.code_context;
  return out;
}

std::string assemble_prompt(const PromptSpec& spec, const DocCatalog& catalog) {
  return assemble_prompt_detailed(spec, catalog).text;
}

}  // namespace privcode
