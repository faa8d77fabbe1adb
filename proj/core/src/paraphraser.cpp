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

#include "privcode/paraphraser.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "privcode/errors.hpp"

namespace privcode {

namespace {

bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

}  // namespace

KeywordMap::KeywordMap(std::vector<std::pair<std::string, std::string>> entries) {
  for (const auto& [source, target] : entries) {
    if (source.empty() || target.empty()) throw ValidationError("empty keyword in map");
    if (!std::all_of(source.begin(), source.end(), ident_char) ||
        !std::all_of(target.begin(), target.end(), ident_char)) {
      throw ValidationError("'" + source + "' -> '" + target + "' is not identifier -> identifier");
    }
    if (!lookup_.emplace(source, target).second) {
      throw ValidationError("duplicate source '" + source + "'");
    }
  }
  for (const auto& [source, target] : entries) {
    if (target == source) continue;
    auto it = lookup_.find(target);
    if (it == lookup_.end()) continue;
    // Follow the chain to show the whole loop or double-rewrite path.
    std::string chain = source + " -> " + target;
    std::set<std::string> seen{source, target};
    for (auto cur = it; cur != lookup_.end(); cur = lookup_.find(cur->second)) {
      chain += " -> " + cur->second;
      if (!seen.insert(cur->second).second) break;
    }
    throw ValidationError("keyword map is not loop-free: " + chain);
  }
  entries_ = std::move(entries);
  std::stable_sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
    return a.first.size() > b.first.size();
  });
}

const std::string* KeywordMap::target(std::string_view source) const {
  auto it = lookup_.find(std::string(source));
  return it == lookup_.end() ? nullptr : &it->second;
}

KeywordMap load_map(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError("expected 'source<TAB>target'", line_no);
    }
    rows.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  try {
    return KeywordMap(std::move(rows));
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("keyword map: ") + e.what());
  }
}

KeywordMap load_map(const std::filesystem::path& tsv_file) {
  std::ifstream in(tsv_file, std::ios::binary);
  if (!in) throw ParseError("cannot open keyword map " + tsv_file.string());
  return load_map(in);
}

std::string apply(const KeywordMap& map, std::string_view text) {
  std::string out;
  out.reserve(text.size() + text.size() / 8);
  std::size_t i = 0;
  while (i < text.size()) {
    if (!ident_char(text[i])) {
      out.push_back(text[i++]);
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && ident_char(text[i])) ++i;
    const auto token = text.substr(start, i - start);
    if (const auto* replacement = map.target(token)) {
      out += *replacement;
    } else {
      out += token;
    }
  }
  return out;
}

}  // namespace privcode
