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

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace privcode {

// Whole-identifier substitution table used to turn code and docs written
// against a public library into a pseudo-private one.
class KeywordMap {
 public:
  KeywordMap() = default;

  // Throws ValidationError on duplicate sources or when a target is the
  // source of another entry (the message spells out the chain).
  explicit KeywordMap(std::vector<std::pair<std::string, std::string>> entries);

  // Entries in matching order: longest source first, ties in file order.
  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept {
    return entries_;
  }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  const std::string* target(std::string_view source) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::unordered_map<std::string, std::string> lookup_;
};

// "source<TAB>target" per line; blank and '#'-prefixed lines ignored.
KeywordMap load_map(std::istream& in);
KeywordMap load_map(const std::filesystem::path& tsv_file);

// Single left-to-right pass over identifier tokens ([A-Za-z0-9_]+). Tokens
// equal to a source are replaced; every other byte is copied unchanged.
std::string apply(const KeywordMap& map, std::string_view text);

}  // namespace privcode
