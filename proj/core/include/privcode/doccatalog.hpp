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
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "privcode/jsonl.hpp"

namespace privcode {

struct ApiParameter {
  std::string name;
  std::string type;
  std::string default_value;
  std::string description;

  bool operator==(const ApiParameter&) const = default;
};

// One documentation entry of a (private) library.
struct ApiRecord {
  std::string api_id;
  std::string library;
  std::string name;  // final dotted segment of `path`
  std::string path;  // e.g. "KnowledgeFrame.iscontain"
  std::string signature;
  std::string description;
  std::vector<ApiParameter> parameters;
  std::vector<std::string> related;
  std::vector<std::string> examples;

  bool operator==(const ApiRecord&) const = default;
};

Json to_json(const ApiRecord& record);
// Field-level decoding only; invariants are checked by DocCatalog.
ApiRecord api_record_from_json(const Json& object);

// Immutable, validated set of ApiRecords in file order.
class DocCatalog {
 public:
  DocCatalog() = default;

  // Validates every record invariant; throws ValidationError on the first
  // violation (duplicate api_id, duplicate path within a library, name not
  // matching the path, empty signature, no description and no example).
  explicit DocCatalog(std::vector<ApiRecord> records);

  const std::vector<ApiRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  // Library of the first record, "" for an empty catalog.
  const std::string& library() const noexcept { return library_; }

  const ApiRecord* find(std::string_view api_id) const;
  const ApiRecord& at(std::string_view api_id) const;

  // api_ids sharing a short name, in catalog order.
  const std::map<std::string, std::vector<std::string>, std::less<>>& name_index() const noexcept {
    return name_index_;
  }

 private:
  std::vector<ApiRecord> records_;
  std::string library_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
  std::map<std::string, std::vector<std::string>, std::less<>> name_index_;
};

DocCatalog parse_catalog(std::istream& in);
DocCatalog parse_catalog(const std::filesystem::path& doc_file);
void write_catalog(std::ostream& out, const DocCatalog& catalog);

// Prefix up to and including the first '.', '!' or '?' that is followed by
// whitespace or end of text; the whole (trimmed) text when there is none.
std::string first_sentence(std::string_view description);

std::vector<ApiRecord> lookup_by_name(const DocCatalog& catalog, std::string_view name);

// Single match: that record. Several: one picked uniformly, a pure function
// of (catalog, name, seed). None: nullopt.
std::optional<ApiRecord> resolve_name(const DocCatalog& catalog, std::string_view name,
                                      std::uint64_t rng_seed);

}  // namespace privcode
