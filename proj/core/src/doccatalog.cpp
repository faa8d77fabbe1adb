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

#include "privcode/doccatalog.hpp"

#include <fstream>
#include <set>

#include "privcode/errors.hpp"
#include "privcode/rng.hpp"

namespace privcode {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string required_string(const Json& object, const char* field) {
  auto it = object.find(field);
  if (it == object.end()) throw ParseError(std::string("missing field '") + field + "'");
  if (!it->is_string()) throw ParseError(std::string("field '") + field + "' must be a string");
  return it->get<std::string>();
}

std::string optional_string(const Json& object, const char* field) {
  auto it = object.find(field);
  if (it == object.end() || it->is_null()) return {};
  if (!it->is_string()) throw ParseError(std::string("field '") + field + "' must be a string");
  return it->get<std::string>();
}

std::vector<std::string> string_array(const Json& object, const char* field) {
  std::vector<std::string> out;
  auto it = object.find(field);
  if (it == object.end() || it->is_null()) return out;
  if (!it->is_array()) throw ParseError(std::string("field '") + field + "' must be an array");
  for (const auto& item : *it) {
    if (!item.is_string()) {
      throw ParseError(std::string("field '") + field + "' must hold strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::string last_segment(std::string_view path) {
  const auto dot = path.rfind('.');
  return std::string(dot == std::string_view::npos ? path : path.substr(dot + 1));
}

}  // namespace

Json to_json(const ApiRecord& r) {
  Json params = Json::array();
  for (const auto& p : r.parameters) {
    params.push_back({{"name", p.name},
                      {"type", p.type},
                      {"default", p.default_value},
                      {"description", p.description}});
  }
  // nlohmann's object type sorts keys; field order on disk is therefore
  // alphabetical, which is fine for a keyed format.
  return Json{{"api_id", r.api_id},         {"library", r.library},
              {"name", r.name},             {"path", r.path},
              {"signature", r.signature},   {"description", r.description},
              {"parameters", params},       {"related", r.related},
              {"examples", r.examples}};
}

ApiRecord api_record_from_json(const Json& object) {
  if (!object.is_object()) throw ParseError("record must be a JSON object");
  ApiRecord r;
  r.api_id = required_string(object, "api_id");
  r.library = optional_string(object, "library");
  r.name = required_string(object, "name");
  r.path = required_string(object, "path");
  r.signature = required_string(object, "signature");
  r.description = optional_string(object, "description");
  if (auto it = object.find("parameters"); it != object.end() && !it->is_null()) {
    if (!it->is_array()) throw ParseError("field 'parameters' must be an array");
    for (const auto& p : *it) {
      if (!p.is_object()) throw ParseError("parameter entries must be objects");
      r.parameters.push_back({optional_string(p, "name"), optional_string(p, "type"),
                              optional_string(p, "default"), optional_string(p, "description")});
    }
  }
  r.related = string_array(object, "related");
  r.examples = string_array(object, "examples");
  return r;
}

DocCatalog::DocCatalog(std::vector<ApiRecord> records) : records_(std::move(records)) {
  std::set<std::pair<std::string, std::string>> paths;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    const auto where = "record " + std::to_string(i + 1) + " (" + r.api_id + ")";
    if (r.api_id.empty()) throw ValidationError(where + ": empty api_id");
    if (!by_id_.emplace(r.api_id, i).second) {
      throw ValidationError(where + ": duplicate api_id");
    }
    if (!paths.emplace(r.library, r.path).second) {
      throw ValidationError(where + ": duplicate path '" + r.path + "' in library '" +
                            r.library + "'");
    }
    if (r.name != last_segment(r.path)) {
      throw ValidationError(where + ": name '" + r.name + "' is not the last segment of '" +
                            r.path + "'");
    }
    if (r.signature.empty()) throw ValidationError(where + ": empty signature");
    if (trim(r.description).empty() && r.examples.empty()) {
      throw ValidationError(where + ": empty description requires at least one example");
    }
    name_index_[r.name].push_back(r.api_id);
  }
  if (!records_.empty()) library_ = records_.front().library;
}

const ApiRecord* DocCatalog::find(std::string_view api_id) const {
  auto it = by_id_.find(api_id);
  return it == by_id_.end() ? nullptr : &records_[it->second];
}

const ApiRecord& DocCatalog::at(std::string_view api_id) const {
  if (const auto* r = find(api_id)) return *r;
  throw ValidationError("unknown api_id '" + std::string(api_id) + "'");
}

DocCatalog parse_catalog(std::istream& in) {
  std::vector<ApiRecord> records;
  std::set<std::pair<std::string, std::string>> paths;
  for_each_json_line(in, [&](const Json& object, std::size_t line) {
    try {
      records.push_back(api_record_from_json(object));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line);
    }
    const auto& r = records.back();
    if (!paths.emplace(r.library, r.path).second) {
      throw ValidationError("line " + std::to_string(line) + ": duplicate path '" + r.path + "'");
    }
  });
  return DocCatalog(std::move(records));
}

DocCatalog parse_catalog(const std::filesystem::path& doc_file) {
  std::ifstream in(doc_file, std::ios::binary);
  if (!in) throw ParseError("cannot open catalog " + doc_file.string());
  return parse_catalog(in);
}

void write_catalog(std::ostream& out, const DocCatalog& catalog) {
  for (const auto& r : catalog.records()) write_json_line(out, to_json(r));
}

std::string first_sentence(std::string_view description) {
  const auto text = trim(description);
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    if (i + 1 == text.size() || is_space(text[i + 1])) {
      return std::string(trim(text.substr(0, i + 1)));
    }
  }
  return std::string(text);
}

std::vector<ApiRecord> lookup_by_name(const DocCatalog& catalog, std::string_view name) {
  std::vector<ApiRecord> out;
  auto it = catalog.name_index().find(name);
  if (it == catalog.name_index().end()) return out;
  for (const auto& id : it->second) out.push_back(catalog.at(id));
  return out;
}

std::optional<ApiRecord> resolve_name(const DocCatalog& catalog, std::string_view name,
                                      std::uint64_t rng_seed) {
  auto it = catalog.name_index().find(name);
  if (it == catalog.name_index().end() || it->second.empty()) return std::nullopt;
  const auto& ids = it->second;
  if (ids.size() == 1) return catalog.at(ids.front());
  Rng rng(mix_seed(rng_seed, fnv1a64(name)));
  return catalog.at(ids[rng.uniform_index(ids.size())]);
}

}  // namespace privcode
