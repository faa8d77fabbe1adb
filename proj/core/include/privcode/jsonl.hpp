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
#include <functional>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace privcode {

using Json = nlohmann::json;

// Calls `fn(object, line_number)` for every non-blank line of a JSON-lines
// stream. Malformed JSON raises ParseError carrying the 1-based line number.
void for_each_json_line(std::istream& in,
                        const std::function<void(const Json&, std::size_t)>& fn);

void for_each_json_line(const std::filesystem::path& file,
                        const std::function<void(const Json&, std::size_t)>& fn);

// Compact single-line dump followed by '\n'.
void write_json_line(std::ostream& out, const Json& value);

std::string read_text_file(const std::filesystem::path& file);
void write_text_file(const std::filesystem::path& file, std::string_view text);

}  // namespace privcode
