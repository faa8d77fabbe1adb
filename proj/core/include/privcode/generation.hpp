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

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace privcode {

std::vector<std::string> default_stop_markers();

struct GenerationRequest {
  std::string prompt;
  int n_samples = 100;
  double temperature = 0.8;
  double top_p = 0.95;
  int max_new_tokens = 300;
  std::vector<std::string> stop_markers = default_stop_markers();

  // Throws PreconditionError when a field is out of range.
  void validate() const;
};

enum class FinishReason { Stop, Length, Error };

std::string_view to_string(FinishReason reason);
FinishReason parse_finish_reason(std::string_view text);

struct Completion {
  std::string text;  // raw cut at the earliest stop marker
  std::string raw;
  FinishReason finish_reason = FinishReason::Stop;

  bool operator==(const Completion&) const = default;
};

// `raw` up to (excluding) the earliest occurrence of any marker. When two
// markers start at the same position the first listed wins; the cut point is
// the same either way.
std::string truncate_at_stop(std::string_view raw, const std::vector<std::string>& stop_markers);

// One sample as returned by a model, before local truncation.
struct RawChoice {
  std::string text;
  FinishReason finish_reason = FinishReason::Stop;
};

class CompletionModel {
 public:
  virtual ~CompletionModel() = default;
  // Returns the samples in model order. Implementations throw TransportError
  // or ProtocolError; per-sample failures use FinishReason::Error.
  virtual std::vector<RawChoice> complete(const GenerationRequest& request) = 0;
};

std::string sha256_hex(std::string_view data);

// Canned completions keyed by SHA-256 of the prompt. When more samples are
// requested than the fixture holds, the list repeats from the start.
class MockModel : public CompletionModel {
 public:
  MockModel() = default;
  // JSON lines {prompt_sha256, completions:[string]}.
  static MockModel from_fixture(const std::filesystem::path& file);

  void add(std::string_view prompt, std::vector<std::string> completions);
  void add_by_hash(std::string prompt_sha256, std::vector<std::string> completions);

  std::vector<RawChoice> complete(const GenerationRequest& request) override;

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> by_hash_;
};

struct EndpointConfig {
  std::string url;  // e.g. http://localhost:8000/v1/completions
  std::string key;  // sent as "Authorization: Bearer <key>" when non-empty
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{250};
  std::chrono::seconds timeout{120};

  // MODEL_URL / MODEL_KEY.
  static EndpointConfig from_env();
};

// JSON-over-HTTP client: POST {prompt, n, temperature, top_p, max_tokens,
// stop} and expect {choices:[{text, finish_reason}]}. Transport failures are
// retried with exponential backoff; HTTP or schema errors are not.
class HttpModel : public CompletionModel {
 public:
  explicit HttpModel(EndpointConfig config);
  std::vector<RawChoice> complete(const GenerationRequest& request) override;

 private:
  EndpointConfig config_;
  std::string scheme_host_port_;
  std::string path_;
};

// Sends the request and truncates every sample at the stop markers.
std::vector<Completion> generate(CompletionModel& model, const GenerationRequest& request);

// Issues independent requests with at most `max_in_flight` outstanding and
// returns results in request order. If any request fails, the failure of
// the lowest-indexed one is rethrown after all workers finish.
std::vector<std::vector<Completion>> generate_batch(CompletionModel& model,
                                                    const std::vector<GenerationRequest>& requests,
                                                    std::size_t max_in_flight = 4);

}  // namespace privcode
