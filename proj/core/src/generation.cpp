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

#include "privcode/generation.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>

#include <httplib.h>

#include "privcode/errors.hpp"
#include "privcode/jsonl.hpp"

namespace privcode {

std::vector<std::string> default_stop_markers() {
  return {"\nclass", "\ndef", "\nprint", "\n#", "\nif"};
}

void GenerationRequest::validate() const {
  if (n_samples < 1) throw PreconditionError("n_samples must be >= 1");
  if (!(temperature >= 0.0)) throw PreconditionError("temperature must be >= 0");
  if (!(top_p > 0.0 && top_p <= 1.0)) throw PreconditionError("top_p must lie in (0, 1]");
  if (max_new_tokens < 1) throw PreconditionError("max_new_tokens must be >= 1");
  for (const auto& m : stop_markers) {
    if (m.empty()) throw PreconditionError("stop markers must be non-empty");
  }
}

std::string_view to_string(FinishReason reason) {
  switch (reason) {
    case FinishReason::Stop: return "stop";
    case FinishReason::Length: return "length";
    case FinishReason::Error: return "error";
  }
  return "error";
}

FinishReason parse_finish_reason(std::string_view text) {
  if (text == "stop") return FinishReason::Stop;
  if (text == "length") return FinishReason::Length;
  return FinishReason::Error;
}

std::string truncate_at_stop(std::string_view raw, const std::vector<std::string>& stop_markers) {
  std::size_t cut = raw.size();
  for (const auto& marker : stop_markers) {
    if (marker.empty()) continue;
    const auto pos = raw.find(marker);
    if (pos != std::string_view::npos && pos < cut) cut = pos;
  }
  return std::string(raw.substr(0, cut));
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

MockModel MockModel::from_fixture(const std::filesystem::path& file) {
  MockModel model;
  for_each_json_line(file, [&](const Json& o, std::size_t line) {
    try {
      model.add_by_hash(o.at("prompt_sha256").get<std::string>(),
                        o.at("completions").get<std::vector<std::string>>());
    } catch (const Json::exception& e) {
      throw ParseError(std::string("bad mock fixture record: ") + e.what(), line);
    }
  });
  return model;
}

void MockModel::add(std::string_view prompt, std::vector<std::string> completions) {
  add_by_hash(sha256_hex(prompt), std::move(completions));
}

void MockModel::add_by_hash(std::string prompt_sha256, std::vector<std::string> completions) {
  if (completions.empty()) throw ValidationError("mock fixture entry has no completions");
  by_hash_[std::move(prompt_sha256)] = std::move(completions);
}

std::vector<RawChoice> MockModel::complete(const GenerationRequest& request) {
  const auto hash = sha256_hex(request.prompt);
  auto it = by_hash_.find(hash);
  if (it == by_hash_.end()) throw ProtocolError("mock model has no completions for prompt " + hash);
  std::vector<RawChoice> out;
  for (int i = 0; i < request.n_samples; ++i) {
    out.push_back({it->second[static_cast<std::size_t>(i) % it->second.size()], FinishReason::Stop});
  }
  return out;
}

EndpointConfig EndpointConfig::from_env() {
  EndpointConfig c;
  if (const char* url = std::getenv("MODEL_URL")) c.url = url;
  if (const char* key = std::getenv("MODEL_KEY")) c.key = key;
  return c;
}

HttpModel::HttpModel(EndpointConfig config) : config_(std::move(config)) {
  const auto& url = config_.url;
  const auto scheme_end = url.find("://");
  if (url.empty() || scheme_end == std::string::npos) {
    throw PreconditionError("model URL must look like http://host[:port]/path, got '" + url + "'");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/v1/completions" : url.substr(path_start);
  if (config_.max_attempts < 1) config_.max_attempts = 1;
}

std::vector<RawChoice> HttpModel::complete(const GenerationRequest& request) {
  const Json body{{"prompt", request.prompt},         {"n", request.n_samples},
                  {"temperature", request.temperature}, {"top_p", request.top_p},
                  {"max_tokens", request.max_new_tokens}, {"stop", request.stop_markers}};
  const auto payload = body.dump();

  httplib::Client client(scheme_host_port_);
  if (!client.is_valid()) throw PreconditionError("unsupported model URL " + config_.url);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(config_.timeout);
  httplib::Headers headers;
  if (!config_.key.empty()) headers.emplace("Authorization", "Bearer " + config_.key);

  auto backoff = config_.initial_backoff;
  httplib::Result res;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    res = client.Post(path_, headers, payload, "application/json");
    if (res) break;
    if (attempt == config_.max_attempts) {
      throw TransportError("model endpoint " + config_.url + ": " + httplib::to_string(res.error()),
                           attempt);
    }
    std::this_thread::sleep_for(backoff);
    backoff *= 2;
  }
  if (res->status < 200 || res->status >= 300) {
    throw ProtocolError("model endpoint returned HTTP " + std::to_string(res->status) + ": " +
                        res->body.substr(0, 200));
  }
  Json reply;
  try {
    reply = Json::parse(res->body);
  } catch (const Json::parse_error& e) {
    throw ProtocolError(std::string("model reply is not JSON: ") + e.what());
  }
  if (!reply.is_object() || !reply.contains("choices") || !reply["choices"].is_array()) {
    throw ProtocolError("model reply lacks a 'choices' array");
  }
  std::vector<RawChoice> out;
  for (const auto& choice : reply["choices"]) {
    if (!choice.is_object()) throw ProtocolError("choice is not an object");
    if (choice.contains("error") && !choice["error"].is_null()) {
      out.push_back({choice.value("text", std::string{}), FinishReason::Error});
      continue;
    }
    if (!choice.contains("text") || !choice["text"].is_string()) {
      throw ProtocolError("choice lacks a string 'text'");
    }
    FinishReason reason = FinishReason::Stop;
    if (auto it = choice.find("finish_reason"); it != choice.end() && it->is_string()) {
      reason = parse_finish_reason(it->get<std::string>());
    }
    out.push_back({choice["text"].get<std::string>(), reason});
  }
  return out;
}

std::vector<Completion> generate(CompletionModel& model, const GenerationRequest& request) {
  request.validate();
  auto choices = model.complete(request);
  if (choices.size() != static_cast<std::size_t>(request.n_samples)) {
    throw ProtocolError("model returned " + std::to_string(choices.size()) + " samples, expected " +
                        std::to_string(request.n_samples));
  }
  std::vector<Completion> out;
  out.reserve(choices.size());
  for (auto& c : choices) {
    Completion completion;
    completion.text = truncate_at_stop(c.text, request.stop_markers);
    completion.finish_reason = c.finish_reason;
    if (completion.finish_reason != FinishReason::Error && completion.text.size() < c.text.size()) {
      completion.finish_reason = FinishReason::Stop;
    }
    completion.raw = std::move(c.text);
    out.push_back(std::move(completion));
  }
  return out;
}

std::vector<std::vector<Completion>> generate_batch(CompletionModel& model,
                                                    const std::vector<GenerationRequest>& requests,
                                                    std::size_t max_in_flight) {
  std::vector<std::vector<Completion>> results(requests.size());
  if (requests.empty()) return results;
  const auto workers = std::clamp<std::size_t>(max_in_flight, 1, requests.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(requests.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (auto i = next.fetch_add(1); i < requests.size(); i = next.fetch_add(1)) {
          try {
            results[i] = generate(model, requests[i]);
          } catch (...) {
            failures[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return results;
}

}  // namespace privcode
