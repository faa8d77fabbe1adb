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
#include <condition_variable>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "privcode/doccatalog.hpp"
#include "privcode/evalharness.hpp"
#include "privcode/generation.hpp"
#include "privcode/jsonl.hpp"
#include "privcode/promptbuilder.hpp"
#include "privcode/retriever.hpp"

namespace privcode {

struct ServiceConfig {
  std::optional<DocCatalog> catalog;
  std::optional<EncoderParams> params;
  std::optional<ApiIndex> index;  // built from catalog + params when absent
  std::shared_ptr<CompletionModel> model;
  std::filesystem::path data_dir = ".";
  SandboxConfig sandbox;
  std::chrono::seconds session_ttl{3600};
  std::size_t job_queue_capacity = 8;
  int default_samples = 10;
};

// Endpoint logic, independent of the HTTP transport. Every handler returns
// the status code and JSON body; failures use {error:{code, message}}.
class Service {
 public:
  using Clock = std::chrono::system_clock;

  struct Response {
    int status = 200;
    Json body;
  };

  explicit Service(ServiceConfig config, std::function<Clock::time_point()> now = Clock::now);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  Response retrieve(const Json& request) const;
  Response create_session(const Json& request);
  Response get_session(const std::string& session_id);
  Response choose(const std::string& session_id, const Json& request);
  Response generate(const Json& request);
  Response submit_evaluation(const Json& request);
  Response job_status(const std::string& job_id) const;
  Response health() const;

  bool index_loaded() const noexcept { return config_.index.has_value(); }

 private:
  struct PresentedApi {
    std::string api_id;
    std::string name;
    std::string first_sentence;
    double score = 0.0;
  };
  struct Session {
    std::string query;
    std::vector<PresentedApi> top5;
    std::optional<std::vector<std::string>> resolved;
    Clock::time_point created_at;
  };
  struct Job {
    std::string status = "running";  // running | done | failed
    Json result;
    std::string error;
    std::vector<BenchmarkProblem> problems;
    std::map<std::string, ProblemCompletions> completions;
    EvaluateOptions options;
  };

  std::vector<PresentedApi> ranked(const std::string& query, std::size_t k) const;
  void purge_expired_locked();
  void run_jobs(std::stop_token stop);
  std::optional<std::filesystem::path> resolve_ref(const std::string& ref) const;
  std::string new_id();

  ServiceConfig config_;
  std::function<Clock::time_point()> now_;

  std::mutex sessions_mutex_;
  std::map<std::string, Session> sessions_;

  mutable std::mutex jobs_mutex_;
  std::condition_variable_any jobs_cv_;
  std::map<std::string, std::shared_ptr<Job>> jobs_;
  std::deque<std::string> queue_;

  std::mutex id_mutex_;
  std::uint64_t id_counter_ = 0;
  std::uint64_t id_salt_ = 0;

  std::jthread worker_;
};

// Binds the Service endpoints onto an HTTP listener.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws on failure.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void listen();
  // Starts listening on a background thread.
  void start();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace privcode
