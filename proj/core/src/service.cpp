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

#include "privcode/service.hpp"

#include <random>
#include <sstream>

#include <httplib.h>

#include "privcode/errors.hpp"
#include "privcode/rng.hpp"

namespace privcode {

namespace {

using Response = Service::Response;

Response error_response(int status, std::string_view code, const std::string& message) {
  return {status, Json{{"error", {{"code", code}, {"message", message}}}}};
}

Response bad_request(const std::string& message) {
  return error_response(400, "bad_request", message);
}

Response not_found(const std::string& message) {
  return error_response(404, "not_found", message);
}

Response unavailable(const std::string& message) {
  return error_response(503, "unavailable", message);
}

const Json* field(const Json& request, std::string_view key) {
  if (!request.is_object()) return nullptr;
  auto it = request.find(key);
  if (it == request.end() || it->is_null()) return nullptr;
  return &*it;
}

std::vector<std::string> string_list(const Json& value, std::string_view what) {
  if (!value.is_array()) throw PreconditionError(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : value) {
    if (!item.is_string()) {
      throw PreconditionError(std::string(what) + " must be an array of strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::string hex64(std::uint64_t value) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[value & 0xF];
    value >>= 4;
  }
  return out;
}

}  // namespace

Service::Service(ServiceConfig config, std::function<Clock::time_point()> now)
    : config_(std::move(config)), now_(std::move(now)) {
  if (!config_.index && config_.catalog && config_.params) {
    config_.index = build_index(*config_.catalog, *config_.params);
  }
  if (config_.index && config_.params && config_.index->built_with != config_.params->fingerprint()) {
    throw ValidationError("index was built with params " + config_.index->built_with +
                          ", loaded params are " + config_.params->fingerprint());
  }
  std::random_device device;
  id_salt_ = (static_cast<std::uint64_t>(device()) << 32) ^ device();
  worker_ = std::jthread([this](std::stop_token stop) { run_jobs(stop); });
}

Service::~Service() {
  worker_.request_stop();
  jobs_cv_.notify_all();
}

std::string Service::new_id() {
  std::lock_guard lock(id_mutex_);
  const auto n = ++id_counter_;
  return hex64(splitmix64(id_salt_ ^ n)) + hex64(splitmix64(id_salt_ + 0x9E3779B97F4A7C15ULL * n));
}

std::vector<Service::PresentedApi> Service::ranked(const std::string& query, std::size_t k) const {
  std::vector<PresentedApi> out;
  for (const auto& hit : privcode::retrieve(*config_.index, *config_.params, query, k)) {
    PresentedApi api{hit.api_id, "", "", hit.score};
    if (const auto* record = config_.catalog->find(hit.api_id)) {
      api.name = record->name;
      api.first_sentence = first_sentence(record->description);
    }
    out.push_back(std::move(api));
  }
  return out;
}

Response Service::retrieve(const Json& request) const {
  const auto* query = field(request, "query");
  if (!query || !query->is_string() || query->get<std::string>().find_first_not_of(" \t\r\n") ==
                                           std::string::npos) {
    return bad_request("query must be a non-empty string");
  }
  std::int64_t k = 5;
  if (const auto* k_field = field(request, "k")) {
    if (!k_field->is_number_integer()) return bad_request("k must be an integer");
    k = k_field->get<std::int64_t>();
  }
  if (k < 1) return bad_request("k must be at least 1");
  if (!config_.index || !config_.params || !config_.catalog || config_.index->entries.empty()) {
    return unavailable("retrieval index not loaded");
  }
  Json results = Json::array();
  for (const auto& api : ranked(query->get<std::string>(), static_cast<std::size_t>(k))) {
    results.push_back({{"api_id", api.api_id},
                       {"name", api.name},
                       {"first_sentence", api.first_sentence},
                       {"score", api.score}});
  }
  return {200, Json{{"results", std::move(results)}}};
}

void Service::purge_expired_locked() {
  const auto now = now_();
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    if (now - it->second.created_at >= config_.session_ttl) {
      it = sessions_.erase(it);
    } else {
      ++it;
    }
  }
}

Response Service::create_session(const Json& request) {
  const auto* query = field(request, "query");
  if (!query || !query->is_string() || query->get<std::string>().find_first_not_of(" \t\r\n") ==
                                           std::string::npos) {
    return bad_request("query must be a non-empty string");
  }
  if (!config_.index || !config_.params || !config_.catalog || config_.index->entries.empty()) {
    return unavailable("retrieval index not loaded");
  }
  Session session{query->get<std::string>(), ranked(query->get<std::string>(), 5), std::nullopt,
                  now_()};
  Json top5 = Json::array();
  for (const auto& api : session.top5) {
    top5.push_back(
        {{"api_id", api.api_id}, {"name", api.name}, {"first_sentence", api.first_sentence}});
  }
  const auto id = new_id();
  {
    std::lock_guard lock(sessions_mutex_);
    purge_expired_locked();
    sessions_.emplace(id, std::move(session));
  }
  return {200, Json{{"session_id", id}, {"top5", std::move(top5)}}};
}

Response Service::get_session(const std::string& session_id) {
  std::lock_guard lock(sessions_mutex_);
  purge_expired_locked();
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) return not_found("unknown session " + session_id);
  const auto& session = it->second;
  Json top5 = Json::array();
  for (const auto& api : session.top5) {
    top5.push_back(
        {{"api_id", api.api_id}, {"name", api.name}, {"first_sentence", api.first_sentence}});
  }
  Json body{{"session_id", session_id}, {"query", session.query}, {"top5", std::move(top5)}};
  body["resolved_api_ids"] = session.resolved ? Json(*session.resolved) : Json(nullptr);
  return {200, std::move(body)};
}

Response Service::choose(const std::string& session_id, const Json& request) {
  HumanChoice choice;
  int forms = 0;
  if (const auto* selected = field(request, "selected")) {
    try {
      choice = Selected{string_list(*selected, "selected")};
    } catch (const PreconditionError& e) {
      return bad_request(e.what());
    }
    ++forms;
  }
  if (const auto* none = field(request, "none_of_the_above")) {
    if (!none->is_boolean()) return bad_request("none_of_the_above must be a boolean");
    if (none->get<bool>()) {
      choice = NoneOfTheAbove{};
      ++forms;
    }
  }
  if (const auto* unsure = field(request, "not_sure")) {
    if (!unsure->is_boolean()) return bad_request("not_sure must be a boolean");
    if (unsure->get<bool>()) {
      choice = NotSure{};
      ++forms;
    }
  }
  if (forms != 1) {
    return bad_request("exactly one of selected, none_of_the_above, not_sure is required");
  }

  std::lock_guard lock(sessions_mutex_);
  purge_expired_locked();
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) return not_found("unknown session " + session_id);
  auto& session = it->second;
  if (session.resolved) {
    return error_response(409, "conflict", "choice already set for session " + session_id);
  }
  std::vector<std::string> top5;
  for (const auto& api : session.top5) top5.push_back(api.api_id);
  try {
    session.resolved = resolve_selection(top5, choice);
  } catch (const Error& e) {
    return bad_request(e.what());
  }
  return {200, Json{{"resolved_api_ids", *session.resolved}}};
}

Response Service::generate(const Json& request) {
  const auto* session_id = field(request, "session_id");
  const auto* api_ids_field = field(request, "api_ids");
  if (session_id && api_ids_field) return bad_request("give session_id or api_ids, not both");

  PromptSpec spec;
  spec.noise_rate = 0.0;
  try {
    if (const auto* format = field(request, "format")) {
      if (!format->is_string()) return bad_request("format must be a string");
      spec.format = parse_prompt_format(format->get<std::string>());
    }
  } catch (const PreconditionError& e) {
    return bad_request(e.what());
  }
  if (const auto* context = field(request, "code_context")) {
    if (!context->is_string()) return bad_request("code_context must be a string");
    spec.code_context = context->get<std::string>();
  }

  std::vector<std::string> ids;
  if (session_id) {
    if (!session_id->is_string()) return bad_request("session_id must be a string");
    std::lock_guard lock(sessions_mutex_);
    purge_expired_locked();
    auto it = sessions_.find(session_id->get<std::string>());
    if (it == sessions_.end()) return not_found("unknown session " + session_id->get<std::string>());
    if (!it->second.resolved) {
      return error_response(409, "conflict", "session has no choice yet");
    }
    ids = *it->second.resolved;
  } else if (api_ids_field) {
    try {
      ids = string_list(*api_ids_field, "api_ids");
    } catch (const PreconditionError& e) {
      return bad_request(e.what());
    }
  }
  if (!ids.empty()) {
    if (!config_.catalog) return unavailable("catalog not loaded");
    for (const auto& id : ids) {
      const auto* record = config_.catalog->find(id);
      if (!record) return bad_request("unknown api_id " + id);
      spec.apis.push_back(*record);
    }
  }

  GenerationRequest generation;
  generation.n_samples = config_.default_samples;
  try {
    if (const auto* n = field(request, "n")) generation.n_samples = n->get<int>();
    if (const auto* t = field(request, "temperature")) generation.temperature = t->get<double>();
    if (const auto* p = field(request, "top_p")) generation.top_p = p->get<double>();
    if (const auto* m = field(request, "max_new_tokens")) generation.max_new_tokens = m->get<int>();
    if (const auto* stop = field(request, "stop")) {
      generation.stop_markers = string_list(*stop, "stop");
    }
    if (const auto* seed = field(request, "seed")) spec.seed = seed->get<std::uint64_t>();
  } catch (const Json::exception& e) {
    return bad_request(std::string("bad decoding override: ") + e.what());
  } catch (const PreconditionError& e) {
    return bad_request(e.what());
  }

  AssembledPrompt prompt;
  static const DocCatalog empty_catalog;
  prompt = assemble_prompt_detailed(spec, config_.catalog ? *config_.catalog : empty_catalog);
  generation.prompt = prompt.text;
  try {
    generation.validate();
  } catch (const PreconditionError& e) {
    return bad_request(e.what());
  }
  if (!config_.model) return unavailable("no completion model configured");

  std::vector<Completion> completions;
  try {
    completions = privcode::generate(*config_.model, generation);
  } catch (const TransportError& e) {
    return error_response(502, "model_unreachable", e.what());
  } catch (const ProtocolError& e) {
    return error_response(502, "model_protocol", e.what());
  }
  Json out = Json::array();
  for (const auto& c : completions) {
    out.push_back({{"text", c.text}, {"finish_reason", to_string(c.finish_reason)}});
  }
  return {200, Json{{"prompt", prompt.text},
                    {"api_ids", prompt.api_ids},
                    {"completions", std::move(out)}}};
}

std::optional<std::filesystem::path> Service::resolve_ref(const std::string& ref) const {
  const std::filesystem::path rel(ref);
  if (ref.empty() || rel.is_absolute()) return std::nullopt;
  for (const auto& part : rel) {
    if (part == "..") return std::nullopt;
  }
  return config_.data_dir / rel;
}

Response Service::submit_evaluation(const Json& request) {
  const auto* benchmark_ref = field(request, "benchmark_ref");
  const auto* completions_ref = field(request, "completions_ref");
  if (!benchmark_ref || !benchmark_ref->is_string() || !completions_ref ||
      !completions_ref->is_string()) {
    return bad_request("benchmark_ref and completions_ref are required strings");
  }
  auto job = std::make_shared<Job>();
  job->options.sandbox = config_.sandbox;
  job->options.catalog = config_.catalog ? &*config_.catalog : nullptr;
  if (const auto* k_set = field(request, "k_set")) {
    if (!k_set->is_array() || k_set->empty()) return bad_request("k_set must be a non-empty array");
    job->options.k_set.clear();
    for (const auto& k : *k_set) {
      if (!k.is_number_integer() || k.get<std::int64_t>() < 1) {
        return bad_request("k_set entries must be positive integers");
      }
      job->options.k_set.push_back(k.get<std::int64_t>());
    }
  }

  const auto benchmark_path = resolve_ref(benchmark_ref->get<std::string>());
  const auto completions_path = resolve_ref(completions_ref->get<std::string>());
  if (!benchmark_path || !completions_path) {
    return bad_request("refs must be relative paths inside the data directory");
  }
  if (!std::filesystem::is_regular_file(*benchmark_path)) {
    return not_found("benchmark " + benchmark_ref->get<std::string>() + " not found");
  }
  if (!std::filesystem::is_regular_file(*completions_path)) {
    return not_found("completions " + completions_ref->get<std::string>() + " not found");
  }
  try {
    job->problems = read_benchmark(*benchmark_path);
    job->completions = read_completions(*completions_path);
  } catch (const Error& e) {
    return bad_request(e.what());
  }

  const auto id = new_id();
  {
    std::lock_guard lock(jobs_mutex_);
    if (queue_.size() >= config_.job_queue_capacity) {
      return error_response(429, "queue_full", "evaluation queue is full");
    }
    jobs_.emplace(id, job);
    queue_.push_back(id);
  }
  jobs_cv_.notify_one();
  return {202, Json{{"job_id", id}, {"status", "running"}}};
}

void Service::run_jobs(std::stop_token stop) {
  while (true) {
    std::shared_ptr<Job> job;
    {
      std::unique_lock lock(jobs_mutex_);
      if (!jobs_cv_.wait(lock, stop, [this] { return !queue_.empty(); })) return;
      job = jobs_.at(queue_.front());
      queue_.pop_front();
    }
    Json result;
    std::string error;
    try {
      result = to_json(evaluate(job->problems, job->completions, job->options));
    } catch (const std::exception& e) {
      error = e.what();
    }
    std::lock_guard lock(jobs_mutex_);
    if (error.empty()) {
      job->status = "done";
      job->result = std::move(result);
    } else {
      job->status = "failed";
      job->error = std::move(error);
    }
    job->problems.clear();
    job->completions.clear();
  }
}

Response Service::job_status(const std::string& job_id) const {
  std::lock_guard lock(jobs_mutex_);
  auto it = jobs_.find(job_id);
  if (it == jobs_.end()) return not_found("unknown job " + job_id);
  const auto& job = *it->second;
  Json body{{"job_id", job_id}, {"status", job.status}};
  if (job.status == "done") body["result"] = job.result;
  if (job.status == "failed") body["error"] = {{"code", "evaluation_failed"}, {"message", job.error}};
  return {200, std::move(body)};
}

Response Service::health() const {
  return {200, Json{{"status", "ok"},
                    {"index_loaded", config_.index.has_value()},
                    {"catalog_size", config_.catalog ? config_.catalog->size() : 0},
                    {"model_configured", config_.model != nullptr}}};
}

// --- HTTP transport -------------------------------------------------------

struct HttpServer::Impl {
  Service& service;
  httplib::Server server;
  std::thread thread;

  explicit Impl(Service& s) : service(s) {}
};

namespace {

void send(httplib::Response& res, const Response& response) {
  res.status = response.status;
  res.set_content(response.body.dump(), "application/json");
}

template <typename Handler>
httplib::Server::Handler json_route(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    Json body;
    if (!req.body.empty()) {
      try {
        body = Json::parse(req.body);
      } catch (const Json::parse_error& e) {
        send(res, bad_request(std::string("request body is not JSON: ") + e.what()));
        return;
      }
    }
    try {
      send(res, handler(req, body));
    } catch (const std::exception& e) {
      send(res, error_response(500, "internal", e.what()));
    }
  };
}

}  // namespace

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {
  auto& server = impl_->server;
  auto& svc = impl_->service;

  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  server.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Post("/retrieve", json_route([&svc](const httplib::Request&, const Json& body) {
                return svc.retrieve(body);
              }));
  server.Post("/session", json_route([&svc](const httplib::Request&, const Json& body) {
                return svc.create_session(body);
              }));
  server.Get(R"(/session/([^/]+))", json_route([&svc](const httplib::Request& req, const Json&) {
               return svc.get_session(req.matches[1]);
             }));
  server.Post(R"(/session/([^/]+)/choice)",
              json_route([&svc](const httplib::Request& req, const Json& body) {
                return svc.choose(req.matches[1], body);
              }));
  server.Post("/generate", json_route([&svc](const httplib::Request&, const Json& body) {
                return svc.generate(body);
              }));
  server.Post("/evaluate", json_route([&svc](const httplib::Request&, const Json& body) {
                return svc.submit_evaluation(body);
              }));
  server.Get(R"(/jobs/([^/]+))", json_route([&svc](const httplib::Request& req, const Json&) {
               return svc.job_status(req.matches[1]);
             }));
  server.Get("/health", json_route([&svc](const httplib::Request&, const Json&) {
               return svc.health();
             }));
  server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    if (res.status == 404) {
      send(res, not_found("no route for " + req.method + " " + req.path));
    }
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) throw SetupError("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::start() {
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void HttpServer::stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace privcode
