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

#include "privcode/evalharness.hpp"

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <set>
#include <thread>

#include "privcode/errors.hpp"
#include "privcode/extract.hpp"
#include "privcode/retriever.hpp"

extern char** environ;

namespace privcode {

namespace {

// Whitespace-separated words; single or double quotes group.
std::vector<std::string> split_command(const std::string& cmd) {
  std::vector<std::string> words;
  std::string cur;
  bool in_word = false;
  char quote = 0;
  for (char c : cmd) {
    if (quote) {
      if (c == quote) {
        quote = 0;
      } else {
        cur.push_back(c);
      }
      continue;
    }
    if (c == '\'' || c == '"') {
      quote = c;
      in_word = true;
    } else if (c == ' ' || c == '\t' || c == '\n') {
      if (in_word) words.push_back(std::move(cur));
      cur.clear();
      in_word = false;
    } else {
      cur.push_back(c);
      in_word = true;
    }
  }
  if (quote) throw SetupError("unbalanced quote in interpreter command: " + cmd);
  if (in_word) words.push_back(std::move(cur));
  return words;
}

class TempDir {
 public:
  TempDir() {
    auto pattern = (std::filesystem::temp_directory_path() / "privcode-XXXXXX").string();
    if (!::mkdtemp(pattern.data())) {
      throw SetupError(std::string("cannot create sandbox dir: ") + std::strerror(errno));
    }
    path_ = pattern;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

class SpawnFileActions {
 public:
  SpawnFileActions() { posix_spawn_file_actions_init(&actions_); }
  ~SpawnFileActions() { posix_spawn_file_actions_destroy(&actions_); }
  SpawnFileActions(const SpawnFileActions&) = delete;
  SpawnFileActions& operator=(const SpawnFileActions&) = delete;
  posix_spawn_file_actions_t* get() { return &actions_; }

 private:
  posix_spawn_file_actions_t actions_;
};

class SpawnAttr {
 public:
  SpawnAttr() { posix_spawnattr_init(&attr_); }
  ~SpawnAttr() { posix_spawnattr_destroy(&attr_); }
  SpawnAttr(const SpawnAttr&) = delete;
  SpawnAttr& operator=(const SpawnAttr&) = delete;
  posix_spawnattr_t* get() { return &attr_; }

 private:
  posix_spawnattr_t attr_;
};

std::string last_segment(const std::string& id) {
  const auto dot = id.rfind('.');
  return dot == std::string::npos ? id : id.substr(dot + 1);
}

std::string json_string(const Json& o, const char* field, bool required) {
  auto it = o.find(field);
  if (it == o.end() || it->is_null()) {
    if (required) throw ParseError(std::string("missing field '") + field + "'");
    return {};
  }
  if (!it->is_string()) throw ParseError(std::string("field '") + field + "' must be a string");
  return it->get<std::string>();
}

}  // namespace

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Pass: return "pass";
    case RunStatus::Fail: return "fail";
    case RunStatus::Timeout: return "timeout";
    case RunStatus::Crash: return "crash";
  }
  return "crash";
}

std::string_view to_string(ErrorClass c) {
  switch (c) {
    case ErrorClass::Passed: return "passed";
    case ErrorClass::Invalid: return "invalid";
    case ErrorClass::Incorrect: return "incorrect";
  }
  return "incorrect";
}

std::vector<BenchmarkProblem> read_benchmark(const std::filesystem::path& file) {
  std::vector<BenchmarkProblem> out;
  std::set<std::string> ids;
  for_each_json_line(file, [&](const Json& o, std::size_t line) {
    try {
      BenchmarkProblem p;
      p.task_id = json_string(o, "task_id", true);
      p.context = json_string(o, "context", true);
      p.test_code = json_string(o, "test_code", true);
      p.oracle_api_ids = o.value("oracle_api_ids", std::vector<std::string>{});
      p.difficulty_api_count =
          o.value("difficulty_api_count", static_cast<int>(p.oracle_api_ids.size()));
      if (p.test_code.empty()) throw ValidationError("empty test_code");
      if (!p.oracle_api_ids.empty() &&
          p.difficulty_api_count != static_cast<int>(p.oracle_api_ids.size())) {
        throw ValidationError("difficulty_api_count differs from the oracle list length");
      }
      if (!ids.insert(p.task_id).second) throw ValidationError("duplicate task_id " + p.task_id);
      out.push_back(std::move(p));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line) + ": " + e.what());
    } catch (const Json::exception& e) {
      throw ParseError(e.what(), line);
    }
  });
  return out;
}

double pass_at_k(std::int64_t n, std::int64_t c, std::int64_t k) {
  if (n < 0 || c < 0 || c > n || k < 1 || k > n) {
    throw PreconditionError("pass_at_k requires 0 <= c <= n and 1 <= k <= n (n=" +
                            std::to_string(n) + ", c=" + std::to_string(c) +
                            ", k=" + std::to_string(k) + ")");
  }
  if (n - c < k) return 1.0;
  double product = 1.0;
  for (std::int64_t i = n - c + 1; i <= n; ++i) {
    product *= 1.0 - static_cast<double>(k) / static_cast<double>(i);
  }
  return 1.0 - product;
}

CandidateResult run_candidate(const BenchmarkProblem& problem, const std::string& completion,
                              const SandboxConfig& config, int sample_index) {
  if (config.timeout_ms <= 0) throw SetupError("sandbox timeout must be positive");
  auto argv_words = split_command(config.interpreter_cmd);
  if (argv_words.empty()) throw SetupError("empty interpreter command");

  TempDir dir;
  const auto program = dir.path() / config.file_name;
  write_text_file(program, problem.context + completion + "\n" + problem.test_code);

  bool substituted = false;
  for (auto& w : argv_words) {
    for (auto pos = w.find("{file}"); pos != std::string::npos; pos = w.find("{file}")) {
      w.replace(pos, 6, program.string());
      substituted = true;
    }
  }
  if (!substituted) argv_words.push_back(program.string());
  std::vector<char*> argv;
  for (auto& w : argv_words) argv.push_back(w.data());
  argv.push_back(nullptr);

  const auto output = (dir.path() / "output.txt").string();
  const auto cwd = dir.path().string();
  SpawnFileActions actions;
  posix_spawn_file_actions_addopen(actions.get(), STDIN_FILENO, "/dev/null", O_RDONLY, 0);
  posix_spawn_file_actions_addopen(actions.get(), STDOUT_FILENO, output.c_str(),
                                   O_WRONLY | O_CREAT | O_TRUNC, 0600);
  posix_spawn_file_actions_adddup2(actions.get(), STDOUT_FILENO, STDERR_FILENO);
  posix_spawn_file_actions_addchdir_np(actions.get(), cwd.c_str());
  SpawnAttr attr;
  posix_spawnattr_setflags(attr.get(), POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(attr.get(), 0);

  CandidateResult result{problem.task_id, sample_index, RunStatus::Crash, 0};
  const auto start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 start)
        .count();
  };

  pid_t pid = 0;
  if (posix_spawnp(&pid, argv[0], actions.get(), attr.get(), argv.data(), environ) != 0) {
    result.wall_ms = elapsed_ms();
    return result;
  }

  int status = 0;
  bool timed_out = false;
  for (;;) {
    const pid_t r = ::waitpid(pid, &status, WNOHANG);
    if (r == pid) break;
    if (r < 0 && errno != EINTR) break;
    if (elapsed_ms() >= config.timeout_ms) {
      ::kill(-pid, SIGKILL);
      ::kill(pid, SIGKILL);
      while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
      }
      timed_out = true;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
  ::kill(-pid, SIGKILL);  // stray grandchildren
  result.wall_ms = elapsed_ms();

  if (timed_out) {
    result.status = RunStatus::Timeout;
  } else if (WIFEXITED(status)) {
    result.status = WEXITSTATUS(status) == 0 ? RunStatus::Pass : RunStatus::Fail;
  } else {
    result.status = RunStatus::Crash;
  }
  return result;
}

ErrorClass classify_error(const std::vector<std::string>& prompted_api_names,
                          const std::string& completion, const CandidateResult& result) {
  if (result.status == RunStatus::Pass) return ErrorClass::Passed;
  const auto called = extract_call_names(completion);
  const std::set<std::string> prompted(prompted_api_names.begin(), prompted_api_names.end());
  for (const auto& name : called) {
    if (prompted.count(name)) return ErrorClass::Incorrect;
  }
  return ErrorClass::Invalid;
}

EvaluationReport evaluate(const std::vector<BenchmarkProblem>& problems,
                          const std::map<std::string, ProblemCompletions>& completions,
                          const EvaluateOptions& options) {
  if (options.k_set.empty()) throw PreconditionError("evaluate: empty k set");
  const auto max_k = *std::max_element(options.k_set.begin(), options.k_set.end());
  if (*std::min_element(options.k_set.begin(), options.k_set.end()) < 1) {
    throw PreconditionError("evaluate: every k must be >= 1");
  }

  struct Job {
    std::size_t problem;
    std::size_t sample;
  };
  std::vector<Job> jobs;
  std::vector<const ProblemCompletions*> samples;
  for (std::size_t p = 0; p < problems.size(); ++p) {
    auto it = completions.find(problems[p].task_id);
    if (it == completions.end()) {
      throw PreconditionError("evaluate: no completions for task " + problems[p].task_id);
    }
    const auto n = static_cast<std::int64_t>(it->second.completions.size());
    if (n < max_k) {
      throw PreconditionError("evaluate: task " + problems[p].task_id + " has " +
                              std::to_string(n) + " samples, k=" + std::to_string(max_k) +
                              " needs at least that many");
    }
    samples.push_back(&it->second);
    for (std::size_t s = 0; s < it->second.completions.size(); ++s) jobs.push_back({p, s});
  }

  std::vector<CandidateResult> results(jobs.size());
  {
    auto workers = options.sandbox.workers;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, jobs.size()));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(jobs.size());
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (auto i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
          const auto& job = jobs[i];
          try {
            results[i] = run_candidate(problems[job.problem],
                                       samples[job.problem]->completions[job.sample],
                                       options.sandbox, static_cast<int>(job.sample));
          } catch (...) {
            failures[i] = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  EvaluationReport report;
  std::size_t cursor = 0;
  double recall_sum = 0.0;
  double accuracy_sum = 0.0;
  std::size_t retrieval_problems = 0;
  for (std::size_t p = 0; p < problems.size(); ++p) {
    const auto& problem = problems[p];
    const auto& entry = *samples[p];
    ProblemReport pr;
    pr.task_id = problem.task_id;
    pr.n = static_cast<std::int64_t>(entry.completions.size());

    std::vector<std::string> prompted_names;
    for (const auto& id : entry.prompted_api_ids.value_or(problem.oracle_api_ids)) {
      const auto* record = options.catalog ? options.catalog->find(id) : nullptr;
      prompted_names.push_back(record ? record->name : last_segment(id));
    }
    for (std::size_t s = 0; s < entry.completions.size(); ++s, ++cursor) {
      const auto& r = results[cursor];
      if (r.status == RunStatus::Pass) ++pr.c;
      switch (classify_error(prompted_names, entry.completions[s], r)) {
        case ErrorClass::Passed: ++pr.classification_counts.passed; break;
        case ErrorClass::Invalid: ++pr.classification_counts.invalid; break;
        case ErrorClass::Incorrect: ++pr.classification_counts.incorrect; break;
      }
      pr.results.push_back(r);
    }
    for (auto k : options.k_set) pr.pass_at_k[k] = pass_at_k(pr.n, pr.c, k);
    report.classification_counts.passed += pr.classification_counts.passed;
    report.classification_counts.invalid += pr.classification_counts.invalid;
    report.classification_counts.incorrect += pr.classification_counts.incorrect;

    if (!problem.oracle_api_ids.empty()) {
      if (auto it = options.retrieved.find(problem.task_id); it != options.retrieved.end()) {
        std::vector<ScoredApi> ranked;
        for (const auto& id : it->second) ranked.push_back({id, 0.0});
        recall_sum += recall_at_k(ranked, problem.oracle_api_ids, options.retrieval_k);
        accuracy_sum += retrieval_accuracy(ranked, problem.oracle_api_ids, options.retrieval_k);
        ++retrieval_problems;
      }
    }
    report.per_problem.push_back(std::move(pr));
  }
  for (auto k : options.k_set) {
    double sum = 0.0;
    for (const auto& pr : report.per_problem) sum += pr.pass_at_k.at(k);
    report.pass_at_k[k] = problems.empty() ? 0.0 : sum / static_cast<double>(problems.size());
  }
  if (retrieval_problems > 0) {
    report.retrieval = RetrievalReport{options.retrieval_k,
                                       recall_sum / static_cast<double>(retrieval_problems),
                                       accuracy_sum / static_cast<double>(retrieval_problems),
                                       retrieval_problems};
  }
  return report;
}

std::map<std::string, ProblemCompletions> read_completions(const std::filesystem::path& file) {
  std::map<std::string, ProblemCompletions> out;
  for_each_json_line(file, [&](const Json& o, std::size_t line) {
    try {
      const auto id = o.at("task_id").get<std::string>();
      ProblemCompletions entry;
      entry.completions = o.at("completions").get<std::vector<std::string>>();
      if (auto it = o.find("prompted_api_ids"); it != o.end() && !it->is_null()) {
        entry.prompted_api_ids = it->get<std::vector<std::string>>();
      }
      if (!out.emplace(id, std::move(entry)).second) {
        throw ParseError("duplicate task_id " + id, line);
      }
    } catch (const Json::exception& e) {
      throw ParseError(std::string("bad completions record: ") + e.what(), line);
    }
  });
  return out;
}

namespace {

Json counts_json(const ClassCounts& c) {
  return Json{{"passed", c.passed}, {"invalid", c.invalid}, {"incorrect", c.incorrect}};
}

Json pass_json(const std::map<std::int64_t, double>& m) {
  Json out = Json::object();
  for (const auto& [k, v] : m) out[std::to_string(k)] = v;
  return out;
}

}  // namespace

Json to_json(const EvaluationReport& report) {
  Json per = Json::array();
  for (const auto& pr : report.per_problem) {
    Json statuses = Json::array();
    for (const auto& r : pr.results) statuses.push_back(to_string(r.status));
    per.push_back({{"task_id", pr.task_id},
                   {"n", pr.n},
                   {"c", pr.c},
                   {"pass_at_k", pass_json(pr.pass_at_k)},
                   {"classification_counts", counts_json(pr.classification_counts)},
                   {"statuses", statuses}});
  }
  Json out{{"per_problem", per},
           {"pass_at_k", pass_json(report.pass_at_k)},
           {"classification_counts", counts_json(report.classification_counts)},
           {"retrieval", nullptr}};
  if (report.retrieval) {
    out["retrieval"] = {{"k", report.retrieval->k},
                        {"recall_at_k", report.retrieval->recall_at_k},
                        {"accuracy", report.retrieval->accuracy},
                        {"problems", report.retrieval->problems}};
  }
  return out;
}

}  // namespace privcode
