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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "privcode/doccatalog.hpp"
#include "privcode/jsonl.hpp"

namespace privcode {

struct BenchmarkProblem {
  std::string task_id;
  std::string context;    // imports, problem description, function header
  std::string test_code;  // assertions; exit code 0 means pass
  std::vector<std::string> oracle_api_ids;
  int difficulty_api_count = 0;
};

std::vector<BenchmarkProblem> read_benchmark(const std::filesystem::path& file);

enum class RunStatus { Pass, Fail, Timeout, Crash };
std::string_view to_string(RunStatus status);

struct CandidateResult {
  std::string task_id;
  int sample_index = 0;
  RunStatus status = RunStatus::Fail;
  std::int64_t wall_ms = 0;
};

struct SandboxConfig {
  std::int64_t timeout_ms = 10000;
  // "{file}" is replaced by the program path; appended when absent.
  std::string interpreter_cmd = "python3 {file}";
  std::string file_name = "candidate.py";
  std::size_t workers = 0;  // 0: hardware concurrency
};

// Unbiased pass@k estimator in product form; PreconditionError unless
// 0 <= c <= n and 1 <= k <= n.
double pass_at_k(std::int64_t n, std::int64_t c, std::int64_t k);

// Runs context + completion + "\n" + test_code as a child process in a fresh
// temp dir. Throws SetupError when the sandbox cannot be prepared.
CandidateResult run_candidate(const BenchmarkProblem& problem, const std::string& completion,
                              const SandboxConfig& config, int sample_index = 0);

enum class ErrorClass { Passed, Invalid, Incorrect };
std::string_view to_string(ErrorClass c);

// Invalid: the completion calls none of the prompted API names.
ErrorClass classify_error(const std::vector<std::string>& prompted_api_names,
                          const std::string& completion, const CandidateResult& result);

struct ClassCounts {
  std::int64_t passed = 0;
  std::int64_t invalid = 0;
  std::int64_t incorrect = 0;

  bool operator==(const ClassCounts&) const = default;
};

struct ProblemReport {
  std::string task_id;
  std::int64_t n = 0;
  std::int64_t c = 0;
  std::map<std::int64_t, double> pass_at_k;
  ClassCounts classification_counts;
  std::vector<CandidateResult> results;
};

struct RetrievalReport {
  std::size_t k = 0;
  double recall_at_k = 0.0;  // mean over problems with oracle lists
  double accuracy = 0.0;
  std::size_t problems = 0;
};

struct EvaluationReport {
  std::vector<ProblemReport> per_problem;
  std::map<std::int64_t, double> pass_at_k;  // macro-average over problems
  ClassCounts classification_counts;
  std::optional<RetrievalReport> retrieval;
};

struct ProblemCompletions {
  std::vector<std::string> completions;
  // API ids placed in the prompt; defaults to the problem's oracle list.
  std::optional<std::vector<std::string>> prompted_api_ids;
};

struct EvaluateOptions {
  std::vector<std::int64_t> k_set{1, 10};
  SandboxConfig sandbox;
  // Maps prompted API ids to short names; without it the last dotted
  // segment of the id is used.
  const DocCatalog* catalog = nullptr;
  // Ranked retrieval output per task for recall/accuracy, cut at retrieval_k.
  std::map<std::string, std::vector<std::string>> retrieved;
  std::size_t retrieval_k = 5;
};

EvaluationReport evaluate(const std::vector<BenchmarkProblem>& problems,
                          const std::map<std::string, ProblemCompletions>& completions,
                          const EvaluateOptions& options);

// JSON lines {task_id, completions:[string], prompted_api_ids?:[string]}.
std::map<std::string, ProblemCompletions> read_completions(const std::filesystem::path& file);

Json to_json(const EvaluationReport& report);

}  // namespace privcode
