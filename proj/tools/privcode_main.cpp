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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "privcode/doccatalog.hpp"
#include "privcode/errors.hpp"
#include "privcode/evalharness.hpp"
#include "privcode/extract.hpp"
#include "privcode/generation.hpp"
#include "privcode/jsonl.hpp"
#include "privcode/paraphraser.hpp"
#include "privcode/promptbuilder.hpp"
#include "privcode/retriever.hpp"
#include "privcode/service.hpp"

namespace fs = std::filesystem;
using namespace privcode;

namespace {

// Writes to the named file, or standard output for "" / "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw PreconditionError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  return read_text_file(path);
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::map<std::string, std::int64_t> read_stars(const std::string& path) {
  std::map<std::string, std::int64_t> stars;
  if (path.empty()) return stars;
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open stars file " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("expected 'file_id<TAB>stars'", line_no);
    try {
      stars[line.substr(0, tab)] = std::stoll(line.substr(tab + 1));
    } catch (const std::exception&) {
      throw ParseError("stars must be an integer", line_no);
    }
  }
  return stars;
}

std::unique_ptr<CompletionModel> make_model(const std::string& mock_fixture, const std::string& url,
                                            const std::string& key) {
  if (!mock_fixture.empty()) return std::make_unique<MockModel>(MockModel::from_fixture(mock_fixture));
  auto endpoint = EndpointConfig::from_env();
  if (!url.empty()) endpoint.url = url;
  if (!key.empty()) endpoint.key = key;
  if (endpoint.url.empty()) return nullptr;
  return std::make_unique<HttpModel>(endpoint);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"privcode: retrieval-augmented code generation against private libraries"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "privcode 0.1.0");

  // extract-blocks
  std::string corpus_dir, out_path;
  auto* extract_cmd = app.add_subcommand("extract-blocks", "Split a corpus into annotated code blocks");
  extract_cmd->add_option("corpus_dir", corpus_dir, "Directory of .py files")->required()->check(CLI::ExistingDirectory);
  extract_cmd->add_option("-o,--out", out_path, "Block file (JSON lines)");

  // make-pairs
  std::string blocks_path, catalog_path;
  int negatives = 8;
  std::uint64_t seed = 0;
  auto* pairs_cmd = app.add_subcommand("make-pairs", "Build (description, positive, negatives) training pairs");
  pairs_cmd->add_option("--blocks", blocks_path, "Block file")->required()->check(CLI::ExistingFile);
  pairs_cmd->add_option("--catalog", catalog_path, "API documentation catalog")->required()->check(CLI::ExistingFile);
  pairs_cmd->add_option("--negatives", negatives, "Negatives per pair")->capture_default_str();
  pairs_cmd->add_option("--seed", seed)->capture_default_str();
  pairs_cmd->add_option("-o,--out", out_path);

  // weigh
  std::string stars_path;
  auto* weigh_cmd = app.add_subcommand("weigh", "Compute per-file re-sampling metadata and weights");
  weigh_cmd->add_option("corpus_dir", corpus_dir)->required()->check(CLI::ExistingDirectory);
  weigh_cmd->add_option("--catalog", catalog_path)->required()->check(CLI::ExistingFile);
  weigh_cmd->add_option("--stars-file", stars_path, "TSV of file_id<TAB>stars");
  weigh_cmd->add_option("-o,--out", out_path);

  // resample
  std::string metas_path;
  std::size_t count = 0;
  auto* resample_cmd = app.add_subcommand("resample", "Draw file ids in proportion to their weights");
  resample_cmd->add_option("--metas", metas_path, "Meta file from weigh")->required()->check(CLI::ExistingFile);
  resample_cmd->add_option("--count", count, "Number of draws")->required();
  resample_cmd->add_option("--seed", seed)->capture_default_str();
  resample_cmd->add_option("-o,--out", out_path);

  // train-retriever
  std::string pairs_path;
  TrainConfig train_config;
  auto* train_cmd = app.add_subcommand("train-retriever", "Train the dual encoder on training pairs");
  train_cmd->add_option("--pairs", pairs_path)->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--catalog", catalog_path)->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--lr", train_config.lr)->capture_default_str();
  train_cmd->add_option("--epochs", train_config.epochs)->capture_default_str();
  train_cmd->add_option("--batch", train_config.batch)->capture_default_str();
  train_cmd->add_option("--seed", train_config.seed)->capture_default_str();
  train_cmd->add_option("--hash-dim", train_config.hash_dim)->capture_default_str();
  train_cmd->add_option("--embed-dim", train_config.embed_dim)->capture_default_str();
  train_cmd->add_option("-o,--out", out_path, "Params file")->required();

  // build-index
  std::string params_path;
  auto* index_cmd = app.add_subcommand("build-index", "Encode every catalog record");
  index_cmd->add_option("--catalog", catalog_path)->required()->check(CLI::ExistingFile);
  index_cmd->add_option("--params", params_path)->required()->check(CLI::ExistingFile);
  index_cmd->add_option("-o,--out", out_path);

  // retrieve
  std::string index_path, query;
  std::size_t k = 5;
  auto* retrieve_cmd = app.add_subcommand("retrieve", "Rank APIs for a natural-language query");
  retrieve_cmd->add_option("--catalog", catalog_path)->required()->check(CLI::ExistingFile);
  retrieve_cmd->add_option("--params", params_path)->required()->check(CLI::ExistingFile);
  retrieve_cmd->add_option("--index", index_path, "Index file; built on the fly when omitted")->check(CLI::ExistingFile);
  retrieve_cmd->add_option("--query", query)->required();
  retrieve_cmd->add_option("--k", k)->capture_default_str();

  // build-prompt
  std::string context_path, format_text = "b", selection_text = "none", api_ids_text, choice_text;
  double noise = 0.05;
  auto* prompt_cmd = app.add_subcommand("build-prompt", "Assemble a generation prompt");
  prompt_cmd->add_option("--catalog", catalog_path)->required()->check(CLI::ExistingFile);
  prompt_cmd->add_option("--context", context_path, "Code context file ('-' for stdin)")->required();
  prompt_cmd->add_option("--format", format_text, "b | e | be")->capture_default_str();
  prompt_cmd->add_option("--selection", selection_text, "none | oracle | topK (e.g. top3) | human")->capture_default_str();
  prompt_cmd->add_option("--api-ids", api_ids_text, "Comma-separated ids for --selection oracle");
  prompt_cmd->add_option("--query", query, "Retrieval query for topK/human (default: the context)");
  prompt_cmd->add_option("--params", params_path)->check(CLI::ExistingFile);
  prompt_cmd->add_option("--index", index_path)->check(CLI::ExistingFile);
  prompt_cmd->add_option("--choice", choice_text, "human: 'none', 'not-sure' or comma-separated ids");
  prompt_cmd->add_option("--noise", noise)->capture_default_str();
  prompt_cmd->add_option("--seed", seed)->capture_default_str();

  // generate
  std::string prompt_path, mock_path, url, key;
  GenerationRequest request;
  std::vector<std::string> stops;
  auto* generate_cmd = app.add_subcommand("generate", "Sample completions for a prompt");
  generate_cmd->add_option("--prompt", prompt_path, "Prompt file ('-' for stdin)")->capture_default_str();
  generate_cmd->add_option("--n", request.n_samples)->capture_default_str();
  generate_cmd->add_option("--temperature", request.temperature)->capture_default_str();
  generate_cmd->add_option("--top-p", request.top_p)->capture_default_str();
  generate_cmd->add_option("--max-new-tokens", request.max_new_tokens)->capture_default_str();
  generate_cmd->add_option("--stop", stops, "Stop marker (repeatable); replaces the defaults");
  generate_cmd->add_option("--mock-model", mock_path, "Mock fixture instead of an endpoint")->check(CLI::ExistingFile);
  generate_cmd->add_option("--url", url, "Completion endpoint (overrides MODEL_URL)");
  generate_cmd->add_option("--key", key, "Bearer key (overrides MODEL_KEY)");
  generate_cmd->add_option("-o,--out", out_path);

  // evaluate
  std::string benchmark_path, completions_path, k_text = "1,10";
  SandboxConfig sandbox;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Run candidates against benchmark tests and report pass@k");
  evaluate_cmd->add_option("--benchmark", benchmark_path)->required()->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--completions", completions_path)->required()->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--k", k_text, "Comma-separated k values")->capture_default_str();
  evaluate_cmd->add_option("--timeout-ms", sandbox.timeout_ms)->capture_default_str();
  evaluate_cmd->add_option("--interpreter", sandbox.interpreter_cmd)->capture_default_str();
  evaluate_cmd->add_option("--workers", sandbox.workers, "0: one per hardware thread")->capture_default_str();
  evaluate_cmd->add_option("--catalog", catalog_path, "Maps prompted ids to names")->check(CLI::ExistingFile);
  evaluate_cmd->add_option("-o,--out", out_path);

  // paraphrase
  std::string map_path;
  auto* paraphrase_cmd = app.add_subcommand("paraphrase", "Rewrite stdin through a keyword map");
  paraphrase_cmd->add_option("--map", map_path)->required()->check(CLI::ExistingFile);

  // serve
  std::string host = "127.0.0.1", data_dir;
  int port = 8080;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--catalog", catalog_path)->check(CLI::ExistingFile);
  serve_cmd->add_option("--params", params_path)->check(CLI::ExistingFile);
  serve_cmd->add_option("--index", index_path)->check(CLI::ExistingFile);
  serve_cmd->add_option("--host", host)->capture_default_str();
  serve_cmd->add_option("--port", port)->capture_default_str();
  serve_cmd->add_option("--mock-model", mock_path)->check(CLI::ExistingFile);
  serve_cmd->add_option("--url", url);
  serve_cmd->add_option("--key", key);
  serve_cmd->add_option("--data-dir", data_dir, "Root for evaluation refs (default: DATA_DIR or .)");
  serve_cmd->add_option("--timeout-ms", sandbox.timeout_ms)->capture_default_str();
  serve_cmd->add_option("--interpreter", sandbox.interpreter_cmd)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*extract_cmd) {
      Output out(out_path);
      for (const auto& file : load_corpus(corpus_dir)) {
        for (const auto& block : extract_blocks(file.text, file.file_id)) {
          write_json_line(out.stream(), to_json(block));
        }
      }
    } else if (*pairs_cmd) {
      const auto pairs = make_pairs(read_blocks(blocks_path), parse_catalog(fs::path(catalog_path)),
                                    PairOptions{negatives, seed});
      Output out(out_path);
      for (const auto& pair : pairs) write_json_line(out.stream(), to_json(pair));
      std::cerr << pairs.size() << " pairs\n";
    } else if (*weigh_cmd) {
      const auto catalog = parse_catalog(fs::path(catalog_path));
      const auto stars = read_stars(stars_path);
      Output out(out_path);
      for (const auto& file : load_corpus(corpus_dir)) {
        auto it = stars.find(file.file_id);
        const auto meta =
            compute_file_meta(file.text, file.file_id, it == stars.end() ? 0 : it->second, catalog);
        write_json_line(out.stream(), to_json(meta));
      }
    } else if (*resample_cmd) {
      const auto metas = read_metas(metas_path);
      std::vector<double> weights;
      for (const auto& meta : metas) weights.push_back(resample_weight(meta));
      Output out(out_path);
      for (auto index : sample_by_weight(weights, count, seed)) {
        out.stream() << metas[index].file_id << '\n';
      }
    } else if (*train_cmd) {
      const auto catalog = parse_catalog(fs::path(catalog_path));
      const auto result = train(read_pairs(pairs_path), catalog, train_config);
      for (std::size_t e = 0; e < result.epoch_loss.size(); ++e) {
        std::cerr << "epoch " << e + 1 << " loss " << result.epoch_loss[e] << '\n';
      }
      save_params(fs::path(out_path), result.params);
    } else if (*index_cmd) {
      const auto index =
          build_index(parse_catalog(fs::path(catalog_path)), load_params(fs::path(params_path)));
      Output out(out_path);
      write_index(out.stream(), index);
    } else if (*retrieve_cmd) {
      const auto catalog = parse_catalog(fs::path(catalog_path));
      const auto params = load_params(fs::path(params_path));
      const auto index =
          index_path.empty() ? build_index(catalog, params) : read_index(fs::path(index_path));
      for (const auto& hit : retrieve(index, params, query, k)) {
        const auto& record = catalog.at(hit.api_id);
        write_json_line(std::cout, Json{{"api_id", hit.api_id},
                                        {"name", record.name},
                                        {"first_sentence", first_sentence(record.description)},
                                        {"score", hit.score}});
      }
    } else if (*prompt_cmd) {
      const auto catalog = parse_catalog(fs::path(catalog_path));
      PromptSpec spec;
      spec.format = parse_prompt_format(format_text);
      spec.code_context = read_input(context_path);
      spec.noise_rate = noise;
      spec.seed = seed;

      ApiSelection selection = NoApi{};
      if (selection_text == "none") {
        selection = NoApi{};
      } else if (selection_text == "oracle") {
        selection = OracleApis{split_csv(api_ids_text)};
      } else if (selection_text.rfind("top", 0) == 0) {
        const auto digits = selection_text.substr(3);
        selection = TopK{digits.empty() || digits == "K" ? k : std::stoul(digits)};
      } else if (selection_text == "human") {
        if (choice_text == "none") {
          selection = Human{NoneOfTheAbove{}};
        } else if (choice_text == "not-sure") {
          selection = Human{NotSure{}};
        } else {
          selection = Human{Selected{split_csv(choice_text)}};
        }
      } else {
        throw PreconditionError("unknown selection '" + selection_text + "'");
      }

      std::vector<std::string> ranked;
      if (std::holds_alternative<TopK>(selection) || std::holds_alternative<Human>(selection)) {
        if (params_path.empty()) throw PreconditionError("--params is required for topK/human");
        const auto params = load_params(fs::path(params_path));
        const auto index =
            index_path.empty() ? build_index(catalog, params) : read_index(fs::path(index_path));
        const auto depth = std::max<std::size_t>(5, std::holds_alternative<TopK>(selection)
                                                        ? std::get<TopK>(selection).k
                                                        : 5);
        for (const auto& hit :
             retrieve(index, params, query.empty() ? spec.code_context : query, depth)) {
          ranked.push_back(hit.api_id);
        }
      }
      for (const auto& id : selected_api_ids(selection, ranked)) spec.apis.push_back(catalog.at(id));
      const auto prompt = assemble_prompt_detailed(spec, catalog);
      for (const auto& warning : prompt.warnings) std::cerr << "warning: " << warning << '\n';
      std::cout << prompt.text;
    } else if (*generate_cmd) {
      auto model = make_model(mock_path, url, key);
      if (!model) throw PreconditionError("no model: pass --mock-model, --url or set MODEL_URL");
      request.prompt = read_input(prompt_path);
      if (!stops.empty()) request.stop_markers = stops;
      Output out(out_path);
      for (const auto& c : generate(*model, request)) {
        write_json_line(out.stream(), Json{{"text", c.text},
                                           {"raw", c.raw},
                                           {"finish_reason", to_string(c.finish_reason)}});
      }
    } else if (*evaluate_cmd) {
      EvaluateOptions options;
      options.sandbox = sandbox;
      options.k_set.clear();
      for (const auto& item : split_csv(k_text)) options.k_set.push_back(std::stoll(item));
      std::optional<DocCatalog> catalog;
      if (!catalog_path.empty()) {
        catalog = parse_catalog(fs::path(catalog_path));
        options.catalog = &*catalog;
      }
      const auto report =
          evaluate(read_benchmark(benchmark_path), read_completions(completions_path), options);
      Output out(out_path);
      out.stream() << to_json(report).dump(2) << '\n';
    } else if (*paraphrase_cmd) {
      const auto map = load_map(fs::path(map_path));
      std::cout << privcode::apply(map, read_input("-"));
    } else if (*serve_cmd) {
      ServiceConfig config;
      if (!catalog_path.empty()) config.catalog = parse_catalog(fs::path(catalog_path));
      if (!params_path.empty()) config.params = load_params(fs::path(params_path));
      if (!index_path.empty()) config.index = read_index(fs::path(index_path));
      config.model = make_model(mock_path, url, key);
      if (data_dir.empty()) {
        const char* env = std::getenv("DATA_DIR");
        data_dir = env ? env : ".";
      }
      config.data_dir = data_dir;
      config.sandbox = sandbox;
      Service service(std::move(config));
      HttpServer server(service);
      const int bound = server.bind(host, port);
      std::cerr << "listening on http://" << host << ':' << bound << '\n';
      server.listen();
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
