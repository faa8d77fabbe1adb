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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "privcode/doccatalog.hpp"
#include "privcode/evalharness.hpp"
#include "privcode/extract.hpp"
#include "privcode/paraphraser.hpp"
#include "privcode/promptbuilder.hpp"

namespace {

using namespace privcode;

void BM_PassAtK(benchmark::State& state) {
  const auto n = state.range(0);
  for (auto _ : state) {
    for (std::int64_t c = 0; c <= n; c += 7) benchmark::DoNotOptimize(pass_at_k(n, c, 10));
  }
}
BENCHMARK(BM_PassAtK)->Arg(100)->Arg(1000);

// A pandas-flavoured module, repeated to the requested number of functions.
std::string pandas_source(int functions) {
  std::string text = "import pandas as pd\nimport numpy as np\n\n";
  for (int i = 0; i < functions; ++i) {
    const auto id = std::to_string(i);
    text += "# Load the frame, drop missing rows and keep matching labels " + id + ".\n"
            "def step_" + id + "(path, labels):\n"
            "    df = pd.read_csv(path)\n"
            "    df = df.dropna()\n"
            "    mask = df['label'].isin(labels)\n"
            "    return np.array(df[mask].to_numpy()).sum()\n\n";
  }
  return text;
}

void BM_Paraphrase(benchmark::State& state) {
  const auto map = load_map(std::filesystem::path(PRIVCODE_KEYWORD_MAP_DIR) / "pandas_monkey.tsv");
  const auto text = pandas_source(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(privcode::apply(map, text));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_Paraphrase)->Arg(10)->Arg(200);

void BM_ExtractBlocks(benchmark::State& state) {
  const auto text = pandas_source(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(extract_blocks(text, "bench.py"));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ExtractBlocks)->Arg(10)->Arg(200);

void BM_AssemblePrompt(benchmark::State& state) {
  std::vector<ApiRecord> records;
  for (int i = 0; i < 500; ++i) {
    ApiRecord r;
    r.library = "monkey";
    r.name = "op" + std::to_string(i);
    r.path = "KnowledgeFrame." + r.name;
    r.api_id = r.library + "." + r.path;
    r.signature = "(self, axis=0, skipna=True)";
    r.description = "Applies operation " + std::to_string(i) + " along an axis. Extra detail follows.";
    r.examples = {"kf." + r.name + "(axis=1)"};
    records.push_back(std::move(r));
  }
  const DocCatalog catalog(records);
  PromptSpec spec;
  spec.apis.assign(records.begin(), records.begin() + state.range(0));
  spec.format = PromptFormat::BasicAndExamples;
  spec.code_context = pandas_source(3);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    spec.seed = seed++;
    benchmark::DoNotOptimize(assemble_prompt(spec, catalog));
  }
}
BENCHMARK(BM_AssemblePrompt)->Arg(2)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
