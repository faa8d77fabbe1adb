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

#include "privcode/retriever.hpp"
#include "privcode/rng.hpp"

namespace {

using namespace privcode;

std::string pseudo_word(Rng& rng) {
  static constexpr char letters[] = "bcdfghjklmnprstvwzaeiou";
  std::string w;
  for (int i = 0; i < 7; ++i) w.push_back(letters[rng.uniform_index(sizeof letters - 1)]);
  return w;
}

std::string sentence(Rng& rng, int words) {
  std::string s;
  for (int i = 0; i < words; ++i) s += (i ? " " : "") + pseudo_word(rng);
  return s;
}

ApiIndex random_index(std::size_t entries, std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  ApiIndex index;
  index.embed_dim = dim;
  for (std::size_t i = 0; i < entries; ++i) {
    std::vector<double> v(dim);
    for (auto& x : v) x = rng.normal();
    index.entries.push_back({"api" + std::to_string(i), std::move(v)});
  }
  return index;
}

void BM_RetrieveVector(benchmark::State& state) {
  const auto entries = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  const auto index = random_index(entries, EncoderParams::kDefaultEmbedDim, 1);
  Rng rng(2);
  std::vector<double> q(EncoderParams::kDefaultEmbedDim);
  for (auto& x : q) x = rng.normal();
  for (auto _ : state) benchmark::DoNotOptimize(retrieve_vector(index, q, k));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(entries));
}
BENCHMARK(BM_RetrieveVector)->ArgsProduct({{1'000, 10'000, 50'000}, {5, 50}});

void BM_Featurize(benchmark::State& state) {
  Rng rng(3);
  const auto text = sentence(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(featurize(text, EncoderParams::kDefaultHashDim));
}
BENCHMARK(BM_Featurize)->Arg(8)->Arg(64);

void BM_EncodeQuery(benchmark::State& state) {
  const auto params = EncoderParams::initialize(1 << 16, static_cast<std::size_t>(state.range(0)), 4);
  Rng rng(5);
  const auto text = sentence(rng, 12);
  for (auto _ : state) benchmark::DoNotOptimize(encode(params, EncoderSide::Description, text));
}
BENCHMARK(BM_EncodeQuery)->Arg(128)->Arg(768);

// One SGD-sized batch: 16 descriptions, 1 positive and 8 negatives each.
void BM_BatchLossWithGradient(benchmark::State& state) {
  const std::size_t hash_dim = 1 << 14;
  const auto params = EncoderParams::initialize(hash_dim, static_cast<std::size_t>(state.range(0)), 6);
  Rng rng(7);
  std::vector<TrainingExample> batch(16);
  for (auto& ex : batch) {
    ex.description = featurize(sentence(rng, 10), hash_dim);
    for (int c = 0; c < 9; ++c) ex.candidates.push_back(featurize(sentence(rng, 6), hash_dim));
  }
  for (auto _ : state) {
    SparseGradient grad;
    benchmark::DoNotOptimize(batch_loss(params, batch, &grad));
  }
}
BENCHMARK(BM_BatchLossWithGradient)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
