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
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "privcode/doccatalog.hpp"
#include "privcode/extract.hpp"

namespace privcode {

// Sparse vector as (bucket, value) pairs sorted by bucket, buckets unique.
struct SparseVector {
  std::vector<std::pair<std::uint32_t, double>> entries;

  bool empty() const noexcept { return entries.empty(); }
  bool operator==(const SparseVector&) const = default;
};

// Lowercased word pieces: split on non-alphanumerics (so snake_case falls
// apart), then on camelCase joints ("KnowledgeFrame.iscontain" -> knowledge
// frame iscontain; "HTTPServer" -> http server).
std::vector<std::string> feature_tokens(std::string_view text);

// Hashed unigram + bigram counts, L2-normalized. Empty text -> empty vector.
SparseVector featurize(std::string_view text, std::size_t hash_dim);

enum class EncoderSide { Description, Api };

// Two linear encoders mapping hashed features to embed_dim dense vectors.
struct EncoderParams {
  static constexpr std::size_t kDefaultHashDim = 32768;
  static constexpr std::size_t kDefaultEmbedDim = 768;

  std::size_t hash_dim = 0;
  std::size_t embed_dim = 0;
  std::vector<double> proj_d;  // hash_dim x embed_dim, row-major
  std::vector<double> proj_a;  // hash_dim x embed_dim, row-major

  // Both projections start from the same N(0, 1/embed_dim) matrix, so an
  // untrained model scores roughly by hashed-feature overlap.
  static EncoderParams initialize(std::size_t hash_dim, std::size_t embed_dim, std::uint64_t seed);

  // Throws ValidationError if shapes are inconsistent or a value is non-finite.
  void validate() const;

  // 16 hex digits of FNV-1a over dims and both matrices.
  std::string fingerprint() const;

  std::span<const double> row(EncoderSide side, std::uint32_t bucket) const;

  bool operator==(const EncoderParams&) const = default;
};

// Binary file: magic "PRIVENC1", u64 hash_dim, u64 embed_dim, 16-byte ASCII
// fingerprint, then proj_d and proj_a as little-endian float64, row-major.
void save_params(std::ostream& out, const EncoderParams& params);
void save_params(const std::filesystem::path& file, const EncoderParams& params);
EncoderParams load_params(std::istream& in);
EncoderParams load_params(const std::filesystem::path& file);

// Canonical API-side text: name, signature and first description sentence.
std::string api_text(const ApiRecord& record);

std::vector<double> encode_features(const EncoderParams& params, EncoderSide side,
                                    const SparseVector& features);
std::vector<double> encode(const EncoderParams& params, EncoderSide side, std::string_view text);

// Dot product. Throws PreconditionError on dimension mismatch.
double score(std::span<const double> query, std::span<const double> api);

// --- training -------------------------------------------------------------

struct TrainingExample {
  SparseVector description;
  std::vector<SparseVector> candidates;  // [0] is the positive
};

// Gradient restricted to the rows touched by a batch.
struct SparseGradient {
  std::unordered_map<std::uint32_t, std::vector<double>> d_rows;
  std::unordered_map<std::uint32_t, std::vector<double>> a_rows;
};

// Mean softmax cross-entropy of the positive over the batch. When `grad` is
// non-null the gradient of that mean is accumulated into it.
double batch_loss(const EncoderParams& params, std::span<const TrainingExample> batch,
                  SparseGradient* grad = nullptr);

struct TrainConfig {
  double lr = 1e-2;
  int epochs = 5;
  std::uint64_t seed = 0;
  std::size_t batch = 16;
  std::size_t hash_dim = EncoderParams::kDefaultHashDim;
  std::size_t embed_dim = EncoderParams::kDefaultEmbedDim;
};

struct TrainResult {
  EncoderParams params;
  std::vector<double> epoch_loss;  // mean loss per epoch, accumulated during the epoch
};

std::vector<TrainingExample> make_examples(const std::vector<TrainingPair>& pairs,
                                           const DocCatalog& catalog, std::size_t hash_dim);

// Seeded mini-batch SGD. Starts from EncoderParams::initialize(config dims,
// config.seed) unless `initial` is given.
TrainResult train(const std::vector<TrainingPair>& pairs, const DocCatalog& catalog,
                  const TrainConfig& config, const EncoderParams* initial = nullptr);

// --- index ----------------------------------------------------------------

struct IndexEntry {
  std::string api_id;
  std::vector<double> vector;

  bool operator==(const IndexEntry&) const = default;
};

struct ApiIndex {
  std::size_t embed_dim = 0;
  std::string built_with;  // params fingerprint
  std::vector<IndexEntry> entries;

  bool operator==(const ApiIndex&) const = default;
};

ApiIndex build_index(const DocCatalog& catalog, const EncoderParams& params);

// Header line {embed_dim, built_with}, then one {api_id, vector} per line.
void write_index(std::ostream& out, const ApiIndex& index);
ApiIndex read_index(std::istream& in);
ApiIndex read_index(const std::filesystem::path& file);

struct ScoredApi {
  std::string api_id;
  double score = 0.0;

  bool operator==(const ScoredApi&) const = default;
};

// Top-k by descending score, ties by ascending api_id.
std::vector<ScoredApi> retrieve_vector(const ApiIndex& index, std::span<const double> query,
                                       std::size_t k);
std::vector<ScoredApi> retrieve(const ApiIndex& index, const EncoderParams& params,
                                std::string_view query, std::size_t k);

double recall_at_k(const std::vector<ScoredApi>& results, const std::vector<std::string>& oracle,
                   std::size_t k);
int retrieval_accuracy(const std::vector<ScoredApi>& results,
                       const std::vector<std::string>& oracle, std::size_t k);

}  // namespace privcode
