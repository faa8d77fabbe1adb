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

#include "privcode/retriever.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <numeric>
#include <set>

#include "privcode/errors.hpp"
#include "privcode/rng.hpp"

namespace privcode {

static_assert(std::endian::native == std::endian::little,
              "params files are written in native little-endian layout");

namespace {

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_lower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void split_camel(std::string_view word, std::vector<std::string>& out) {
  std::size_t start = 0;
  for (std::size_t i = 1; i < word.size(); ++i) {
    const bool lower_to_upper = is_lower(word[i - 1]) && is_upper(word[i]);
    const bool acronym_end =
        is_upper(word[i - 1]) && is_upper(word[i]) && i + 1 < word.size() && is_lower(word[i + 1]);
    if (lower_to_upper || acronym_end) {
      out.push_back(lowercase(word.substr(start, i - start)));
      start = i;
    }
  }
  out.push_back(lowercase(word.substr(start)));
}

std::uint32_t bucket(std::string_view tag, std::string_view a, std::string_view b,
                     std::size_t hash_dim) {
  auto h = fnv1a64(tag);
  h = fnv1a64(a, h);
  if (!b.empty()) {
    h = fnv1a64(" ", h);
    h = fnv1a64(b, h);
  }
  return static_cast<std::uint32_t>(h % hash_dim);
}

std::vector<double>& grad_row(std::unordered_map<std::uint32_t, std::vector<double>>& rows,
                              std::uint32_t r, std::size_t dim) {
  auto [it, inserted] = rows.try_emplace(r);
  if (inserted) it->second.assign(dim, 0.0);
  return it->second;
}

void write_u64(std::ostream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint64_t read_u64(std::istream& in) {
  std::uint64_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw ParseError("truncated params header");
  return v;
}

constexpr char kParamsMagic[8] = {'P', 'R', 'I', 'V', 'E', 'N', 'C', '1'};

}  // namespace

std::vector<std::string> feature_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !is_alnum(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && is_alnum(text[i])) ++i;
    if (i > start) split_camel(text.substr(start, i - start), tokens);
  }
  return tokens;
}

SparseVector featurize(std::string_view text, std::size_t hash_dim) {
  if (hash_dim == 0) throw PreconditionError("hash_dim must be > 0");
  const auto tokens = feature_tokens(text);
  std::map<std::uint32_t, double> counts;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    counts[bucket("u:", tokens[i], {}, hash_dim)] += 1.0;
    if (i + 1 < tokens.size()) counts[bucket("b:", tokens[i], tokens[i + 1], hash_dim)] += 1.0;
  }
  double norm = 0.0;
  for (const auto& [_, c] : counts) norm += c * c;
  norm = std::sqrt(norm);
  SparseVector v;
  v.entries.reserve(counts.size());
  for (const auto& [b, c] : counts) v.entries.emplace_back(b, c / norm);
  return v;
}

EncoderParams EncoderParams::initialize(std::size_t hash_dim, std::size_t embed_dim,
                                        std::uint64_t seed) {
  if (hash_dim == 0 || embed_dim == 0) throw PreconditionError("encoder dims must be > 0");
  EncoderParams p;
  p.hash_dim = hash_dim;
  p.embed_dim = embed_dim;
  p.proj_d.resize(hash_dim * embed_dim);
  Rng rng(mix_seed(seed, fnv1a64("encoder-init")));
  const double scale = 1.0 / std::sqrt(static_cast<double>(embed_dim));
  for (auto& w : p.proj_d) w = rng.normal() * scale;
  p.proj_a = p.proj_d;
  return p;
}

void EncoderParams::validate() const {
  if (embed_dim == 0 || hash_dim == 0) throw ValidationError("encoder dims must be > 0");
  if (proj_d.size() != hash_dim * embed_dim || proj_a.size() != hash_dim * embed_dim) {
    throw ValidationError("projection matrices do not match hash_dim x embed_dim");
  }
  auto finite = [](double x) { return std::isfinite(x); };
  if (!std::all_of(proj_d.begin(), proj_d.end(), finite) ||
      !std::all_of(proj_a.begin(), proj_a.end(), finite)) {
    throw ValidationError("projection matrices contain non-finite values");
  }
}

std::string EncoderParams::fingerprint() const {
  std::uint64_t h = fnv1a64("privcode-encoder");
  auto feed = [&h](const void* data, std::size_t bytes) {
    h = fnv1a64(std::string_view(static_cast<const char*>(data), bytes), h);
  };
  const std::uint64_t dims[2] = {hash_dim, embed_dim};
  feed(dims, sizeof dims);
  feed(proj_d.data(), proj_d.size() * sizeof(double));
  feed(proj_a.data(), proj_a.size() * sizeof(double));
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::span<const double> EncoderParams::row(EncoderSide side, std::uint32_t bucket) const {
  const auto& m = side == EncoderSide::Description ? proj_d : proj_a;
  return {m.data() + static_cast<std::size_t>(bucket) * embed_dim, embed_dim};
}

void save_params(std::ostream& out, const EncoderParams& params) {
  params.validate();
  out.write(kParamsMagic, sizeof kParamsMagic);
  write_u64(out, params.hash_dim);
  write_u64(out, params.embed_dim);
  const auto fp = params.fingerprint();
  out.write(fp.data(), static_cast<std::streamsize>(fp.size()));
  out.write(reinterpret_cast<const char*>(params.proj_d.data()),
            static_cast<std::streamsize>(params.proj_d.size() * sizeof(double)));
  out.write(reinterpret_cast<const char*>(params.proj_a.data()),
            static_cast<std::streamsize>(params.proj_a.size() * sizeof(double)));
  if (!out) throw Error("failed writing params");
}

void save_params(const std::filesystem::path& file, const EncoderParams& params) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + file.string());
  save_params(out, params);
}

EncoderParams load_params(std::istream& in) {
  char magic[sizeof kParamsMagic];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kParamsMagic, sizeof magic) != 0) {
    throw ParseError("not a params file (bad magic)");
  }
  EncoderParams p;
  p.hash_dim = read_u64(in);
  p.embed_dim = read_u64(in);
  if (p.hash_dim == 0 || p.embed_dim == 0 || p.hash_dim > (1u << 24) || p.embed_dim > (1u << 16)) {
    throw ParseError("implausible params dimensions");
  }
  std::string fp(16, '\0');
  if (!in.read(fp.data(), 16)) throw ParseError("truncated params header");
  const auto n = p.hash_dim * p.embed_dim;
  p.proj_d.resize(n);
  p.proj_a.resize(n);
  const auto bytes = static_cast<std::streamsize>(n * sizeof(double));
  if (!in.read(reinterpret_cast<char*>(p.proj_d.data()), bytes) ||
      !in.read(reinterpret_cast<char*>(p.proj_a.data()), bytes)) {
    throw ParseError("truncated params body");
  }
  p.validate();
  if (p.fingerprint() != fp) throw ParseError("params fingerprint mismatch (corrupt file?)");
  return p;
}

EncoderParams load_params(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ParseError("cannot open params " + file.string());
  return load_params(in);
}

std::string api_text(const ApiRecord& record) {
  return record.name + " " + record.signature + " " + first_sentence(record.description);
}

std::vector<double> encode_features(const EncoderParams& params, EncoderSide side,
                                    const SparseVector& features) {
  std::vector<double> out(params.embed_dim, 0.0);
  for (const auto& [b, x] : features.entries) {
    if (b >= params.hash_dim) throw PreconditionError("feature bucket outside hash_dim");
    const auto row = params.row(side, b);
    for (std::size_t e = 0; e < out.size(); ++e) out[e] += x * row[e];
  }
  return out;
}

std::vector<double> encode(const EncoderParams& params, EncoderSide side, std::string_view text) {
  return encode_features(params, side, featurize(text, params.hash_dim));
}

double score(std::span<const double> query, std::span<const double> api) {
  if (query.size() != api.size()) {
    throw PreconditionError("score: dimension mismatch " + std::to_string(query.size()) + " vs " +
                            std::to_string(api.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < query.size(); ++i) s += query[i] * api[i];
  return s;
}

double batch_loss(const EncoderParams& params, std::span<const TrainingExample> batch,
                  SparseGradient* grad) {
  if (batch.empty()) return 0.0;
  const auto dim = params.embed_dim;
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  double total = 0.0;
  std::vector<double> logits;
  std::vector<std::vector<double>> api_vecs;
  std::vector<double> d_query(dim);
  for (const auto& ex : batch) {
    const auto query = encode_features(params, EncoderSide::Description, ex.description);
    api_vecs.clear();
    logits.clear();
    for (const auto& c : ex.candidates) {
      api_vecs.push_back(encode_features(params, EncoderSide::Api, c));
      logits.push_back(score(query, api_vecs.back()));
    }
    const double max_logit = *std::max_element(logits.begin(), logits.end());
    double z = 0.0;
    for (double s : logits) z += std::exp(s - max_logit);
    const double log_z = max_logit + std::log(z);
    total += log_z - logits[0];
    if (!grad) continue;

    std::fill(d_query.begin(), d_query.end(), 0.0);
    for (std::size_t j = 0; j < logits.size(); ++j) {
      // dL/ds_j = softmax_j - [j == positive], scaled for the batch mean
      const double g = (std::exp(logits[j] - log_z) - (j == 0 ? 1.0 : 0.0)) * inv_n;
      for (std::size_t e = 0; e < dim; ++e) d_query[e] += g * api_vecs[j][e];
      for (const auto& [b, x] : ex.candidates[j].entries) {
        auto& row = grad_row(grad->a_rows, b, dim);
        for (std::size_t e = 0; e < dim; ++e) row[e] += x * g * query[e];
      }
    }
    for (const auto& [b, x] : ex.description.entries) {
      auto& row = grad_row(grad->d_rows, b, dim);
      for (std::size_t e = 0; e < dim; ++e) row[e] += x * d_query[e];
    }
  }
  return total * inv_n;
}

std::vector<TrainingExample> make_examples(const std::vector<TrainingPair>& pairs,
                                           const DocCatalog& catalog, std::size_t hash_dim) {
  std::unordered_map<std::string, SparseVector> api_features;
  auto features_of = [&](const std::string& id) -> const SparseVector& {
    auto it = api_features.find(id);
    if (it == api_features.end()) {
      it = api_features.emplace(id, featurize(api_text(catalog.at(id)), hash_dim)).first;
    }
    return it->second;
  };
  std::vector<TrainingExample> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    TrainingExample ex;
    ex.description = featurize(p.description, hash_dim);
    ex.candidates.push_back(features_of(p.positive));
    for (const auto& n : p.negatives) ex.candidates.push_back(features_of(n));
    out.push_back(std::move(ex));
  }
  return out;
}

TrainResult train(const std::vector<TrainingPair>& pairs, const DocCatalog& catalog,
                  const TrainConfig& config, const EncoderParams* initial) {
  if (pairs.empty()) throw PreconditionError("train: no training pairs");
  if (config.batch == 0) throw PreconditionError("train: batch must be >= 1");
  if (config.epochs < 0) throw PreconditionError("train: epochs must be >= 0");

  TrainResult result;
  result.params = initial ? *initial
                          : EncoderParams::initialize(config.hash_dim, config.embed_dim, config.seed);
  auto& params = result.params;
  params.validate();
  const auto examples = make_examples(pairs, catalog, params.hash_dim);
  const auto dim = params.embed_dim;

  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(mix_seed(config.seed, fnv1a64("train-order")));
  std::vector<TrainingExample> batch;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order);
    double epoch_total = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch) {
      const auto end = std::min(order.size(), start + config.batch);
      batch.clear();
      for (std::size_t i = start; i < end; ++i) batch.push_back(examples[order[i]]);
      SparseGradient grad;
      const double loss = batch_loss(params, batch, &grad);
      if (!std::isfinite(loss)) {
        throw TrainingError("non-finite loss at epoch " + std::to_string(epoch + 1) + ", batch " +
                            std::to_string(start / config.batch) + " (first pair: \"" +
                            pairs[order[start]].description + "\" -> " +
                            pairs[order[start]].positive + "); lower the learning rate");
      }
      epoch_total += loss * static_cast<double>(end - start);
      if (config.lr == 0.0) continue;
      for (const auto& [b, g] : grad.d_rows) {
        double* row = params.proj_d.data() + static_cast<std::size_t>(b) * dim;
        for (std::size_t e = 0; e < dim; ++e) row[e] -= config.lr * g[e];
      }
      for (const auto& [b, g] : grad.a_rows) {
        double* row = params.proj_a.data() + static_cast<std::size_t>(b) * dim;
        for (std::size_t e = 0; e < dim; ++e) row[e] -= config.lr * g[e];
      }
    }
    result.epoch_loss.push_back(epoch_total / static_cast<double>(order.size()));
  }
  return result;
}

ApiIndex build_index(const DocCatalog& catalog, const EncoderParams& params) {
  ApiIndex index;
  index.embed_dim = params.embed_dim;
  index.built_with = params.fingerprint();
  index.entries.reserve(catalog.size());
  for (const auto& r : catalog.records()) {
    index.entries.push_back({r.api_id, encode(params, EncoderSide::Api, api_text(r))});
  }
  return index;
}

void write_index(std::ostream& out, const ApiIndex& index) {
  write_json_line(out, Json{{"embed_dim", index.embed_dim}, {"built_with", index.built_with}});
  for (const auto& e : index.entries) {
    write_json_line(out, Json{{"api_id", e.api_id}, {"vector", e.vector}});
  }
}

ApiIndex read_index(std::istream& in) {
  ApiIndex index;
  bool header = true;
  std::set<std::string> ids;
  for_each_json_line(in, [&](const Json& o, std::size_t line) {
    try {
      if (header) {
        index.embed_dim = o.at("embed_dim").get<std::size_t>();
        index.built_with = o.at("built_with").get<std::string>();
        header = false;
        return;
      }
      IndexEntry e{o.at("api_id").get<std::string>(), o.at("vector").get<std::vector<double>>()};
      if (e.vector.size() != index.embed_dim) throw ParseError("vector length != embed_dim", line);
      if (!ids.insert(e.api_id).second) throw ParseError("duplicate api_id " + e.api_id, line);
      index.entries.push_back(std::move(e));
    } catch (const Json::exception& ex) {
      throw ParseError(std::string("bad index record: ") + ex.what(), line);
    }
  });
  if (header) throw ParseError("index file has no header line");
  return index;
}

ApiIndex read_index(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ParseError("cannot open index " + file.string());
  return read_index(in);
}

std::vector<ScoredApi> retrieve_vector(const ApiIndex& index, std::span<const double> query,
                                       std::size_t k) {
  if (k < 1) throw PreconditionError("retrieve: k must be >= 1");
  if (index.entries.empty()) throw PreconditionError("retrieve: empty index");
  std::vector<ScoredApi> scored;
  scored.reserve(index.entries.size());
  for (const auto& e : index.entries) scored.push_back({e.api_id, score(query, e.vector)});
  const auto keep = std::min(k, scored.size());
  auto better = [](const ScoredApi& a, const ScoredApi& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.api_id < b.api_id;
  };
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep), scored.end(),
                    better);
  scored.resize(keep);
  return scored;
}

std::vector<ScoredApi> retrieve(const ApiIndex& index, const EncoderParams& params,
                                std::string_view query, std::size_t k) {
  if (index.embed_dim != params.embed_dim) {
    throw PreconditionError("retrieve: index and params embed_dim differ");
  }
  return retrieve_vector(index, encode(params, EncoderSide::Description, query), k);
}

namespace {

std::pair<std::size_t, std::size_t> oracle_hits(const std::vector<ScoredApi>& results,
                                                const std::vector<std::string>& oracle,
                                                std::size_t k) {
  const std::set<std::string> wanted(oracle.begin(), oracle.end());
  if (wanted.empty()) throw PreconditionError("oracle API set must be non-empty");
  std::set<std::string> found;
  for (std::size_t i = 0; i < std::min(k, results.size()); ++i) {
    if (wanted.count(results[i].api_id)) found.insert(results[i].api_id);
  }
  return {found.size(), wanted.size()};
}

}  // namespace

double recall_at_k(const std::vector<ScoredApi>& results, const std::vector<std::string>& oracle,
                   std::size_t k) {
  const auto [hit, total] = oracle_hits(results, oracle, k);
  return static_cast<double>(hit) / static_cast<double>(total);
}

int retrieval_accuracy(const std::vector<ScoredApi>& results,
                       const std::vector<std::string>& oracle, std::size_t k) {
  const auto [hit, total] = oracle_hits(results, oracle, k);
  return hit == total ? 1 : 0;
}

}  // namespace privcode
