// Copyright 2026 The fractext Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// LDA topic model trained by collapsed Gibbs sampling over fixed-size chunks
// of content words, plus Jensen-Shannon divergence between topic mixtures.

#ifndef FRACTEXT_TOPICMODEL_HPP_
#define FRACTEXT_TOPICMODEL_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fractext/lingpipe.hpp"

namespace fractext::topicmodel {

class Stopwords {
 public:
  static std::filesystem::path default_path();
  // Loaded once from default_path().
  static const Stopwords& defaults();
  // One lower-case word per line, '#' comments, "# version: X" header.
  static Stopwords load(const std::filesystem::path& path);

  bool contains(std::string_view lower_word) const;
  const std::string& version() const { return version_; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
  std::string version_;
};

// Lower-cased tokens that contain a letter and are not stopwords, in document
// order.
std::vector<std::string> content_terms(const lingpipe::TaggedDocument& doc,
                                       const Stopwords& stopwords);

class Vocabulary {
 public:
  static constexpr std::size_t kDefaultMinDf = 3;

  // Keeps terms that occur in at least min_df documents; ids follow sorted
  // term order so they do not depend on document order.
  static Vocabulary build(std::span<const std::vector<std::string>> documents,
                          std::size_t min_df = kDefaultMinDf);
  static Vocabulary from_terms(std::vector<std::string> terms);

  std::optional<int> id(std::string_view term) const;
  const std::string& term(int id) const { return terms_.at(static_cast<std::size_t>(id)); }
  const std::vector<std::string>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, int> ids_;
};

using Chunk = std::vector<int>;

inline constexpr std::size_t kDefaultChunkTokens = 100;

// Consecutive chunks of exactly chunk_tokens in-vocabulary content terms; the
// final partial chunk is dropped. Throws DataError when not even one chunk
// fits.
std::vector<Chunk> segment_chunks(std::span<const std::string> terms, const Vocabulary& vocab,
                                  std::size_t chunk_tokens = kDefaultChunkTokens);
std::vector<Chunk> segment_chunks(const lingpipe::TaggedDocument& doc, const Vocabulary& vocab,
                                  const Stopwords& stopwords,
                                  std::size_t chunk_tokens = kDefaultChunkTokens);

struct LdaConfig {
  int topics = 100;
  // Dirichlet prior on chunk-topic mixtures; 50 / topics when unset.
  std::optional<double> alpha;
  double beta = 0.01;
  int iterations = 1000;
  std::uint64_t seed = 1;
  int infer_sweeps = 50;
  int infer_burn_in = 20;

  double resolved_alpha() const { return alpha ? *alpha : 50.0 / topics; }
};

struct TopicModel {
  int topics = 0;
  int vocab_size = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  int iterations = 0;
  // topics x vocab_size, row-major.
  std::vector<std::int32_t> word_topic;
  std::vector<std::int64_t> topic_totals;

  bool trained() const { return topics > 0 && vocab_size > 0 && !word_topic.empty(); }
  std::int32_t count(int k, int v) const {
    return word_topic[static_cast<std::size_t>(k) * vocab_size + v];
  }
};

// Called after every training sweep with the sweep number (1-based).
using SweepCallback = std::function<void(int sweep, const TopicModel& state)>;

TopicModel train_lda(std::span<const Chunk> chunks, int vocab_size, const LdaConfig& config,
                     const SweepCallback& on_sweep = {});

using TopicDistribution = std::vector<double>;

// Gibbs sampling of the chunk's topic assignments against the frozen model;
// theta = (n_k + alpha) / (n + K alpha) averaged over the sweeps after
// burn-in. Ids outside the vocabulary are ignored.
TopicDistribution infer_theta(const TopicModel& model, std::span<const int> chunk,
                              std::uint64_t seed, int sweeps = 50, int burn_in = 20);

// Base-2 Jensen-Shannon divergence, in [0, 1].
double jsd(std::span<const double> p, std::span<const double> q);

// Text dump: "fractext-lda <version>" header, parameters, then one line of
// counts per topic.
void save_model(std::ostream& out, const TopicModel& model);
TopicModel load_model(std::istream& in);

}  // namespace fractext::topicmodel

#endif  // FRACTEXT_TOPICMODEL_HPP_
