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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "fractext/error.hpp"
#include "fractext/random.hpp"
#include "fractext/topicmodel.hpp"

namespace fractext::topicmodel {
namespace {

constexpr int kFormatVersion = 1;

std::string fold(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool has_letter(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || static_cast<unsigned char>(c) >= 0xC0;
  });
}

// Draws an index with probability proportional to weights[0..n).
int sample(Rng& rng, const std::vector<double>& cumulative) {
  const double u = rng.uniform() * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return static_cast<int>(std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                                   static_cast<std::ptrdiff_t>(cumulative.size()) - 1));
}

}  // namespace

std::filesystem::path Stopwords::default_path() {
  return std::filesystem::path(FRACTEXT_DATA_DIR) / "lexicon" / "stopwords-en.txt";
}

const Stopwords& Stopwords::defaults() {
  static const Stopwords instance = load(default_path());
  return instance;
}

Stopwords Stopwords::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open stopword list {}", path.string()));
  Stopwords out;
  out.version_ = path.filename().string();
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto pos = line.find("version:");
      if (pos != std::string::npos) {
        out.version_ = line.substr(line.find_first_not_of(' ', pos + 8));
      }
      continue;
    }
    out.words_.insert(fold(line));
  }
  return out;
}

bool Stopwords::contains(std::string_view lower_word) const {
  return words_.contains(std::string(lower_word));
}

std::vector<std::string> content_terms(const lingpipe::TaggedDocument& doc,
                                       const Stopwords& stopwords) {
  std::vector<std::string> out;
  for (const auto& s : doc.sentences) {
    for (const auto& t : s.tokens) {
      if (!has_letter(t.surface)) continue;
      auto w = fold(t.surface);
      if (stopwords.contains(w)) continue;
      out.push_back(std::move(w));
    }
  }
  return out;
}

Vocabulary Vocabulary::build(std::span<const std::vector<std::string>> documents,
                             std::size_t min_df) {
  std::map<std::string, std::size_t> df;
  for (const auto& doc : documents) {
    std::set<std::string_view> seen(doc.begin(), doc.end());
    for (auto w : seen) ++df[std::string(w)];
  }
  std::vector<std::string> terms;
  for (const auto& [w, n] : df) {
    if (n >= min_df) terms.push_back(w);
  }
  return from_terms(std::move(terms));
}

Vocabulary Vocabulary::from_terms(std::vector<std::string> terms) {
  Vocabulary v;
  v.terms_ = std::move(terms);
  for (std::size_t i = 0; i < v.terms_.size(); ++i) {
    if (!v.ids_.emplace(v.terms_[i], static_cast<int>(i)).second) {
      throw DataError(fmt::format("duplicate vocabulary term '{}'", v.terms_[i]));
    }
  }
  return v;
}

std::optional<int> Vocabulary::id(std::string_view term) const {
  const auto it = ids_.find(std::string(term));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::vector<Chunk> segment_chunks(std::span<const std::string> terms, const Vocabulary& vocab,
                                  std::size_t chunk_tokens) {
  if (chunk_tokens == 0) throw UsageError("chunk size must be positive");
  std::vector<Chunk> chunks;
  Chunk current;
  current.reserve(chunk_tokens);
  for (const auto& t : terms) {
    const auto id = vocab.id(t);
    if (!id) continue;
    current.push_back(*id);
    if (current.size() == chunk_tokens) {
      chunks.push_back(std::move(current));
      current = Chunk{};
      current.reserve(chunk_tokens);
    }
  }
  if (chunks.empty()) {
    throw DataError(fmt::format("fewer than {} in-vocabulary content tokens for one chunk",
                                chunk_tokens));
  }
  return chunks;
}

std::vector<Chunk> segment_chunks(const lingpipe::TaggedDocument& doc, const Vocabulary& vocab,
                                  const Stopwords& stopwords, std::size_t chunk_tokens) {
  const auto terms = content_terms(doc, stopwords);
  try {
    return segment_chunks(terms, vocab, chunk_tokens);
  } catch (const DataError& e) {
    throw DataError(fmt::format("document '{}': {}", doc.meta.id, e.what()));
  }
}

TopicModel train_lda(std::span<const Chunk> chunks, int vocab_size, const LdaConfig& config,
                     const SweepCallback& on_sweep) {
  const int K = config.topics;
  if (K < 2) throw UsageError(fmt::format("need at least 2 topics, got {}", K));
  if (config.iterations < 0) throw UsageError("negative iteration count");
  if (vocab_size <= 0) throw DataError("empty vocabulary");
  if (chunks.empty()) throw DataError("no chunks to train on");
  if (chunks.size() < static_cast<std::size_t>(K)) {
    throw DataError(fmt::format("{} chunks is fewer than {} topics", chunks.size(), K));
  }
  const double alpha = config.resolved_alpha();
  const double beta = config.beta;
  if (!(alpha > 0.0) || !(beta > 0.0)) throw UsageError("alpha and beta must be positive");

  TopicModel model;
  model.topics = K;
  model.vocab_size = vocab_size;
  model.alpha = alpha;
  model.beta = beta;
  model.seed = config.seed;
  model.iterations = config.iterations;
  model.word_topic.assign(static_cast<std::size_t>(K) * vocab_size, 0);
  model.topic_totals.assign(K, 0);

  Rng rng(config.seed);
  std::vector<std::vector<int>> z(chunks.size());
  std::vector<std::int32_t> doc_topic(chunks.size() * K, 0);
  for (std::size_t d = 0; d < chunks.size(); ++d) {
    z[d].resize(chunks[d].size());
    for (std::size_t i = 0; i < chunks[d].size(); ++i) {
      const int w = chunks[d][i];
      if (w < 0 || w >= vocab_size) {
        throw DataError(fmt::format("term id {} outside vocabulary of {}", w, vocab_size));
      }
      const int k = static_cast<int>(rng.below(K));
      z[d][i] = k;
      ++model.word_topic[static_cast<std::size_t>(k) * vocab_size + w];
      ++model.topic_totals[k];
      ++doc_topic[d * K + k];
    }
  }

  const double vbeta = vocab_size * beta;
  std::vector<double> cumulative(K);
  for (int sweep = 1; sweep <= config.iterations; ++sweep) {
    for (std::size_t d = 0; d < chunks.size(); ++d) {
      auto* nd = &doc_topic[d * K];
      for (std::size_t i = 0; i < chunks[d].size(); ++i) {
        const int w = chunks[d][i];
        int k = z[d][i];
        --model.word_topic[static_cast<std::size_t>(k) * vocab_size + w];
        --model.topic_totals[k];
        --nd[k];
        double acc = 0.0;
        for (int t = 0; t < K; ++t) {
          acc += (nd[t] + alpha) * (model.word_topic[static_cast<std::size_t>(t) * vocab_size + w] + beta) /
                 (static_cast<double>(model.topic_totals[t]) + vbeta);
          cumulative[t] = acc;
        }
        k = sample(rng, cumulative);
        z[d][i] = k;
        ++model.word_topic[static_cast<std::size_t>(k) * vocab_size + w];
        ++model.topic_totals[k];
        ++nd[k];
      }
    }
    if (on_sweep) on_sweep(sweep, model);
  }
  return model;
}

TopicDistribution infer_theta(const TopicModel& model, std::span<const int> chunk,
                              std::uint64_t seed, int sweeps, int burn_in) {
  if (!model.trained()) throw UsageError("topic model is not trained");
  if (sweeps <= burn_in || burn_in < 0) {
    throw UsageError(fmt::format("need sweeps ({}) > burn-in ({}) >= 0", sweeps, burn_in));
  }
  std::vector<int> words;
  for (int w : chunk) {
    if (w >= 0 && w < model.vocab_size) words.push_back(w);
  }
  if (words.empty()) throw DataError("chunk has no in-vocabulary tokens");
  const int K = model.topics;
  const double alpha = model.alpha;
  const double vbeta = model.vocab_size * model.beta;
  Rng rng(seed);
  std::vector<int> z(words.size());
  std::vector<int> nd(K, 0);
  for (std::size_t i = 0; i < words.size(); ++i) {
    z[i] = static_cast<int>(rng.below(K));
    ++nd[z[i]];
  }
  std::vector<double> cumulative(K);
  std::vector<double> theta(K, 0.0);
  const double n = static_cast<double>(words.size());
  for (int sweep = 1; sweep <= sweeps; ++sweep) {
    for (std::size_t i = 0; i < words.size(); ++i) {
      const int w = words[i];
      --nd[z[i]];
      double acc = 0.0;
      for (int t = 0; t < K; ++t) {
        acc += (nd[t] + alpha) * (model.count(t, w) + model.beta) /
               (static_cast<double>(model.topic_totals[t]) + vbeta);
        cumulative[t] = acc;
      }
      z[i] = sample(rng, cumulative);
      ++nd[z[i]];
    }
    if (sweep > burn_in) {
      for (int t = 0; t < K; ++t) theta[t] += (nd[t] + alpha) / (n + K * alpha);
    }
  }
  double total = 0.0;
  for (double v : theta) total += v;
  for (double& v : theta) v /= total;
  return theta;
}

double jsd(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw DataError(fmt::format("JSD of distributions with {} and {} entries", p.size(), q.size()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    if (p[i] > 0.0) acc += 0.5 * p[i] * std::log2(p[i] / m);
    if (q[i] > 0.0) acc += 0.5 * q[i] * std::log2(q[i] / m);
  }
  return std::clamp(acc, 0.0, 1.0);
}

void save_model(std::ostream& out, const TopicModel& model) {
  out << "fractext-lda " << kFormatVersion << '\n';
  out << "topics " << model.topics << '\n';
  out << "vocab_size " << model.vocab_size << '\n';
  out << fmt::format("alpha {:.17g}\nbeta {:.17g}\n", model.alpha, model.beta);
  out << "seed " << model.seed << '\n';
  out << "iterations " << model.iterations << '\n';
  for (int k = 0; k < model.topics; ++k) {
    for (int v = 0; v < model.vocab_size; ++v) {
      if (v > 0) out << ' ';
      out << model.count(k, v);
    }
    out << '\n';
  }
}

TopicModel load_model(std::istream& in) {
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != "fractext-lda") {
    throw DataError("not a fractext topic model");
  }
  if (version != kFormatVersion) {
    throw DataError(fmt::format("unsupported topic model format version {}", version));
  }
  TopicModel model;
  auto expect = [&](std::string_view key, auto& value) {
    std::string k;
    if (!(in >> k >> value) || k != key) {
      throw DataError(fmt::format("topic model: expected '{}'", key));
    }
  };
  expect("topics", model.topics);
  expect("vocab_size", model.vocab_size);
  expect("alpha", model.alpha);
  expect("beta", model.beta);
  expect("seed", model.seed);
  expect("iterations", model.iterations);
  if (model.topics < 2 || model.vocab_size <= 0) throw DataError("topic model: bad dimensions");
  model.word_topic.assign(static_cast<std::size_t>(model.topics) * model.vocab_size, 0);
  model.topic_totals.assign(model.topics, 0);
  for (int k = 0; k < model.topics; ++k) {
    for (int v = 0; v < model.vocab_size; ++v) {
      std::int32_t c = 0;
      if (!(in >> c) || c < 0) throw DataError("topic model: truncated or negative counts");
      model.word_topic[static_cast<std::size_t>(k) * model.vocab_size + v] = c;
      model.topic_totals[k] += c;
    }
  }
  return model;
}

}  // namespace fractext::topicmodel
