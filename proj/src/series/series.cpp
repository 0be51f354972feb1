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

#include "fractext/series.hpp"

#include <algorithm>
#include <unordered_set>

#include <fmt/format.h>

#include "fractext/error.hpp"
#include "fractext/random.hpp"

namespace fractext::series {
namespace {

void require_sentences(const lingpipe::TaggedDocument& doc) {
  if (doc.sentences.empty()) {
    throw DataError(fmt::format("document '{}' has no sentences", doc.meta.id));
  }
}

std::string fold(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

double mtld_direction(std::span<const std::string> tokens, double threshold, bool reverse) {
  const std::size_t n = tokens.size();
  double factors = 0.0;
  std::unordered_set<std::string_view> types;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = tokens[reverse ? n - 1 - i : i];
    types.insert(t);
    ++count;
    const double ttr = static_cast<double>(types.size()) / static_cast<double>(count);
    if (ttr < threshold) {
      factors += 1.0;
      types.clear();
      count = 0;
    }
  }
  if (count > 0) {
    const double ttr = static_cast<double>(types.size()) / static_cast<double>(count);
    factors += (1.0 - ttr) / (1.0 - threshold);
  }
  const double total = static_cast<double>(n);
  if (factors == 0.0) return total;
  return std::min(total, total / factors);
}

}  // namespace

std::string_view property_name(Property p) {
  switch (p) {
    case Property::kNoun: return "noun";
    case Property::kVerb: return "verb";
    case Property::kAdjective: return "adjective";
    case Property::kPronoun: return "pronoun";
    case Property::kSentenceLength: return "sentence_length";
    case Property::kMtld: return "mtld";
    case Property::kTopicJsd: return "topic_jsd";
  }
  return "unknown";
}

Property parse_property(std::string_view name) {
  for (auto p : kAllProperties) {
    if (property_name(p) == name) return p;
  }
  throw UsageError(fmt::format("unknown property '{}'", name));
}

lingpipe::PosGroup property_group(Property p) {
  switch (p) {
    case Property::kNoun: return lingpipe::PosGroup::kNoun;
    case Property::kVerb: return lingpipe::PosGroup::kVerb;
    case Property::kAdjective: return lingpipe::PosGroup::kAdjective;
    case Property::kPronoun: return lingpipe::PosGroup::kPronoun;
    default: return lingpipe::PosGroup::kOther;
  }
}

bool is_low_level(Property p) {
  return p != Property::kMtld && p != Property::kTopicJsd;
}

std::string_view x_unit_name(XUnit u) {
  switch (u) {
    case XUnit::kSentence: return "sentence";
    case XUnit::kChunk: return "chunk";
    case XUnit::kChunkPair: return "chunk_pair";
  }
  return "unknown";
}

TimeSeries pos_frequency_series(const lingpipe::TaggedDocument& doc, lingpipe::PosGroup group) {
  require_sentences(doc);
  TimeSeries out;
  out.doc_id = doc.meta.id;
  switch (group) {
    case lingpipe::PosGroup::kNoun: out.property = Property::kNoun; break;
    case lingpipe::PosGroup::kVerb: out.property = Property::kVerb; break;
    case lingpipe::PosGroup::kAdjective: out.property = Property::kAdjective; break;
    case lingpipe::PosGroup::kPronoun: out.property = Property::kPronoun; break;
    case lingpipe::PosGroup::kOther:
      throw UsageError("no frequency property for the Other group");
  }
  out.x_unit = XUnit::kSentence;
  out.values.reserve(doc.sentences.size());
  for (const auto& s : doc.sentences) {
    std::size_t n = 0;
    for (const auto& t : s.tokens) {
      if (!t.tagged()) {
        throw DataError(fmt::format("document '{}': untagged token '{}'", doc.meta.id, t.surface));
      }
      if (lingpipe::group_tag(t.tag) == group) ++n;
    }
    out.values.push_back(static_cast<double>(n));
  }
  return out;
}

TimeSeries sentence_length_series(const lingpipe::TaggedDocument& doc) {
  require_sentences(doc);
  TimeSeries out;
  out.doc_id = doc.meta.id;
  out.property = Property::kSentenceLength;
  out.x_unit = XUnit::kSentence;
  out.values.reserve(doc.sentences.size());
  for (const auto& s : doc.sentences) out.values.push_back(static_cast<double>(s.tokens.size()));
  return out;
}

std::vector<std::string> mtld_tokens(std::span<const std::string> tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (t.empty() || lingpipe::is_punctuation(t)) continue;
    out.push_back(fold(t));
  }
  return out;
}

std::vector<std::string> mtld_tokens(const lingpipe::TaggedDocument& doc) {
  std::vector<std::string> surfaces;
  surfaces.reserve(doc.token_count());
  for (const auto& s : doc.sentences) {
    for (const auto& t : s.tokens) surfaces.push_back(t.surface);
  }
  return mtld_tokens(surfaces);
}

double mtld(std::span<const std::string> tokens, double ttr_threshold) {
  if (!(ttr_threshold > 0.0 && ttr_threshold < 1.0)) {
    throw UsageError(fmt::format("TTR threshold must lie in (0, 1), got {}", ttr_threshold));
  }
  const auto words = mtld_tokens(tokens);
  if (words.empty()) throw DataError("MTLD of an empty token list");
  return 0.5 * (mtld_direction(words, ttr_threshold, false) +
                mtld_direction(words, ttr_threshold, true));
}

TimeSeries mtld_series(const lingpipe::TaggedDocument& doc, std::size_t chunk_tokens,
                       double ttr_threshold) {
  if (chunk_tokens == 0) throw UsageError("MTLD chunk size must be positive");
  const auto words = mtld_tokens(doc);
  const std::size_t chunks = words.size() / chunk_tokens;
  if (chunks < 2) {
    throw DataError(fmt::format("document '{}' has {} words, fewer than two {}-token chunks",
                                doc.meta.id, words.size(), chunk_tokens));
  }
  TimeSeries out;
  out.doc_id = doc.meta.id;
  out.property = Property::kMtld;
  out.x_unit = XUnit::kChunk;
  out.values.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    std::span<const std::string> block(words.data() + c * chunk_tokens, chunk_tokens);
    out.values.push_back(mtld(block, ttr_threshold));
  }
  return out;
}

TopicSeries topic_jsd_series(const lingpipe::TaggedDocument& doc,
                             const topicmodel::TopicModel& model,
                             const topicmodel::Vocabulary& vocab,
                             const topicmodel::Stopwords& stopwords, std::uint64_t seed,
                             std::size_t chunk_tokens, int infer_sweeps, int infer_burn_in) {
  if (!model.trained()) throw UsageError("topic model is not trained");
  if (static_cast<std::size_t>(model.vocab_size) != vocab.size()) {
    throw DataError("topic model and vocabulary sizes differ");
  }
  const auto chunks = topicmodel::segment_chunks(doc, vocab, stopwords, chunk_tokens);
  if (chunks.size() < 3) {
    throw DataError(fmt::format("document '{}' has {} topic chunks, need at least 3",
                                doc.meta.id, chunks.size()));
  }
  TopicSeries out;
  out.thetas.resize(chunks.size());
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    out.thetas[i] = topicmodel::infer_theta(model, chunks[i], derive_seed(seed, doc.meta.id, i),
                                            infer_sweeps, infer_burn_in);
  }
  out.series.doc_id = doc.meta.id;
  out.series.property = Property::kTopicJsd;
  out.series.x_unit = XUnit::kChunkPair;
  for (std::size_t i = 0; i + 1 < chunks.size(); ++i) {
    out.series.values.push_back(topicmodel::jsd(out.thetas[i], out.thetas[i + 1]));
  }
  return out;
}

}  // namespace fractext::series
