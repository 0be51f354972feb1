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

// The seven per-document property series.

#ifndef FRACTEXT_SERIES_HPP_
#define FRACTEXT_SERIES_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fractext/lingpipe.hpp"
#include "fractext/topicmodel.hpp"

namespace fractext::series {

enum class Property {
  kNoun,
  kVerb,
  kAdjective,
  kPronoun,
  kSentenceLength,
  kMtld,
  kTopicJsd,
};

inline constexpr std::array<Property, 7> kAllProperties = {
    Property::kNoun,           Property::kVerb, Property::kAdjective, Property::kPronoun,
    Property::kSentenceLength, Property::kMtld, Property::kTopicJsd,
};

// "noun", "verb", "adjective", "pronoun", "sentence_length", "mtld", "topic_jsd".
std::string_view property_name(Property p);
Property parse_property(std::string_view name);
// POS group counted by a frequency property; kOther for the rest.
lingpipe::PosGroup property_group(Property p);
// Part-of-speech counts and sentence length.
bool is_low_level(Property p);

enum class XUnit { kSentence, kChunk, kChunkPair };
std::string_view x_unit_name(XUnit u);

struct TimeSeries {
  std::string doc_id;
  Property property = Property::kNoun;
  XUnit x_unit = XUnit::kSentence;
  std::vector<double> values;
};

TimeSeries pos_frequency_series(const lingpipe::TaggedDocument& doc, lingpipe::PosGroup group);
TimeSeries sentence_length_series(const lingpipe::TaggedDocument& doc);

inline constexpr double kDefaultTtrThreshold = 0.72;
inline constexpr std::size_t kDefaultMtldChunk = 100;

// Case-folded word tokens with punctuation removed: the stream MTLD sees.
std::vector<std::string> mtld_tokens(std::span<const std::string> tokens);
std::vector<std::string> mtld_tokens(const lingpipe::TaggedDocument& doc);

// Bidirectional MTLD over the normalized tokens. A direction with no
// completed factor and full type-token ratio is worth the token count; no
// direction is worth more than the token count.
double mtld(std::span<const std::string> tokens, double ttr_threshold = kDefaultTtrThreshold);

// MTLD of consecutive non-overlapping blocks of the normalized word stream.
TimeSeries mtld_series(const lingpipe::TaggedDocument& doc,
                       std::size_t chunk_tokens = kDefaultMtldChunk,
                       double ttr_threshold = kDefaultTtrThreshold);

// JSD between the inferred topic mixtures of adjacent chunks. Chunk i is
// inferred with derive_seed(seed, doc_id, i).
struct TopicSeries {
  TimeSeries series;
  std::vector<topicmodel::TopicDistribution> thetas;
};
TopicSeries topic_jsd_series(const lingpipe::TaggedDocument& doc,
                             const topicmodel::TopicModel& model,
                             const topicmodel::Vocabulary& vocab,
                             const topicmodel::Stopwords& stopwords, std::uint64_t seed,
                             std::size_t chunk_tokens = topicmodel::kDefaultChunkTokens,
                             int infer_sweeps = 50, int infer_burn_in = 20);

}  // namespace fractext::series

#endif  // FRACTEXT_SERIES_HPP_
