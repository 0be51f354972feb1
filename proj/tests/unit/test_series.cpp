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


#include <fstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "fractext/error.hpp"
#include "fractext/lingpipe.hpp"
#include "fractext/random.hpp"
#include "fractext/series.hpp"
#include "fractext/stats.hpp"
#include "fractext/topicmodel.hpp"

namespace lp = fractext::lingpipe;
namespace se = fractext::series;
namespace lda = fractext::topicmodel;

namespace {

lp::TaggedDocument slash_doc(const std::vector<std::vector<std::string>>& sentences) {
  lp::TaggedDocument doc;
  doc.meta.id = "doc";
  for (const auto& s : sentences) {
    lp::Sentence out;
    for (const auto& t : s) out.tokens.push_back(lp::parse_slash_token(t));
    doc.sentences.push_back(out);
  }
  return doc;
}

// One sentence per `width` words, every word tagged NN.
lp::TaggedDocument word_doc(const std::vector<std::string>& words, std::size_t width = 10) {
  lp::TaggedDocument doc;
  doc.meta.id = "words";
  for (std::size_t i = 0; i < words.size(); i += width) {
    lp::Sentence s;
    for (std::size_t j = i; j < std::min(words.size(), i + width); ++j) {
      s.tokens.push_back({words[j], "NN"});
    }
    doc.sentences.push_back(s);
  }
  return doc;
}

lp::TaggedDocument gold_doc() {
  std::ifstream in(std::string(FRACTEXT_FIXTURE_DIR) + "/pos_gold.tsv");
  lp::TaggedDocument doc;
  doc.meta.id = "gold";
  doc.sentences = lp::read_pretagged(in);
  return doc;
}

std::vector<std::string> gold_words() {
  std::vector<std::string> out;
  for (const auto& s : gold_doc().sentences) {
    for (const auto& t : s.tokens) out.push_back(t.surface);
  }
  return out;
}

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("part-of-speech counts per sentence") {
    const auto doc =
        slash_doc({{"The/DT", "dog/NN", "sleeps/VBZ", "./."}, {"Dogs/NNS", "bark/VBP", "./."}});
    CHECK(se::pos_frequency_series(doc, lp::PosGroup::kNoun).values ==
          std::vector<double>{1, 1});
    CHECK(se::pos_frequency_series(doc, lp::PosGroup::kPronoun).values ==
          std::vector<double>{0, 0});
    CHECK(se::pos_frequency_series(doc, lp::PosGroup::kVerb).values ==
          std::vector<double>{1, 1});
    CHECK_THROWS_AS(se::pos_frequency_series(doc, lp::PosGroup::kOther), fractext::UsageError);
  }

  TEST_CASE("part-of-speech counts match a recount on the gold fixture") {
    const auto doc = gold_doc();
    const auto nouns = se::pos_frequency_series(doc, lp::PosGroup::kNoun).values;
    const auto adjs = se::pos_frequency_series(doc, lp::PosGroup::kAdjective).values;
    REQUIRE(nouns.size() == doc.sentences.size());
    for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
      double n = 0, a = 0;
      for (const auto& t : doc.sentences[i].tokens) {
        if (t.tag.rfind("NN", 0) == 0) ++n;
        if (t.tag == "JJ" || t.tag == "JJR" || t.tag == "JJS") ++a;
      }
      CHECK(nouns[i] == n);
      CHECK(adjs[i] == a);
    }
  }

  TEST_CASE("sentence length") {
    const auto doc = slash_doc({{"The/DT", "dog/NN", "sleeps/VBZ", "./."}, {"Go/VB"}});
    CHECK(se::sentence_length_series(doc).values == std::vector<double>{4, 1});
    const auto gold = gold_doc();
    const auto len = se::sentence_length_series(gold).values;
    const auto nouns = se::pos_frequency_series(gold, lp::PosGroup::kNoun).values;
    CHECK(fractext::stats::spearman(len, nouns) > 0.5);
    CHECK_THROWS_AS(se::sentence_length_series(lp::TaggedDocument{}), fractext::DataError);
  }

  TEST_CASE("MTLD hand-traced cases") {
    const std::vector<std::string> same(10, "a");
    CHECK(se::mtld(same) == doctest::Approx(2.0).epsilon(1e-12));
    std::vector<std::string> distinct;
    for (int i = 0; i < 100; ++i) distinct.push_back("w" + std::to_string(i));
    CHECK(se::mtld(distinct) == 100.0);
    // Punctuation is not a word and case is folded.
    CHECK(se::mtld(std::vector<std::string>{"A", ",", "a", "a", "a"}) ==
          se::mtld(std::vector<std::string>{"a", "a", "a", "a"}));
    CHECK_THROWS_AS(se::mtld(std::vector<std::string>{",", "."}), fractext::DataError);
    CHECK_THROWS_AS(se::mtld(same, 1.0), fractext::UsageError);
  }

  TEST_CASE("MTLD is stable when the text is doubled") {
    const auto words = gold_words();
    auto twice = words;
    twice.insert(twice.end(), words.begin(), words.end());
    const double once = se::mtld(words);
    CHECK(std::abs(se::mtld(twice) - once) <= 0.05 * once);
  }

  TEST_CASE("MTLD series") {
    std::vector<std::string> words;
    fractext::Rng rng(3);
    for (int i = 0; i < 1050; ++i) words.push_back("w" + std::to_string(rng.below(120)));
    const auto doc = word_doc(words);
    const auto s = se::mtld_series(doc, 100);
    REQUIRE(s.values.size() == 10);
    for (std::size_t c = 0; c < 10; ++c) {
      const std::vector<std::string> block(words.begin() + c * 100, words.begin() + (c + 1) * 100);
      CHECK(s.values[c] == se::mtld(block));
    }
    std::vector<std::string> repeated;
    for (int c = 0; c < 5; ++c) repeated.insert(repeated.end(), words.begin(), words.begin() + 100);
    const auto flat = se::mtld_series(word_doc(repeated), 100).values;
    for (double v : flat) CHECK(v == flat.front());
    CHECK_THROWS_AS(se::mtld_series(word_doc(std::vector<std::string>(150, "x")), 100),
                    fractext::DataError);
  }

  TEST_CASE("property names") {
    for (auto p : se::kAllProperties) CHECK(se::parse_property(se::property_name(p)) == p);
    CHECK(se::property_name(se::Property::kTopicJsd) == "topic_jsd");
    CHECK(se::is_low_level(se::Property::kSentenceLength));
    CHECK_FALSE(se::is_low_level(se::Property::kMtld));
    CHECK_THROWS_AS(se::parse_property("colour"), fractext::UsageError);
  }

  TEST_CASE("topic divergence series") {
    // Two topics with disjoint vocabularies, five chunks alternating between them.
    std::vector<std::string> vocab_terms;
    for (int t = 0; t < 2; ++t) {
      for (int i = 0; i < 20; ++i) vocab_terms.push_back(std::string(1, char('p' + t)) + "w" +
                                                         std::to_string(i));
    }
    const auto vocab = lda::Vocabulary::from_terms(vocab_terms);
    std::vector<lda::Chunk> train;
    fractext::Rng rng(9);
    for (int c = 0; c < 40; ++c) {
      lda::Chunk chunk;
      for (int i = 0; i < 100; ++i) chunk.push_back((c % 2) * 20 + int(rng.below(20)));
      train.push_back(chunk);
    }
    lda::LdaConfig config;
    config.topics = 2;
    config.iterations = 100;
    const auto model = lda::train_lda(train, int(vocab.size()), config);

    std::vector<std::string> words;
    for (int c = 0; c < 5; ++c) {
      for (int i = 0; i < 100; ++i) words.push_back(vocab.term((c % 2) * 20 + int(rng.below(20))));
    }
    const auto doc = word_doc(words);
    const auto& stop = lda::Stopwords::defaults();
    const auto out = se::topic_jsd_series(doc, model, vocab, stop, 77, 100);
    REQUIRE(out.series.values.size() == 4);
    REQUIRE(out.thetas.size() == 5);
    const auto chunks = lda::segment_chunks(doc, vocab, stop, 100);
    for (std::size_t i = 0; i < 4; ++i) {
      const auto a = lda::infer_theta(model, chunks[i], fractext::derive_seed(77, "words", i));
      const auto b = lda::infer_theta(model, chunks[i + 1], fractext::derive_seed(77, "words", i + 1));
      CHECK(out.series.values[i] == lda::jsd(a, b));
      // Adjacent chunks come from different topics.
      CHECK(out.series.values[i] > 0.1);
    }
  }
}
