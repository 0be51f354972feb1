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

// Sentence splitting, Penn Treebank style tokenization and part-of-speech
// tagging.

#ifndef FRACTEXT_LINGPIPE_HPP_
#define FRACTEXT_LINGPIPE_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fractext/corpus.hpp"

namespace fractext::lingpipe {

struct Token {
  std::string surface;
  // Penn Treebank tag; empty while untagged.
  std::string tag;

  bool tagged() const { return !tag.empty(); }
  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;
};

struct TaggedDocument {
  corpus::DocumentMeta meta;
  std::vector<Sentence> sentences;

  std::size_t token_count() const;
};

// ---------------------------------------------------------------------------
// Tagset

bool is_penn_tag(std::string_view tag);
// True for the punctuation tags . , : `` '' " ( ) -LRB- -RRB- # $ and friends.
bool is_punctuation_tag(std::string_view tag);
// Heuristic for untagged tokens: no letter or digit anywhere.
bool is_punctuation(std::string_view surface);

enum class PosGroup { kNoun, kVerb, kAdjective, kPronoun, kOther };

// Total: unknown tags map to kOther (and are logged once).
PosGroup group_tag(std::string_view tag);
std::string_view group_name(PosGroup g);

// ---------------------------------------------------------------------------
// Sentences and tokens

// Lower-case abbreviations without their final period ("mr", "e.g", "st").
class Abbreviations {
 public:
  static const Abbreviations& defaults();
  // One abbreviation per line, '#' comments; a "# version: X" line sets the
  // version string.
  static Abbreviations load(const std::filesystem::path& path);

  Abbreviations() = default;
  explicit Abbreviations(std::vector<std::string> words, std::string version = "custom");

  bool contains(std::string_view word) const;
  const std::string& version() const { return version_; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
  std::string version_;
};

// Boundaries fall after . ! ? (plus any closing quotes and brackets) when
// followed by whitespace and a capital letter, digit or opening quote. A period
// ending a listed abbreviation, a single-letter initial or a dotted acronym is
// not a boundary. Blank lines are always boundaries.
std::vector<std::string> split_sentences(std::string_view text,
                                         const Abbreviations& abbreviations =
                                             Abbreviations::defaults());

// Penn Treebank conventions: punctuation split off, the sentence-final period
// separated, "..." kept whole, "--" and em-dashes split, clitics n't 's 're
// 've 'll 'd 'm separated (straight or curly apostrophe). Quotes keep their
// surface form.
std::vector<Token> tokenize(std::string_view sentence);

// ---------------------------------------------------------------------------
// Tagging

class TaggerBackend {
 public:
  virtual ~TaggerBackend() = default;
  virtual std::string name() const = 0;
  // Assigns a tag to every token of one sentence. Must be safe to call
  // concurrently after construction.
  virtual void tag(std::vector<Token>& tokens) const = 0;
};

// Most-frequent-tag lexicon with suffix statistics for unknown words and a
// handful of contextual corrections.
class LexiconTagger : public TaggerBackend {
 public:
  // Lexicon lines: word<TAB>TAG count [TAG count ...]; '#' comments.
  static std::unique_ptr<LexiconTagger> load(const std::filesystem::path& path);
  static std::filesystem::path default_lexicon_path();

  std::string name() const override { return "lexicon"; }
  void tag(std::vector<Token>& tokens) const override;

  std::string tag_word(std::string_view word, bool sentence_initial) const;
  std::size_t size() const { return exact_.size(); }

 private:
  std::string guess_unknown(std::string_view word, bool sentence_initial) const;

  std::unordered_map<std::string, std::string> exact_;
  std::unordered_map<std::string, std::string> folded_;
  // suffix -> most frequent tag over lexicon words with that suffix
  std::unordered_map<std::string, std::string> suffix_;
};

// Backend for tokens that arrive with tags from an external tagger: tags are
// validated, never changed.
class PretaggedBackend : public TaggerBackend {
 public:
  std::string name() const override { return "pretagged"; }
  void tag(std::vector<Token>& tokens) const override;
};

// Pre-tagged tokens are validated and passed through; untagged ones go to the
// tagger. Throws DataError for tags outside the Penn tagset.
void pos_tag(std::vector<Token>& tokens, const TaggerBackend& tagger);

// "dog/NN" -> Token{"dog", "NN"}; the split is at the last slash.
Token parse_slash_token(std::string_view text);

// Vertical format: surface<TAB>tag per line, blank line between sentences.
std::vector<Sentence> read_pretagged(std::istream& in);
void write_pretagged(std::ostream& out, const std::vector<Sentence>& sentences);

// Cleaned text -> sentences -> tokens -> tags.
TaggedDocument tag_document(const corpus::DocumentMeta& meta, std::string_view text,
                            const TaggerBackend& tagger,
                            const Abbreviations& abbreviations = Abbreviations::defaults());

}  // namespace fractext::lingpipe

#endif  // FRACTEXT_LINGPIPE_HPP_
