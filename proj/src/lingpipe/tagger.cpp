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
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "fractext/error.hpp"
#include "fractext/lingpipe.hpp"
#include "utf8.hpp"

namespace fractext::lingpipe {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool has_upper_initial(std::string_view w) {
  return !w.empty() && utf8::is_upper(utf8::decode_at(w, 0));
}

bool has_letter(std::string_view w) {
  return std::any_of(w.begin(), w.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || static_cast<unsigned char>(c) >= 0x80;
  });
}

bool looks_numeric(std::string_view w) {
  bool digit = false;
  for (char c : w) {
    if (c >= '0' && c <= '9') {
      digit = true;
    } else if (c != ',' && c != '.' && c != '-' && c != '/' && c != ':' && c != '%') {
      return false;
    }
  }
  return digit;
}

std::string punctuation_tag(std::string_view w) {
  if (w == "." || w == "!" || w == "?" || w == "?!" || w == "!?") return ".";
  if (w == ",") return ",";
  if (w == "(" || w == "[" || w == "{") return "(";
  if (w == ")" || w == "]" || w == "}") return ")";
  if (w == "\"" || w == "'") return "\"";
  if (w == "`" || w == "``" || w == "\xE2\x80\x9C" || w == "\xE2\x80\x98") return "``";
  if (w == "''" || w == "\xE2\x80\x9D" || w == "\xE2\x80\x99") return "''";
  if (w == "$") return "$";
  if (w == "#") return "#";
  if (w.find_first_not_of(".!?") == std::string_view::npos) return ":";
  if (w == ";" || w == ":" || w.find_first_not_of('-') == std::string_view::npos ||
      w == "\xE2\x80\x94" || w == "\xE2\x80\x93" || w == "\xE2\x80\xA6") {
    return ":";
  }
  return "SYM";
}

struct Counted {
  std::map<std::string, long> counts;
  std::vector<std::string> order;

  void add(const std::string& tag, long n) {
    if (!counts.contains(tag)) order.push_back(tag);
    counts[tag] += n;
  }
  std::string best() const {
    std::string tag;
    long top = -1;
    for (const auto& t : order) {
      if (counts.at(t) > top) {
        top = counts.at(t);
        tag = t;
      }
    }
    return tag;
  }
};

bool is_be_or_have(std::string_view w) {
  static constexpr std::string_view kForms[] = {
      "be", "is", "am", "are", "was", "were", "been", "being", "has", "have", "had",
      "having", "'s", "'ve", "'d", "'re", "\xE2\x80\x99s", "\xE2\x80\x99ve", "\xE2\x80\x99" "d",
      "get", "got", "gets", "gotten"};
  const auto l = lower(w);
  return std::find(std::begin(kForms), std::end(kForms), l) != std::end(kForms);
}

}  // namespace

std::filesystem::path LexiconTagger::default_lexicon_path() {
  return std::filesystem::path(FRACTEXT_DATA_DIR) / "lexicon" / "en-frequency-lexicon.tsv";
}

std::unique_ptr<LexiconTagger> LexiconTagger::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open lexicon {}", path.string()));
  auto tagger = std::unique_ptr<LexiconTagger>(new LexiconTagger());
  std::unordered_map<std::string, Counted> folded;
  std::unordered_map<std::string, Counted> suffixes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw DataError(fmt::format("{}:{}: expected word<TAB>tags", path.string(), line_no));
    }
    const std::string word = line.substr(0, tab);
    std::istringstream fields(line.substr(tab + 1));
    Counted entry;
    std::string tag;
    long count = 0;
    while (fields >> tag >> count) {
      // Ambiguity classes such as "NN|JJ" count toward their first member.
      tag = tag.substr(0, tag.find('|'));
      if (!is_penn_tag(tag) || count <= 0) continue;
      entry.add(tag, count);
    }
    if (entry.order.empty()) continue;
    const std::string best = entry.best();
    tagger->exact_.emplace(word, best);
    auto& f = folded[lower(word)];
    for (const auto& t : entry.order) f.add(t, entry.counts.at(t));
    if (!has_upper_initial(word) && word.size() >= 4 && has_letter(word)) {
      for (std::size_t len = 1; len <= 4 && len < word.size(); ++len) {
        suffixes[word.substr(word.size() - len)].add(best, 1);
      }
    }
  }
  if (tagger->exact_.empty()) throw DataError(fmt::format("lexicon {} is empty", path.string()));
  for (const auto& [w, c] : folded) tagger->folded_.emplace(w, c.best());
  for (const auto& [s, c] : suffixes) {
    long total = 0;
    for (const auto& [t, n] : c.counts) total += n;
    if (total >= 5) tagger->suffix_.emplace(s, c.best());
  }
  return tagger;
}

std::string LexiconTagger::guess_unknown(std::string_view word, bool sentence_initial) const {
  if (looks_numeric(word)) return "CD";
  if (is_punctuation(word)) return punctuation_tag(word);
  if (has_upper_initial(word) && !sentence_initial) {
    return "NNP";
  }
  const auto l = lower(word);
  if (l.find('-') != std::string::npos) {
    const auto head = l.substr(l.rfind('-') + 1);
    const auto it = folded_.find(head);
    if (it != folded_.end() && (it->second == "NNS" || it->second == "VBG")) return it->second;
    return "JJ";
  }
  for (std::size_t len = std::min<std::size_t>(4, l.size() - 1); len >= 1; --len) {
    const auto it = suffix_.find(l.substr(l.size() - len));
    if (it != suffix_.end()) return it->second;
  }
  return has_upper_initial(word) ? "NNP" : "NN";
}

std::string LexiconTagger::tag_word(std::string_view word, bool sentence_initial) const {
  const auto exact = exact_.find(std::string(word));
  if (exact != exact_.end()) return exact->second;
  const auto l = lower(word);
  const auto folded = folded_.find(l);
  if (folded != folded_.end()) {
    // An unseen capitalized form mid-sentence is more likely a name.
    if (!sentence_initial && has_upper_initial(word) && folded->second != "NNP") return "NNP";
    return folded->second;
  }
  return guess_unknown(word, sentence_initial);
}

void LexiconTagger::tag(std::vector<Token>& tokens) const {
  bool initial = true;
  for (auto& t : tokens) {
    t.tag = tag_word(t.surface, initial);
    // Words after opening quotes or brackets still start the sentence.
    if (initial && !is_punctuation(t.surface)) initial = false;
  }
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    auto& cur = tokens[i];
    const auto& prev = tokens[i - 1];
    const auto prev_word = lower(prev.surface);
    // Infinitives and modal complements take the base form.
    if ((prev.tag == "TO" || prev.tag == "MD") &&
        (cur.tag == "NN" || cur.tag == "VBP" || cur.tag == "VBD")) {
      const auto l = lower(cur.surface);
      if (cur.tag == "VBP" || folded_.contains(l)) {
        if (cur.tag != "NN" || l.size() > 2) cur.tag = "VB";
      }
    }
    // Past participles after forms of "be" and "have".
    if (cur.tag == "VBD") {
      for (std::size_t back = 1; back <= 3 && back <= i; ++back) {
        const auto& p = tokens[i - back];
        if (is_be_or_have(p.surface)) {
          cur.tag = "VBN";
          break;
        }
        if (p.tag != "RB" && p.tag != "PRP" && p.tag != "NNP" && p.tag != "NN") break;
      }
    }
    // Determiners and possessives are followed by nominals, not base verbs.
    if ((prev.tag == "DT" || prev.tag == "PRP$" || prev.tag == "POS") &&
        (cur.tag == "VB" || cur.tag == "VBP")) {
      cur.tag = "NN";
    }
    // Pronoun subjects before ambiguous noun/verb forms.
    if (prev.tag == "PRP" && (prev_word == "i" || prev_word == "we" || prev_word == "you" ||
                              prev_word == "they")) {
      if (cur.tag == "NN" || cur.tag == "VB") cur.tag = "VBP";
    }
    if (prev.tag == "PRP" && (prev_word == "he" || prev_word == "she" || prev_word == "it")) {
      if (cur.tag == "NNS") cur.tag = "VBZ";
    }
    // "'s" after a pronoun or "there"/"that" is a verb, not a possessive.
    if ((cur.surface == "'s" || cur.surface == "\xE2\x80\x99s") &&
        (prev.tag == "PRP" || prev.tag == "EX" || prev_word == "that" || prev_word == "what" ||
         prev_word == "who" || prev_word == "where" || prev_word == "here")) {
      cur.tag = "VBZ";
    }
  }
}

void PretaggedBackend::tag(std::vector<Token>& tokens) const {
  for (const auto& t : tokens) {
    if (!t.tagged()) {
      throw DataError(fmt::format("token '{}' has no tag in pre-tagged input", t.surface));
    }
    if (!is_penn_tag(t.tag)) {
      throw DataError(fmt::format("unknown tag '{}' on token '{}'", t.tag, t.surface));
    }
  }
}

void pos_tag(std::vector<Token>& tokens, const TaggerBackend& tagger) {
  bool any_untagged = false;
  for (const auto& t : tokens) {
    if (t.tagged() && !is_penn_tag(t.tag)) {
      throw DataError(fmt::format("unknown tag '{}' on token '{}'", t.tag, t.surface));
    }
    any_untagged = any_untagged || !t.tagged();
  }
  if (!any_untagged) return;
  std::vector<Token> work = tokens;
  for (auto& t : work) t.tag.clear();
  tagger.tag(work);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!tokens[i].tagged()) tokens[i].tag = work[i].tag;
  }
}

Token parse_slash_token(std::string_view text) {
  const auto slash = text.rfind('/');
  if (slash == std::string_view::npos || slash == 0 || slash + 1 == text.size()) {
    throw DataError(fmt::format("expected surface/TAG, got '{}'", text));
  }
  Token t{std::string(text.substr(0, slash)), std::string(text.substr(slash + 1))};
  if (!is_penn_tag(t.tag)) {
    throw DataError(fmt::format("unknown tag '{}' on token '{}'", t.tag, t.surface));
  }
  return t;
}

std::vector<Sentence> read_pretagged(std::istream& in) {
  std::vector<Sentence> sentences;
  Sentence current;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (!current.tokens.empty()) sentences.push_back(std::move(current));
      current = Sentence{};
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size() ||
        line.find('\t', tab + 1) != std::string::npos) {
      throw DataError(fmt::format("pre-tagged line {}: expected surface<TAB>tag", line_no));
    }
    Token t{line.substr(0, tab), line.substr(tab + 1)};
    if (!is_penn_tag(t.tag)) {
      throw DataError(fmt::format("pre-tagged line {}: unknown tag '{}'", line_no, t.tag));
    }
    current.tokens.push_back(std::move(t));
  }
  if (!current.tokens.empty()) sentences.push_back(std::move(current));
  return sentences;
}

void write_pretagged(std::ostream& out, const std::vector<Sentence>& sentences) {
  for (const auto& s : sentences) {
    for (const auto& t : s.tokens) out << t.surface << '\t' << t.tag << '\n';
    out << '\n';
  }
}

TaggedDocument tag_document(const corpus::DocumentMeta& meta, std::string_view text,
                            const TaggerBackend& tagger, const Abbreviations& abbreviations) {
  TaggedDocument doc;
  doc.meta = meta;
  for (const auto& s : split_sentences(text, abbreviations)) {
    auto tokens = tokenize(s);
    if (tokens.empty()) continue;
    pos_tag(tokens, tagger);
    doc.sentences.push_back(Sentence{std::move(tokens)});
  }
  return doc;
}

}  // namespace fractext::lingpipe
