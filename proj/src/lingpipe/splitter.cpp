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

#include <fmt/format.h>

#include "fractext/error.hpp"
#include "fractext/lingpipe.hpp"
#include "utf8.hpp"

namespace fractext::lingpipe {
namespace {

// Keep in sync with data/lexicon/abbreviations-en.txt.
constexpr std::string_view kDefaultVersion = "en-1";
constexpr std::string_view kDefaultAbbreviations[] = {
    "mr",   "mrs",  "ms",   "messrs", "mme",  "mlle", "dr",   "st",   "jr",     "sr",
    "prof", "rev",  "hon",  "gen",    "col",  "capt", "lt",   "sgt",  "maj",    "cmdr",
    "adm",  "gov",  "sen",  "rep",    "esq",  "mt",   "ft",   "ave",  "blvd",   "rd",
    "vol",  "vols", "ch",   "chap",   "pp",   "fig",  "figs", "eq",   "etc",    "vs",
    "cf",   "al",   "ed",   "eds",    "viz",  "approx", "dept", "inc", "ltd",   "co",
    "corp", "bros", "jan",  "feb",    "apr",  "jun",  "jul",  "aug",  "sept",   "oct",
    "nov",  "dec",
};

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool is_closing(char32_t cp) {
  return cp == '"' || cp == '\'' || cp == ')' || cp == ']' || cp == '}' ||
         cp == utf8::kRightSingle || cp == utf8::kRightDouble || cp == 0xBB;
}

bool is_opening(char32_t cp) {
  return cp == '"' || cp == '\'' || cp == '(' || cp == '[' || cp == '_' ||
         cp == utf8::kLeftSingle || cp == utf8::kLeftDouble || cp == 0xAB;
}

std::string_view trim(std::string_view s) {
  std::size_t a = 0;
  while (a < s.size() && utf8::is_space(utf8::decode_at(s, a))) a += utf8::length_at(s, a);
  std::size_t b = s.size();
  while (b > a) {
    const auto p = utf8::previous_start(s, b);
    if (!utf8::is_space(utf8::decode_at(s, p))) break;
    b = p;
  }
  return s.substr(a, b - a);
}

// The word that ends at byte `end` (exclusive), without leading opening
// punctuation.
std::string_view word_before(std::string_view s, std::size_t end) {
  std::size_t start = end;
  while (start > 0) {
    const auto p = utf8::previous_start(s, start);
    if (utf8::is_space(utf8::decode_at(s, p))) break;
    start = p;
  }
  while (start < end && !utf8::is_wordish(utf8::decode_at(s, start))) {
    start += utf8::length_at(s, start);
  }
  return s.substr(start, end - start);
}

bool period_ends_sentence(std::string_view word, const Abbreviations& abbreviations) {
  if (word.empty()) return true;
  // Single-letter initial such as "J." in "J. Smith".
  if (utf8::length_at(word, 0) == word.size() && utf8::is_wordish(utf8::decode_at(word, 0))) {
    return false;
  }
  // Dotted acronyms: "U.S", "e.g", "i.e".
  if (word.find('.') != std::string_view::npos) return false;
  return !abbreviations.contains(ascii_lower(word));
}

void split_paragraph(std::string_view para, const Abbreviations& abbreviations,
                     std::vector<std::string>& out) {
  std::size_t start = 0;
  std::size_t i = 0;
  const std::size_t n = para.size();
  while (i < n) {
    const char c = para[i];
    if (c != '.' && c != '!' && c != '?') {
      i += utf8::length_at(para, i);
      continue;
    }
    std::size_t j = i;
    while (j < n && (para[j] == '.' || para[j] == '!' || para[j] == '?')) ++j;
    const bool lone_period = (j - i == 1 && c == '.');
    std::size_t end = j;
    while (end < n && is_closing(utf8::decode_at(para, end))) end += utf8::length_at(para, end);
    std::size_t k = end;
    while (k < n && utf8::is_space(utf8::decode_at(para, k))) k += utf8::length_at(para, k);
    bool boundary = k > end && k < n;
    if (boundary) {
      const char32_t next = utf8::decode_at(para, k);
      boundary = utf8::is_upper(next) || is_opening(next);
    }
    if (boundary && lone_period) {
      boundary = period_ends_sentence(word_before(para, i), abbreviations);
    }
    if (boundary) {
      const auto sentence = trim(para.substr(start, end - start));
      if (!sentence.empty()) out.emplace_back(sentence);
      start = k;
    }
    i = end > i ? end : i + 1;
  }
  const auto rest = trim(para.substr(start));
  if (!rest.empty()) out.emplace_back(rest);
}

}  // namespace

Abbreviations::Abbreviations(std::vector<std::string> words, std::string version)
    : version_(std::move(version)) {
  for (auto& w : words) words_.insert(ascii_lower(w));
}

const Abbreviations& Abbreviations::defaults() {
  static const Abbreviations instance = [] {
    std::vector<std::string> words(std::begin(kDefaultAbbreviations),
                                   std::end(kDefaultAbbreviations));
    return Abbreviations(std::move(words), std::string(kDefaultVersion));
  }();
  return instance;
}

Abbreviations Abbreviations::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open abbreviation list {}", path.string()));
  std::vector<std::string> words;
  std::string version = path.filename().string();
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      const auto body = trim(t.substr(1));
      if (body.starts_with("version:")) version = std::string(trim(body.substr(8)));
      continue;
    }
    std::string w(t);
    if (w.back() == '.') w.pop_back();
    words.push_back(std::move(w));
  }
  return Abbreviations(std::move(words), std::move(version));
}

bool Abbreviations::contains(std::string_view word) const {
  return words_.contains(std::string(word));
}

std::vector<std::string> split_sentences(std::string_view text,
                                         const Abbreviations& abbreviations) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    // Paragraphs end at a line that holds only whitespace.
    std::size_t para_end = text.size();
    std::size_t next = text.size() + 1;
    for (std::size_t nl = text.find('\n', pos); nl != std::string_view::npos;
         nl = text.find('\n', nl + 1)) {
      std::size_t k = nl + 1;
      while (k < text.size() && (text[k] == ' ' || text[k] == '\t' || text[k] == '\r')) ++k;
      if (k < text.size() && text[k] == '\n') {
        para_end = nl;
        next = k + 1;
        break;
      }
    }
    split_paragraph(text.substr(pos, para_end - pos), abbreviations, out);
    pos = next;
  }
  return out;
}

}  // namespace fractext::lingpipe
