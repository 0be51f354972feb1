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
#include <array>
#include <mutex>
#include <set>
#include <string>

#include <spdlog/spdlog.h>

#include "fractext/lingpipe.hpp"
#include "utf8.hpp"

namespace fractext::lingpipe {
namespace {

constexpr std::array<std::string_view, 36> kWordTags = {
    "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS", "MD", "NN",
    "NNS", "NNP", "NNPS", "PDT", "POS", "PRP", "PRP$", "RB", "RBR", "RBS", "RP", "SYM",
    "TO", "UH", "VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "WDT", "WP", "WP$", "WRB",
};

constexpr std::array<std::string_view, 13> kPunctuationTags = {
    ".", ",", ":", "``", "''", "\"", "(", ")", "-LRB-", "-RRB-", "#", "$", "HYPH",
};

}  // namespace

std::size_t TaggedDocument::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.tokens.size();
  return n;
}

bool is_punctuation_tag(std::string_view tag) {
  return std::find(kPunctuationTags.begin(), kPunctuationTags.end(), tag) !=
         kPunctuationTags.end();
}

bool is_penn_tag(std::string_view tag) {
  return is_punctuation_tag(tag) ||
         std::find(kWordTags.begin(), kWordTags.end(), tag) != kWordTags.end();
}

bool is_punctuation(std::string_view surface) {
  if (surface.empty()) return false;
  for (std::size_t i = 0; i < surface.size(); i += utf8::length_at(surface, i)) {
    if (utf8::is_wordish(utf8::decode_at(surface, i))) return false;
  }
  return true;
}

PosGroup group_tag(std::string_view tag) {
  if (tag == "NN" || tag == "NNS" || tag == "NNP" || tag == "NNPS") return PosGroup::kNoun;
  if (tag == "VB" || tag == "VBD" || tag == "VBG" || tag == "VBN" || tag == "VBP" ||
      tag == "VBZ") {
    return PosGroup::kVerb;
  }
  if (tag == "JJ" || tag == "JJR" || tag == "JJS") return PosGroup::kAdjective;
  if (tag == "PRP" || tag == "PRP$") return PosGroup::kPronoun;
  if (!is_penn_tag(tag)) {
    static std::mutex mu;
    static std::set<std::string, std::less<>> reported;
    std::lock_guard lock(mu);
    if (reported.emplace(tag).second) {
      spdlog::warn("unknown tag '{}' grouped as Other", tag);
    }
  }
  return PosGroup::kOther;
}

std::string_view group_name(PosGroup g) {
  switch (g) {
    case PosGroup::kNoun: return "noun";
    case PosGroup::kVerb: return "verb";
    case PosGroup::kAdjective: return "adjective";
    case PosGroup::kPronoun: return "pronoun";
    case PosGroup::kOther: return "other";
  }
  return "other";
}

}  // namespace fractext::lingpipe
