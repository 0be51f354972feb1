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
#include <string>

#include "fractext/lingpipe.hpp"
#include "utf8.hpp"

namespace fractext::lingpipe {
namespace {

bool is_opening(char32_t cp) {
  return cp == '"' || cp == '\'' || cp == '`' || cp == '(' || cp == '[' || cp == '{' ||
         cp == utf8::kLeftSingle || cp == utf8::kLeftDouble || cp == 0xAB || cp == '_';
}

bool is_trailing(char32_t cp) {
  return cp == '"' || cp == '\'' || cp == ')' || cp == ']' || cp == '}' || cp == ',' ||
         cp == ';' || cp == ':' || cp == '!' || cp == '?' || cp == '_' ||
         cp == utf8::kRightSingle || cp == utf8::kRightDouble || cp == 0xBB;
}

// Split anywhere inside a word.
bool is_always_split(char32_t cp) {
  return cp == ';' || cp == '!' || cp == '?' || cp == '(' || cp == ')' || cp == '[' ||
         cp == ']' || cp == '{' || cp == '}' || cp == '"' || cp == '$' || cp == '%' ||
         cp == '#' || cp == '@' || cp == utf8::kLeftDouble || cp == utf8::kRightDouble ||
         cp == utf8::kEmDash || cp == utf8::kEllipsis;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool iequals_suffix(std::string_view word, std::string_view suffix) {
  if (word.size() < suffix.size()) return false;
  const auto tail = word.substr(word.size() - suffix.size());
  for (std::size_t i = 0; i < tail.size(); ++i) {
    char a = tail[i];
    if (a >= 'A' && a <= 'Z') a = static_cast<char>(a - 'A' + 'a');
    if (a != suffix[i]) return false;
  }
  return true;
}

void emit(std::vector<Token>& out, std::string_view s) {
  if (!s.empty()) out.push_back(Token{std::string(s), {}});
}

// Splits "don't" -> "do" "n't", "he's" -> "he" "'s", "cannot" -> "can" "not".
void emit_word(std::vector<Token>& out, std::string_view word) {
  static constexpr std::string_view kApostrophes[] = {"'", "\xE2\x80\x99"};
  for (auto apos : kApostrophes) {
    const std::string nt = std::string("n") + std::string(apos) + "t";
    if (word.size() > nt.size() && iequals_suffix(word, nt)) {
      emit(out, word.substr(0, word.size() - nt.size()));
      emit(out, word.substr(word.size() - nt.size()));
      return;
    }
    for (std::string_view clitic : {"s", "re", "ve", "ll", "d", "m"}) {
      const std::string suffix = std::string(apos) + std::string(clitic);
      if (word.size() > suffix.size() && iequals_suffix(word, suffix)) {
        emit(out, word.substr(0, word.size() - suffix.size()));
        emit(out, word.substr(word.size() - suffix.size()));
        return;
      }
    }
  }
  if (word.size() == 6 && iequals_suffix(word, "cannot")) {
    emit(out, word.substr(0, 3));
    emit(out, word.substr(3));
    return;
  }
  emit(out, word);
}

// Splits the interior of a chunk on punctuation that never belongs to a word.
void emit_core(std::vector<Token>& out, std::string_view core) {
  std::size_t start = 0;
  std::size_t i = 0;
  auto flush = [&](std::size_t end) {
    if (end > start) emit_word(out, core.substr(start, end - start));
  };
  while (i < core.size()) {
    const char32_t cp = utf8::decode_at(core, i);
    const std::size_t len = utf8::length_at(core, i);
    if (core.compare(i, 3, "...") == 0) {
      flush(i);
      std::size_t j = i;
      while (j < core.size() && core[j] == '.') ++j;
      emit(out, core.substr(i, j - i));
      start = i = j;
      continue;
    }
    if (core.compare(i, 2, "--") == 0) {
      flush(i);
      std::size_t j = i;
      while (j < core.size() && core[j] == '-') ++j;
      emit(out, core.substr(i, j - i));
      start = i = j;
      continue;
    }
    bool split = is_always_split(cp);
    if (!split && (cp == ',' || cp == ':')) {
      // Kept inside numbers: 1,000 and 10:30.
      split = !(i > 0 && i + 1 < core.size() && is_digit(core[i - 1]) && is_digit(core[i + 1]));
    }
    if (split) {
      flush(i);
      emit(out, core.substr(i, len));
      start = i + len;
    }
    i += len;
  }
  flush(core.size());
}

void tokenize_chunk(std::vector<Token>& out, std::string_view chunk, bool last) {
  // Leading punctuation.
  while (!chunk.empty()) {
    if (chunk.starts_with("--")) {
      std::size_t j = 0;
      while (j < chunk.size() && chunk[j] == '-') ++j;
      emit(out, chunk.substr(0, j));
      chunk.remove_prefix(j);
      continue;
    }
    const char32_t cp = utf8::decode_at(chunk, 0);
    const std::size_t len = utf8::length_at(chunk, 0);
    if (len == chunk.size()) break;
    if (is_opening(cp) || cp == utf8::kEmDash) {
      emit(out, chunk.substr(0, len));
      chunk.remove_prefix(len);
      continue;
    }
    break;
  }
  // Trailing punctuation, collected back to front.
  std::vector<std::string_view> tail;
  while (!chunk.empty()) {
    if (chunk.size() > 3 && chunk.ends_with("...")) {
      std::size_t j = chunk.size();
      while (j > 0 && chunk[j - 1] == '.') --j;
      if (j == 0) break;
      tail.push_back(chunk.substr(j));
      chunk = chunk.substr(0, j);
      continue;
    }
    const std::size_t p = utf8::previous_start(chunk, chunk.size());
    if (p == 0) break;
    const char32_t cp = utf8::decode_at(chunk, p);
    if (is_trailing(cp) || cp == utf8::kEmDash || cp == utf8::kEllipsis) {
      // Keep clitics such as "'s" attached for emit_word.
      tail.push_back(chunk.substr(p));
      chunk = chunk.substr(0, p);
      continue;
    }
    if (cp == '.' && last && chunk[p - 1] != '.') {
      tail.push_back(chunk.substr(p));
      chunk = chunk.substr(0, p);
      continue;
    }
    break;
  }
  emit_core(out, chunk);
  for (auto it = tail.rbegin(); it != tail.rend(); ++it) emit(out, *it);
}

}  // namespace

std::vector<Token> tokenize(std::string_view sentence) {
  std::vector<std::string_view> chunks;
  std::size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && utf8::is_space(utf8::decode_at(sentence, i))) {
      i += utf8::length_at(sentence, i);
    }
    const std::size_t start = i;
    while (i < sentence.size() && !utf8::is_space(utf8::decode_at(sentence, i))) {
      i += utf8::length_at(sentence, i);
    }
    if (i > start) chunks.push_back(sentence.substr(start, i - start));
  }
  std::vector<Token> out;
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    tokenize_chunk(out, chunks[c], c + 1 == chunks.size());
  }
  return out;
}

}  // namespace fractext::lingpipe
