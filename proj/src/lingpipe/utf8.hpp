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

// Minimal UTF-8 helpers for the tokenizer and splitter. Input is assumed to be
// valid UTF-8 (checked at load time).

#ifndef FRACTEXT_SRC_LINGPIPE_UTF8_HPP_
#define FRACTEXT_SRC_LINGPIPE_UTF8_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace fractext::lingpipe::utf8 {

inline std::size_t length_at(std::string_view s, std::size_t i) {
  const auto c = static_cast<unsigned char>(s[i]);
  std::size_t len = 1;
  if (c >= 0xF0) len = 4;
  else if (c >= 0xE0) len = 3;
  else if (c >= 0xC0) len = 2;
  return i + len <= s.size() ? len : s.size() - i;
}

inline char32_t decode_at(std::string_view s, std::size_t i) {
  const std::size_t len = length_at(s, i);
  const auto c = static_cast<unsigned char>(s[i]);
  if (len == 1) return c;
  char32_t cp = c & (0x7F >> len);
  for (std::size_t k = 1; k < len; ++k) {
    cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
  }
  return cp;
}

// Start of the code point that ends just before byte i.
inline std::size_t previous_start(std::string_view s, std::size_t i) {
  if (i == 0) return 0;
  std::size_t j = i - 1;
  while (j > 0 && (static_cast<unsigned char>(s[j]) & 0xC0) == 0x80) --j;
  return j;
}

inline bool is_space(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' ||
         cp == '\v' || cp == 0xA0;
}

// Letters and digits: ASCII alphanumerics plus anything non-ASCII outside
// the Latin-1 and general punctuation blocks.
inline bool is_wordish(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
  }
  if (cp >= 0xA0 && cp <= 0xBF) return false;
  if (cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x206F) return false;
  return true;
}

inline bool is_upper(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return true;
  // Latin-1 and Latin Extended-A capitals.
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return true;
  if (cp >= 0x100 && cp <= 0x17F) return (cp & 1) == 0;
  return false;
}

inline constexpr char32_t kLeftSingle = 0x2018;
inline constexpr char32_t kRightSingle = 0x2019;
inline constexpr char32_t kLeftDouble = 0x201C;
inline constexpr char32_t kRightDouble = 0x201D;
inline constexpr char32_t kEmDash = 0x2014;
inline constexpr char32_t kEllipsis = 0x2026;

}  // namespace fractext::lingpipe::utf8

#endif  // FRACTEXT_SRC_LINGPIPE_UTF8_HPP_
