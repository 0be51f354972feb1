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

#include "fractext/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "fractext/error.hpp"

namespace fractext::corpus {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

// Letters for the purposes of hyphen re-joining: ASCII alphanumerics and any
// byte of a multi-byte UTF-8 sequence.
bool wordish(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

std::string normalize_newlines(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  if (raw.starts_with("\xEF\xBB\xBF")) raw.remove_prefix(3);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '\r') {
      out.push_back('\n');
      if (i + 1 < raw.size() && raw[i + 1] == '\n') ++i;
    } else {
      out.push_back(raw[i]);
    }
  }
  return out;
}

std::string remove_marker_lines(const std::string& text, const CleanOptions& options) {
  std::string out;
  out.reserve(text.size());
  bool inside = false;
  std::size_t line_no = 0;
  std::size_t begin_line = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    const auto t = trim(line);
    if (t == options.exclude_begin) {
      if (inside) {
        throw DataError(fmt::format("nested {} at line {}", options.exclude_begin, line_no));
      }
      inside = true;
      begin_line = line_no;
      continue;
    }
    if (t == options.exclude_end) {
      if (!inside) {
        throw DataError(fmt::format("{} without matching {} at line {}",
                                    options.exclude_end, options.exclude_begin, line_no));
      }
      inside = false;
      // Keep a paragraph break where the region was.
      out += "\n\n";
      continue;
    }
    if (!inside) {
      out.append(line);
      out.push_back('\n');
    }
  }
  if (inside) {
    throw DataError(fmt::format("{} at line {} is never closed", options.exclude_begin, begin_line));
  }
  if (!out.empty()) out.pop_back();
  return out;
}

std::string remove_inline_markers(const std::string& text) {
  static constexpr std::string_view kOpen = "<EXCLUDE>";
  static constexpr std::string_view kClose = "</EXCLUDE>";
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (true) {
    const auto open = text.find(kOpen, pos);
    const auto stray = text.find(kClose, pos);
    if (stray != std::string::npos && stray < open) {
      throw DataError(fmt::format("{} without matching {} at byte {}", kClose, kOpen, stray));
    }
    if (open == std::string::npos) {
      out.append(text, pos);
      return out;
    }
    const auto close = text.find(kClose, open + kOpen.size());
    if (close == std::string::npos) {
      throw DataError(fmt::format("{} at byte {} is never closed", kOpen, open));
    }
    const auto nested = text.find(kOpen, open + kOpen.size());
    if (nested < close) {
      throw DataError(fmt::format("nested {} at byte {}", kOpen, nested));
    }
    out.append(text, pos, open - pos);
    pos = close + kClose.size();
  }
}

std::string rejoin_hyphens(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  const std::size_t n = text.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (text[i] == '-' && i > 0 && wordish(static_cast<unsigned char>(text[i - 1])) &&
        (i < 2 || text[i - 2] != '-')) {
      std::size_t j = i + 1;
      while (j < n && (text[j] == ' ' || text[j] == '\t')) ++j;
      if (j < n && text[j] == '\n') {
        std::size_t k = j + 1;
        while (k < n && (text[k] == ' ' || text[k] == '\t')) ++k;
        if (k < n && wordish(static_cast<unsigned char>(text[k]))) {
          i = k - 1;
          continue;
        }
      }
    }
    out.push_back(text[i]);
  }
  return out;
}

std::string join_paragraphs(const std::string& text) {
  std::vector<std::string> paragraphs;
  std::string current;
  bool open = false;
  for (std::string_view line : split(text, '\n')) {
    if (trim(line).empty()) {
      if (open) paragraphs.push_back(std::move(current));
      current.clear();
      open = false;
      continue;
    }
    if (open) {
      while (!current.empty() && (current.back() == ' ' || current.back() == '\t')) current.pop_back();
      while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
      current.push_back(' ');
    }
    current.append(line);
    open = true;
  }
  if (open) paragraphs.push_back(std::move(current));
  std::string out;
  for (std::size_t i = 0; i < paragraphs.size(); ++i) {
    if (i > 0) out += "\n\n";
    out += paragraphs[i];
  }
  return out;
}

}  // namespace

Category parse_category(std::string_view text) {
  const auto t = lower(trim(text));
  if (t == "canonical" || t == "c") return Category::kCanonical;
  if (t == "non-canonical" || t == "noncanonical" || t == "n") return Category::kNonCanonical;
  if (t == "non-literary" || t == "nonliterary" || t == "x") return Category::kNonLiterary;
  throw DataError(fmt::format("unknown category '{}'", text));
}

std::string_view category_name(Category c) {
  switch (c) {
    case Category::kCanonical: return "canonical";
    case Category::kNonCanonical: return "non-canonical";
    case Category::kNonLiterary: return "non-literary";
  }
  return "unknown";
}

std::filesystem::path CorpusManifest::resolve(const DocumentMeta& meta) const {
  std::filesystem::path p(meta.source_path);
  return p.is_absolute() ? p : base_dir / p;
}

CorpusManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir) {
  CorpusManifest manifest;
  manifest.base_dir = base_dir;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto body = trim(line.substr(1));
      static constexpr std::string_view kDirective = "min_tokens:";
      if (body.starts_with(kDirective)) {
        const auto value = trim(body.substr(kDirective.size()));
        std::size_t n = 0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
        if (ec != std::errc() || ptr != value.data() + value.size() || n == 0) {
          throw DataError(fmt::format("manifest line {}: bad min_tokens '{}'", line_no, value));
        }
        manifest.min_tokens = n;
      }
      continue;
    }
    const auto fields = split(raw, '\t');
    if (fields.size() != 5) {
      throw DataError(fmt::format("manifest line {}: expected 5 tab-separated fields, got {}",
                                  line_no, fields.size()));
    }
    if (trim(fields[0]) == "id" && lower(trim(fields[3])) == "category") continue;
    DocumentMeta meta;
    meta.id = std::string(trim(fields[0]));
    meta.title = std::string(trim(fields[1]));
    meta.author = std::string(trim(fields[2]));
    meta.source_path = std::string(trim(fields[4]));
    if (meta.id.empty() || meta.source_path.empty()) {
      throw DataError(fmt::format("manifest line {}: empty id or path", line_no));
    }
    try {
      meta.category = parse_category(fields[3]);
    } catch (const DataError& e) {
      throw DataError(fmt::format("manifest line {}: {}", line_no, e.what()));
    }
    if (!seen.insert(meta.id).second) {
      throw DataError(fmt::format("manifest line {}: duplicate id '{}'", line_no, meta.id));
    }
    manifest.entries.push_back(std::move(meta));
  }
  if (manifest.entries.empty()) throw DataError("manifest has no entries");
  return manifest;
}

CorpusManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open manifest {}", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto text = buf.str();
  check_utf8(text, path.string());
  return parse_manifest(text, path.parent_path());
}

std::string format_manifest(const CorpusManifest& manifest) {
  std::string out = fmt::format("# min_tokens: {}\nid\ttitle\tauthor\tcategory\tpath\n",
                                manifest.min_tokens);
  for (const auto& e : manifest.entries) {
    out += fmt::format("{}\t{}\t{}\t{}\t{}\n", e.id, e.title, e.author,
                       category_name(e.category), e.source_path);
  }
  return out;
}

void check_utf8(std::string_view text, std::string_view what) {
  const auto* s = reinterpret_cast<const unsigned char*>(text.data());
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    const unsigned char c = s[i];
    std::size_t len;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      throw DataError(fmt::format("{}: invalid UTF-8 at byte {}", what, i));
    }
    if (i + len > n) throw DataError(fmt::format("{}: truncated UTF-8 at byte {}", what, i));
    for (std::size_t k = 1; k < len; ++k) {
      if ((s[i + k] & 0xC0) != 0x80) {
        throw DataError(fmt::format("{}: invalid UTF-8 at byte {}", what, i));
      }
      cp = (cp << 6) | (s[i + k] & 0x3F);
    }
    static constexpr std::uint32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw DataError(fmt::format("{}: invalid UTF-8 at byte {}", what, i));
    }
    i += len;
  }
}

std::string clean_text(std::string_view raw, const CleanOptions& options) {
  std::string text = normalize_newlines(raw);
  text = remove_marker_lines(text, options);
  if (options.inline_markers) text = remove_inline_markers(text);
  text = rejoin_hyphens(text);
  return join_paragraphs(text);
}

RawDocument load_document(const CorpusManifest& manifest, const DocumentMeta& meta) {
  const auto path = manifest.resolve(meta);
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError(fmt::format("document '{}': cannot open {}", meta.id, path.string()));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  RawDocument doc{meta, buf.str()};
  check_utf8(doc.text, path.string());
  if (doc.text.starts_with("\xEF\xBB\xBF")) doc.text.erase(0, 3);
  return doc;
}

std::size_t count_whitespace_tokens(std::string_view text) {
  std::size_t count = 0;
  bool in_token = false;
  for (char c : text) {
    const bool space = std::isspace(static_cast<unsigned char>(c));
    if (!space && !in_token) ++count;
    in_token = !space;
  }
  return count;
}

bool validate_length(const RawDocument& doc, std::size_t min_tokens) {
  return count_whitespace_tokens(doc.text) >= min_tokens;
}

}  // namespace fractext::corpus
