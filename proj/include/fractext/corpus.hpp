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

// Corpus manifests, document loading and text cleaning.

#ifndef FRACTEXT_CORPUS_HPP_
#define FRACTEXT_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fractext::corpus {

enum class Category { kCanonical, kNonCanonical, kNonLiterary };

// Accepts canonical / non-canonical / non-literary and the short forms C / N / X,
// case-insensitively. Throws DataError for anything else.
Category parse_category(std::string_view text);
std::string_view category_name(Category c);
inline bool is_literary(Category c) { return c != Category::kNonLiterary; }

struct DocumentMeta {
  std::string id;
  std::string title;
  std::string author;
  Category category = Category::kCanonical;
  // Absolute, or relative to the manifest directory.
  std::string source_path;
};

struct RawDocument {
  DocumentMeta meta;
  std::string text;
};

inline constexpr std::size_t kDefaultMinTokens = 35000;

struct CorpusManifest {
  std::vector<DocumentMeta> entries;
  std::size_t min_tokens = kDefaultMinTokens;
  // Directory that relative source paths are resolved against.
  std::filesystem::path base_dir;

  std::filesystem::path resolve(const DocumentMeta& meta) const;
};

// Tab-separated manifest:
//
//   # min_tokens: 35000
//   id<TAB>title<TAB>author<TAB>category<TAB>path
//   doc1<TAB>Jane Eyre<TAB>Charlotte Bronte<TAB>canonical<TAB>texts/jane.txt
//
// Lines starting with '#' are comments except for the min_tokens directive. A
// header row beginning with "id" is optional.
CorpusManifest parse_manifest(std::string_view text,
                              const std::filesystem::path& base_dir = {});
CorpusManifest load_manifest(const std::filesystem::path& path);
std::string format_manifest(const CorpusManifest& manifest);

// Throws DataError on invalid UTF-8, naming the byte offset.
void check_utf8(std::string_view text, std::string_view what);

struct CleanOptions {
  std::string exclude_begin = "%%EXCLUDE-BEGIN%%";
  std::string exclude_end = "%%EXCLUDE-END%%";
  // Also honour inline <EXCLUDE>...</EXCLUDE> spans.
  bool inline_markers = true;
};

// Normalizes line endings, drops excluded regions, re-joins words hyphenated
// across a line break, turns single line breaks into spaces and separates
// paragraphs with exactly one blank line. Idempotent.
std::string clean_text(std::string_view raw, const CleanOptions& options = {});

// Reads the document's source file, validating UTF-8 and dropping a BOM.
RawDocument load_document(const CorpusManifest& manifest, const DocumentMeta& meta);

std::size_t count_whitespace_tokens(std::string_view text);
bool validate_length(const RawDocument& doc, std::size_t min_tokens);

}  // namespace fractext::corpus

#endif  // FRACTEXT_CORPUS_HPP_
