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

// Artifact plumbing: number formatting, CSV, atomic writes and hashing.

#ifndef FRACTEXT_IO_HPP_
#define FRACTEXT_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fractext::io {

// Shortest text that parses back to the same double; "nan", "inf", "-inf".
std::string format_number(double v);
double parse_number(std::string_view text);

std::string csv_escape(std::string_view field);

class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header);
  void row(const std::vector<std::string>& fields);
  const std::string& str() const { return text_; }

 private:
  std::size_t width_;
  std::string text_;
};

// RFC 4180 quoting; the header row is included.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

std::string read_text(const std::filesystem::path& path);
// Writes through a temporary file and renames it into place; parent
// directories are created.
void write_text(const std::filesystem::path& path, std::string_view content);

std::string sha256_hex(std::string_view data);
std::string file_sha256(const std::filesystem::path& path);

}  // namespace fractext::io

#endif  // FRACTEXT_IO_HPP_
