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


#include "common.hpp"

#include <chrono>
#include <cstdio>
#include <map>

#include <fmt/format.h>

#include "fractext/io.hpp"
#include "fractext/stats.hpp"

namespace acceptance {

namespace fs = std::filesystem;
namespace io = fractext::io;

void Report::record(const std::string& id, const std::string& title, bool pass,
                    const std::string& detail) {
  if (!pass) ++failures_;
  std::printf("%s %s %s: %s\n", pass ? "PASS" : "FAIL", id.c_str(), title.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

void Report::note(const std::string& text) {
  std::printf("NOTE %s\n", text.c_str());
  std::fflush(stdout);
}

TimedRun run_pipeline(const fractext::pipeline::RunConfig& config) {
  using clock = std::chrono::steady_clock;
  fractext::pipeline::Pipeline p(config);
  p.set_force(true);
  TimedRun t;
  const auto start = clock::now();
  p.ingest();
  p.tag();
  const auto topics_start = clock::now();
  p.topics();
  t.topic_seconds = std::chrono::duration<double>(clock::now() - topics_start).count();
  p.series();
  p.fractal();
  p.stats();
  p.classify();
  p.report();
  t.total_seconds = std::chrono::duration<double>(clock::now() - start).count();
  return t;
}

std::vector<std::pair<std::string, std::string>> tree_digest(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      files[fs::relative(e.path(), root).generic_string()] = io::file_sha256(e.path());
    }
  }
  return {files.begin(), files.end()};
}

std::string first_difference(const fs::path& a, const fs::path& b) {
  const auto da = tree_digest(a);
  const auto db = tree_digest(b);
  std::map<std::string, std::string> mb(db.begin(), db.end());
  for (const auto& [path, digest] : da) {
    const auto it = mb.find(path);
    if (it == mb.end()) return path + " (missing in second run)";
    if (it->second != digest) return path;
    mb.erase(it);
  }
  if (!mb.empty()) return mb.begin()->first + " (missing in first run)";
  return {};
}

namespace {

std::vector<double> series_values(const fs::path& csv) {
  const auto rows = io::parse_csv(io::read_text(csv));
  std::vector<double> out;
  for (std::size_t r = 1; r < rows.size(); ++r) out.push_back(io::parse_number(rows[r][1]));
  return out;
}

}  // namespace

std::vector<SeriesCorrelation> length_noun_correlations(const fs::path& out) {
  std::vector<SeriesCorrelation> result;
  const auto rows = io::parse_csv(io::read_text(out / "series" / "availability.csv"));
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r][2] != "noun" || rows[r][3] != "ok") continue;
    const fs::path dir = out / "series" / rows[r][0];
    const auto len = series_values(dir / "sentence_length.csv");
    const auto nouns = series_values(dir / "noun.csv");
    result.push_back({rows[r][0], fractext::stats::spearman(len, nouns)});
  }
  return result;
}

std::string fixed(double v, int digits) { return fmt::format("{:.{}f}", v, digits); }

}  // namespace acceptance
