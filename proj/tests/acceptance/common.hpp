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


// Shared helpers for the acceptance binaries: one PASS/FAIL line per
// criterion and whole-pipeline runs.

#ifndef FRACTEXT_TESTS_ACCEPTANCE_COMMON_HPP_
#define FRACTEXT_TESTS_ACCEPTANCE_COMMON_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "fractext/pipeline.hpp"

namespace acceptance {

class Report {
 public:
  // Prints "PASS <id> <title>: <detail>" or the FAIL form.
  void record(const std::string& id, const std::string& title, bool pass,
              const std::string& detail);
  // Non-criterion context line.
  void note(const std::string& text);
  int exit_code() const { return failures_ == 0 ? 0 : 1; }

 private:
  int failures_ = 0;
};

struct TimedRun {
  double total_seconds = 0.0;
  double topic_seconds = 0.0;  // vocabulary plus LDA training
};

// All stages in order, forced, with per-stage timing.
TimedRun run_pipeline(const fractext::pipeline::RunConfig& config);

// Relative path -> SHA-256 of every regular file below root.
std::vector<std::pair<std::string, std::string>> tree_digest(const std::filesystem::path& root);

// First differing or missing path, empty when the trees match.
std::string first_difference(const std::filesystem::path& a, const std::filesystem::path& b);

struct SeriesCorrelation {
  std::string doc_id;
  double rho = 0.0;
};

// Spearman correlation of the sentence-length and noun series of every
// document in a finished run.
std::vector<SeriesCorrelation> length_noun_correlations(const std::filesystem::path& out);

std::string fixed(double v, int digits = 4);

}  // namespace acceptance

#endif  // FRACTEXT_TESTS_ACCEPTANCE_COMMON_HPP_
