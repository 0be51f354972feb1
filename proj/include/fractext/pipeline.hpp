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

// Batch stages: ingest -> tag -> topics -> series -> fractal -> stats ->
// classify -> report. Each stage writes under <out>/<stage>/ and records a
// content key in stage.json; a rerun with the same key and intact outputs is
// skipped.

#ifndef FRACTEXT_PIPELINE_HPP_
#define FRACTEXT_PIPELINE_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fractext/fractal.hpp"
#include "fractext/topicmodel.hpp"

namespace fractext::pipeline {

std::string_view version();

struct RunConfig {
  std::filesystem::path manifest;
  std::filesystem::path out = "fractext-out";
  std::uint64_t seed = 42;
  std::size_t jobs = 1;

  std::optional<std::size_t> min_tokens;

  // "lexicon" or "pretagged".
  std::string tagger = "lexicon";
  std::filesystem::path lexicon;        // empty: bundled lexicon
  std::filesystem::path pretagged_dir;  // <id>.tsv per document
  std::filesystem::path tagger_gold;    // optional accuracy check

  std::size_t mtld_chunk = 100;
  double ttr_threshold = 0.72;
  std::size_t topic_chunk = 100;
  std::size_t min_df = 3;
  topicmodel::LdaConfig lda;

  double q_min = -5.0;
  double q_max = 5.0;
  double q_step = 0.25;
  std::size_t scale_count = 20;
  std::size_t s_min = 16;
  double s_max_fraction = 0.25;
  int detrend_order = 1;
  bool two_sided = true;

  double svm_c = 1.0;
  std::optional<double> svm_gamma;
  bool grid_search = false;
  bool scale_on_full_table = false;

  int ks_reps = 10000;

  fractal::MfdfaConfig mfdfa() const;
  // Full parameter echo as JSON text. Output directory and worker count are
  // left out: they do not change any artifact.
  std::string echo() const;
  // SHA-256 of echo().
  std::string hash() const;
};

// JSON config; relative paths resolve against the file's directory. Unknown
// keys are a UsageError.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir);

class Pipeline {
 public:
  explicit Pipeline(RunConfig config);

  // Ignore stage.json and recompute.
  void set_force(bool force) { force_ = force; }

  void ingest();
  void tag();
  void topics();
  void series();
  void fractal();
  void stats();
  void classify();
  void report();
  void run_all();

  const RunConfig& config() const { return config_; }

  // Stages skipped as up to date during this object's lifetime.
  const std::vector<std::string>& skipped() const { return skipped_; }

 private:
  RunConfig config_;
  bool force_ = false;
  std::vector<std::string> skipped_;
};

struct SynthOptions {
  // "fgn" or "cascade".
  std::string kind = "fgn";
  double hurst = 0.5;
  double a = 0.75;
  std::size_t n = 1 << 16;  // fGn length
  int levels = 16;          // cascade length 2^levels
  bool seeded_cascade = true;
  std::uint64_t seed = 42;
  std::filesystem::path out = "fractext-synth";
  fractal::MfdfaConfig mfdfa = fractal::MfdfaConfig::defaults();
};

struct SynthReport {
  fractal::FractalSummary summary;
  // Cascade only: (q, estimated h, closed-form h) at every grid q.
  std::vector<std::array<double, 3>> oracle;
};

SynthReport run_synth(const SynthOptions& options);

}  // namespace fractext::pipeline

#endif  // FRACTEXT_PIPELINE_HPP_
