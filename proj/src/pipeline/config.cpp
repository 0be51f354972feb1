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

// Run configuration and stage bookkeeping.

#include <algorithm>
#include <cctype>
#include <set>
#include <string>

#include <spdlog/spdlog.h>

#include "common.hpp"
#include "fractext/error.hpp"
#include "fractext/io.hpp"

namespace fractext::pipeline {

std::string_view version() { return FRACTEXT_VERSION; }

fractal::MfdfaConfig RunConfig::mfdfa() const {
  fractal::MfdfaConfig c;
  c.q_grid = fractal::make_q_grid(q_min, q_max, q_step);
  c.scale_count = scale_count;
  c.s_min = s_min;
  c.s_max_fraction = s_max_fraction;
  c.detrend_order = detrend_order;
  c.two_sided = two_sided;
  return c;
}

namespace {

using detail::Json;

Json optional_path(const std::filesystem::path& p) {
  return p.empty() ? Json(nullptr) : Json(p.generic_string());
}

Json echo_json(const RunConfig& c) {
  Json j;
  j["manifest"] = optional_path(c.manifest);
  j["seed"] = c.seed;
  j["corpus"] = {{"min_tokens", c.min_tokens ? Json(*c.min_tokens) : Json(nullptr)}};
  j["tagging"] = {{"backend", c.tagger},
                  {"lexicon", optional_path(c.lexicon)},
                  {"pretagged_dir", optional_path(c.pretagged_dir)},
                  {"gold", optional_path(c.tagger_gold)}};
  j["series"] = {{"mtld_chunk", c.mtld_chunk},
                 {"ttr_threshold", c.ttr_threshold},
                 {"topic_chunk", c.topic_chunk}};
  j["lda"] = {{"topics", c.lda.topics},
              {"alpha", c.lda.alpha ? Json(*c.lda.alpha) : Json(nullptr)},
              {"beta", c.lda.beta},
              {"iterations", c.lda.iterations},
              {"infer_sweeps", c.lda.infer_sweeps},
              {"infer_burn_in", c.lda.infer_burn_in},
              {"min_df", c.min_df}};
  j["mfdfa"] = {{"q_min", c.q_min},
                {"q_max", c.q_max},
                {"q_step", c.q_step},
                {"scale_count", c.scale_count},
                {"s_min", c.s_min},
                {"s_max_fraction", c.s_max_fraction},
                {"detrend_order", c.detrend_order},
                {"two_sided", c.two_sided}};
  j["svm"] = {{"c", c.svm_c},
              {"gamma", c.svm_gamma ? Json(*c.svm_gamma) : Json(nullptr)},
              {"grid_search", c.grid_search},
              {"scale_on_full_table", c.scale_on_full_table}};
  j["stats"] = {{"ks_reps", c.ks_reps}};
  return j;
}

void check_keys(const nlohmann::json& j, std::string_view where,
                std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw UsageError("config: " + std::string(where) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw UsageError("config: unknown key '" + std::string(where) + key + "'");
    }
  }
}

template <typename T>
void take(const nlohmann::json& j, const char* key, T& out, std::string_view where) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw UsageError("config: bad value for '" + std::string(where) + key + "'");
  }
}

template <typename T>
void take_optional(const nlohmann::json& j, const char* key, std::optional<T>& out,
                   std::string_view where) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  T v{};
  take(j, key, v, where);
  out = v;
}

void take_path(const nlohmann::json& j, const char* key, std::filesystem::path& out,
               const std::filesystem::path& base, std::string_view where) {
  std::string s;
  take(j, key, s, where);
  if (s.empty()) return;
  std::filesystem::path p(s);
  out = p.is_absolute() ? p : (base / p).lexically_normal();
}

}  // namespace

std::string RunConfig::echo() const { return detail::dump(echo_json(*this)); }

std::string RunConfig::hash() const { return io::sha256_hex(echo()); }

RunConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("config: invalid JSON: ") + e.what());
  }
  check_keys(j, "",
             {"manifest", "out", "seed", "jobs", "corpus", "tagging", "series", "lda", "mfdfa",
              "svm", "stats"});
  RunConfig c;
  take_path(j, "manifest", c.manifest, base_dir, "");
  take_path(j, "out", c.out, base_dir, "");
  take(j, "seed", c.seed, "");
  take(j, "jobs", c.jobs, "");
  if (j.contains("corpus")) {
    const auto& s = j["corpus"];
    check_keys(s, "corpus.", {"min_tokens"});
    take_optional(s, "min_tokens", c.min_tokens, "corpus.");
  }
  if (j.contains("tagging")) {
    const auto& s = j["tagging"];
    check_keys(s, "tagging.", {"backend", "lexicon", "pretagged_dir", "gold"});
    take(s, "backend", c.tagger, "tagging.");
    take_path(s, "lexicon", c.lexicon, base_dir, "tagging.");
    take_path(s, "pretagged_dir", c.pretagged_dir, base_dir, "tagging.");
    take_path(s, "gold", c.tagger_gold, base_dir, "tagging.");
  }
  if (j.contains("series")) {
    const auto& s = j["series"];
    check_keys(s, "series.", {"mtld_chunk", "ttr_threshold", "topic_chunk"});
    take(s, "mtld_chunk", c.mtld_chunk, "series.");
    take(s, "ttr_threshold", c.ttr_threshold, "series.");
    take(s, "topic_chunk", c.topic_chunk, "series.");
  }
  if (j.contains("lda")) {
    const auto& s = j["lda"];
    check_keys(s, "lda.",
               {"topics", "alpha", "beta", "iterations", "infer_sweeps", "infer_burn_in", "min_df"});
    take(s, "topics", c.lda.topics, "lda.");
    take_optional(s, "alpha", c.lda.alpha, "lda.");
    take(s, "beta", c.lda.beta, "lda.");
    take(s, "iterations", c.lda.iterations, "lda.");
    take(s, "infer_sweeps", c.lda.infer_sweeps, "lda.");
    take(s, "infer_burn_in", c.lda.infer_burn_in, "lda.");
    take(s, "min_df", c.min_df, "lda.");
  }
  if (j.contains("mfdfa")) {
    const auto& s = j["mfdfa"];
    check_keys(s, "mfdfa.",
               {"q_min", "q_max", "q_step", "scale_count", "s_min", "s_max_fraction",
                "detrend_order", "two_sided"});
    take(s, "q_min", c.q_min, "mfdfa.");
    take(s, "q_max", c.q_max, "mfdfa.");
    take(s, "q_step", c.q_step, "mfdfa.");
    take(s, "scale_count", c.scale_count, "mfdfa.");
    take(s, "s_min", c.s_min, "mfdfa.");
    take(s, "s_max_fraction", c.s_max_fraction, "mfdfa.");
    take(s, "detrend_order", c.detrend_order, "mfdfa.");
    take(s, "two_sided", c.two_sided, "mfdfa.");
  }
  if (j.contains("svm")) {
    const auto& s = j["svm"];
    check_keys(s, "svm.", {"c", "gamma", "grid_search", "scale_on_full_table"});
    take(s, "c", c.svm_c, "svm.");
    take_optional(s, "gamma", c.svm_gamma, "svm.");
    take(s, "grid_search", c.grid_search, "svm.");
    take(s, "scale_on_full_table", c.scale_on_full_table, "svm.");
  }
  if (j.contains("stats")) {
    const auto& s = j["stats"];
    check_keys(s, "stats.", {"ks_reps"});
    take(s, "ks_reps", c.ks_reps, "stats.");
  }
  if (c.tagger != "lexicon" && c.tagger != "pretagged") {
    throw UsageError("config: tagging.backend must be 'lexicon' or 'pretagged'");
  }
  if (c.tagger == "pretagged" && c.pretagged_dir.empty()) {
    throw UsageError("config: tagging.pretagged_dir is required for the pretagged backend");
  }
  if (c.mtld_chunk < 10 || c.topic_chunk < 10) {
    throw UsageError("config: chunk sizes must be at least 10 tokens");
  }
  if (!(c.ttr_threshold > 0.0 && c.ttr_threshold < 1.0)) {
    throw UsageError("config: series.ttr_threshold must lie in (0, 1)");
  }
  if (c.lda.topics < 2 || c.lda.iterations < 1 || c.lda.infer_sweeps <= c.lda.infer_burn_in ||
      c.lda.infer_burn_in < 0 || !(c.lda.beta > 0.0)) {
    throw UsageError("config: invalid lda parameters");
  }
  if (c.ks_reps < 1) throw UsageError("config: stats.ks_reps must be positive");
  if (!(c.svm_c > 0.0) || (c.svm_gamma && !(*c.svm_gamma > 0.0))) {
    throw UsageError("config: svm.c and svm.gamma must be positive");
  }
  (void)c.mfdfa();  // validates the q grid
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = io::read_text(path);
  } catch (const DataError&) {
    throw UsageError("cannot read config file " + path.string());
  }
  return parse_config(text, path.parent_path());
}

namespace detail {

Json provenance(const RunConfig& config) {
  return Json{{"tool", "fractext"},
              {"version", std::string(version())},
              {"config_hash", config.hash()},
              {"seed", config.seed}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::filesystem::path stage_dir(const RunConfig& config, std::string_view name) {
  return config.out / std::string(name);
}

StageWriter::StageWriter(const RunConfig& config, std::string name, std::string key)
    : config_(config), name_(std::move(name)), key_(std::move(key)),
      dir_(stage_dir(config, name_)) {
  std::filesystem::remove_all(dir_);
  std::filesystem::create_directories(dir_);
}

void StageWriter::write(const std::string& relative, std::string_view content) {
  io::write_text(dir_ / relative, content);
  const std::string digest = io::sha256_hex(content);
  std::lock_guard lock(mu_);
  outputs_[relative] = digest;
}

void StageWriter::write_json(const std::string& relative, Json body) {
  Json j = provenance(config_);
  for (auto& [k, v] : body.items()) j[k] = v;
  write(relative, dump(j));
}

void StageWriter::finish(Json extra) {
  Json j = provenance(config_);
  j["stage"] = name_;
  j["key"] = key_;
  for (auto& [k, v] : extra.items()) j[k] = v;
  Json outputs = Json::object();
  for (const auto& [path, digest] : outputs_) outputs[path] = digest;
  j["outputs"] = outputs;
  io::write_text(dir_ / "stage.json", dump(j));
}

Json read_json(const std::filesystem::path& path) {
  try {
    return Json::parse(io::read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

bool stage_current(const RunConfig& config, std::string_view name, const std::string& key) {
  const auto dir = stage_dir(config, name);
  const auto marker = dir / "stage.json";
  if (!std::filesystem::exists(marker)) return false;
  Json j;
  try {
    j = read_json(marker);
  } catch (const DataError&) {
    return false;
  }
  if (!j.contains("key") || j["key"] != key || !j.contains("outputs")) return false;
  for (const auto& [path, digest] : j["outputs"].items()) {
    const auto p = dir / path;
    if (!std::filesystem::exists(p) || io::file_sha256(p) != digest.get<std::string>()) {
      return false;
    }
  }
  return true;
}

std::string upstream_key(const RunConfig& config, std::string_view name) {
  const auto marker = stage_dir(config, name) / "stage.json";
  if (!std::filesystem::exists(marker)) {
    throw DataError("stage '" + std::string(name) + "' has not run yet (no " + marker.string() +
                    ")");
  }
  const Json j = read_json(marker);
  if (!j.contains("key")) throw DataError("stage marker without key: " + marker.string());
  return j["key"].get<std::string>();
}

void check_doc_id(const std::string& id) {
  const bool ok = !id.empty() && id != "." && id != ".." &&
                  std::all_of(id.begin(), id.end(), [](unsigned char ch) {
                    return std::isalnum(ch) || ch == '_' || ch == '-' || ch == '.';
                  });
  if (!ok) {
    throw DataError("document id '" + id + "' must use only letters, digits, '.', '_' or '-'");
  }
}

}  // namespace detail
}  // namespace fractext::pipeline
