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

// Shared helpers for the pipeline stages.

#ifndef FRACTEXT_SRC_PIPELINE_COMMON_HPP_
#define FRACTEXT_SRC_PIPELINE_COMMON_HPP_

#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fractext/pipeline.hpp"

namespace fractext::pipeline::detail {

using Json = nlohmann::ordered_json;

// Tool version, config hash and master seed.
Json provenance(const RunConfig& config);

std::string dump(const Json& j);

// Collects a stage's outputs and seals them with stage.json. Writes are
// safe from several threads.
class StageWriter {
 public:
  StageWriter(const RunConfig& config, std::string name, std::string key);

  const std::filesystem::path& dir() const { return dir_; }
  void write(const std::string& relative, std::string_view content);
  void write_json(const std::string& relative, Json body);
  void finish(Json extra = Json::object());

 private:
  const RunConfig& config_;
  std::string name_;
  std::string key_;
  std::filesystem::path dir_;
  std::mutex mu_;
  std::map<std::string, std::string> outputs_;
};

std::filesystem::path stage_dir(const RunConfig& config, std::string_view name);
// True when stage.json carries `key` and every listed output is intact.
bool stage_current(const RunConfig& config, std::string_view name, const std::string& key);
// Key of a finished upstream stage; DataError when it has not run.
std::string upstream_key(const RunConfig& config, std::string_view name);
Json read_json(const std::filesystem::path& path);

// Ids become file names.
void check_doc_id(const std::string& id);

}  // namespace fractext::pipeline::detail

#endif  // FRACTEXT_SRC_PIPELINE_COMMON_HPP_
