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


#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <doctest.h>

#include "fractext/io.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(FRACTEXT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("exit codes") {
    const auto dir = fs::temp_directory_path() / "fractext_cli_test";
    fs::remove_all(dir);
    fractext::io::write_text(dir / "manifest.tsv", "a\tA\tX\tcanonical\tmissing.txt\n");
    fractext::io::write_text(dir / "bad.json", R"({"colour": "blue"})");
    const std::string out = " --out " + (dir / "out").string();

    CHECK(run("--version") == 0);
    CHECK(run("--help") == 0);
    CHECK(run("") == 1);
    CHECK(run("frobnicate") == 1);
    CHECK(run("--config " + (dir / "bad.json").string() + " ingest") == 1);
    CHECK(run("--manifest " + (dir / "manifest.tsv").string() + out + " ingest") == 2);
    CHECK(run(out + " tag") == 2);
    CHECK(run(out + " synth --kind fgn --hurst 1.5") == 1);
    CHECK(run(out + " synth --kind cascade --a 0.6 --levels 12") == 0);
    CHECK(fs::exists(dir / "out" / "hq.csv"));
    fs::remove_all(dir);
  }
}
