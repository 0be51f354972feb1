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

// fractext command-line driver. Exit codes: 0 success, 1 usage or
// configuration error, 2 data error, 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "fractext/error.hpp"
#include "fractext/pipeline.hpp"

namespace {

using fractext::pipeline::Pipeline;
using fractext::pipeline::RunConfig;

struct GlobalOptions {
  std::string config;
  std::string manifest;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
  bool force = false;
  bool verbose = false;
  bool quiet = false;
};

RunConfig resolve_config(const GlobalOptions& g) {
  RunConfig c = g.config.empty() ? RunConfig{} : fractext::pipeline::load_config(g.config);
  if (!g.manifest.empty()) c.manifest = g.manifest;
  if (!g.out.empty()) c.out = g.out;
  if (g.seed) c.seed = *g.seed;
  if (g.jobs) c.jobs = *g.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : *g.jobs;
  return c;
}

int run_synth_command(const fractext::pipeline::SynthOptions& base, bool self_test) {
  if (!self_test) {
    fractext::pipeline::run_synth(base);
    return 0;
  }
  // White noise must give H near 0.5; a random cascade must follow its
  // closed-form h(q).
  bool ok = true;
  auto fgn = base;
  fgn.kind = "fgn";
  fgn.hurst = 0.5;
  fgn.out = base.out / "fgn-0.5";
  const auto noise = fractext::pipeline::run_synth(fgn);
  const bool noise_ok = std::abs(noise.summary.hurst - 0.5) <= 0.05;
  std::printf("%s white noise H = %.4f (target 0.5 +- 0.05)\n", noise_ok ? "PASS" : "FAIL",
              noise.summary.hurst);
  ok = ok && noise_ok;

  auto cascade = base;
  cascade.kind = "cascade";
  cascade.out = base.out / "cascade";
  const auto cas = fractext::pipeline::run_synth(cascade);
  double worst = 0.0;
  for (const auto& [q, h, closed] : cas.oracle) {
    if (q == -5.0 || q == -2.0 || q == 2.0 || q == 5.0) worst = std::max(worst, std::abs(h - closed));
  }
  const bool cascade_ok = worst <= 0.10;
  std::printf("%s cascade a = %.2f max |h(q) - closed form| = %.4f at q in {-5,-2,2,5}\n",
              cascade_ok ? "PASS" : "FAIL", cascade.a, worst);
  ok = ok && cascade_ok;
  return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("fractext");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");

  CLI::App app{"fractext: variability and multifractal features of text"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fractext::pipeline::version()));

  GlobalOptions g;
  app.add_option("--config", g.config, "JSON run configuration");
  app.add_option("--manifest", g.manifest, "Corpus manifest (overrides the config)");
  app.add_option("--out", g.out, "Output directory (overrides the config)");
  app.add_option("--seed", g.seed, "Master seed (overrides the config)");
  app.add_option("--jobs", g.jobs, "Worker threads; 0 = all cores");
  app.add_flag("--force", g.force, "Recompute stages even when up to date");
  app.add_flag("-v,--verbose", g.verbose, "Debug logging");
  app.add_flag("-q,--quiet", g.quiet, "Warnings and errors only");

  std::function<void(Pipeline&)> action;
  auto stage = [&](const char* name, const char* help, std::function<void(Pipeline&)> fn) {
    app.add_subcommand(name, help)->callback([&action, fn] { action = fn; });
  };
  stage("ingest", "Clean and validate the documents listed in the manifest",
        [](Pipeline& p) { p.ingest(); });
  stage("tag", "Split sentences, tokenize and POS-tag the cleaned documents",
        [](Pipeline& p) { p.tag(); });
  stage("series", "Train the topic model and build the seven property series",
        [](Pipeline& p) {
          p.topics();
          p.series();
        });
  stage("fractal", "Variance and MFDFA features plus plot data for every series",
        [](Pipeline& p) { p.fractal(); });
  stage("stats", "Table-1 medians, confidence intervals and tests",
        [](Pipeline& p) { p.stats(); });
  stage("classify", "Table-2 SVM classification under 5x2 cross-validation",
        [](Pipeline& p) { p.classify(); });
  stage("report", "Combined Markdown report", [](Pipeline& p) { p.report(); });
  stage("run", "All stages in order", [](Pipeline& p) { p.run_all(); });

  fractext::pipeline::SynthOptions synth;
  std::string synth_out;
  bool deterministic = false;
  bool self_test = false;
  auto* synth_cmd = app.add_subcommand("synth", "Synthetic fGn or binomial cascade with MFDFA");
  synth_cmd->add_option("--kind", synth.kind, "fgn or cascade")
      ->check(CLI::IsMember({"fgn", "cascade"}));
  synth_cmd->add_option("--hurst", synth.hurst, "fGn Hurst exponent in (0, 1)");
  synth_cmd->add_option("--n", synth.n, "fGn length (power of two)");
  synth_cmd->add_option("--a", synth.a, "Cascade weight in (0.5, 1)");
  synth_cmd->add_option("--levels", synth.levels, "Cascade levels (length 2^levels)");
  synth_cmd->add_flag("--deterministic", deterministic,
                      "Cascade with the heavier weight always on the left");
  synth_cmd->add_flag("--self-test", self_test, "Check white noise and cascade oracles");
  bool synth_selected = false;
  synth_cmd->callback([&] { synth_selected = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  if (g.verbose) spdlog::set_level(spdlog::level::debug);
  if (g.quiet) spdlog::set_level(spdlog::level::warn);

  try {
    if (synth_selected) {
      if (g.seed) synth.seed = *g.seed;
      synth.out = g.out.empty() ? "fractext-synth" : g.out;
      synth.seeded_cascade = !deterministic;
      if (!g.config.empty()) synth.mfdfa = fractext::pipeline::load_config(g.config).mfdfa();
      return run_synth_command(synth, self_test);
    }
    Pipeline pipeline(resolve_config(g));
    pipeline.set_force(g.force);
    action(pipeline);
    return 0;
  } catch (const fractext::Error& e) {
    spdlog::error("{}", e.what());
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 2;
  }
}
