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

// Analysis stages: Table-1 statistics, Table-2 classification and the
// combined report.

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "common.hpp"
#include "fractext/classify.hpp"
#include "fractext/corpus.hpp"
#include "fractext/error.hpp"
#include "fractext/io.hpp"
#include "fractext/random.hpp"
#include "fractext/series.hpp"
#include "fractext/stats.hpp"

namespace fractext::pipeline {

using detail::Json;
using detail::StageWriter;

namespace {

std::string num(double v) { return io::format_number(v); }

std::string key_of(std::initializer_list<std::string> parts) {
  std::string material;
  for (const auto& p : parts) {
    material += p;
    material += '\x1f';
  }
  return io::sha256_hex(material);
}

struct FeatureRow {
  std::string doc_id;
  corpus::Category category = corpus::Category::kCanonical;
  series::Property property = series::Property::kNoun;
  double v = std::nan("");
  std::optional<std::array<double, 3>> hda;
};

std::vector<FeatureRow> read_features(const RunConfig& c) {
  const auto rows =
      io::parse_csv(io::read_text(detail::stage_dir(c, "fractal") / "features.csv"));
  std::vector<FeatureRow> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r];
    if (f.size() != 11) throw DataError("malformed features.csv");
    FeatureRow row;
    row.doc_id = f[0];
    row.category = corpus::parse_category(f[1]);
    row.property = series::parse_property(f[2]);
    row.v = io::parse_number(f[4]);
    if (f[10] == "ok") {
      row.hda = std::array<double, 3>{io::parse_number(f[5]), io::parse_number(f[6]),
                                      io::parse_number(f[7])};
    }
    out.push_back(std::move(row));
  }
  return out;
}

constexpr std::array<const char*, 4> kFeatureCodes = {"V", "H", "D", "A"};

std::optional<double> feature_value(const FeatureRow& row, std::size_t feature) {
  if (feature == 0) {
    if (std::isfinite(row.v)) return row.v;
    return std::nullopt;
  }
  if (!row.hda) return std::nullopt;
  const double v = (*row.hda)[feature - 1];
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

// Group keys in the Table 1 layout.
constexpr std::array<const char*, 4> kGroups = {"lit", "non-lit", "can", "non-can"};

bool in_group(std::string_view group, corpus::Category c) {
  if (group == "lit") return corpus::is_literary(c);
  if (group == "non-lit") return c == corpus::Category::kNonLiterary;
  if (group == "can") return c == corpus::Category::kCanonical;
  return c == corpus::Category::kNonCanonical;
}

struct Comparison {
  const char* name;
  const char* a;
  const char* b;
};
constexpr std::array<Comparison, 4> kComparisons = {{
    {"task1", "lit", "non-lit"},
    {"task2", "can", "non-can"},
    {"can_vs_non-lit", "can", "non-lit"},
    {"non-can_vs_non-lit", "non-can", "non-lit"},
}};

std::string fmt_value(double v, std::size_t feature) {
  if (!std::isfinite(v)) return "-";
  if (feature == 0) return fmt::format("{:.4g}", v);
  return fmt::format("{:.3f}", v);
}

std::string pad(const std::string& s, std::size_t width) {
  // Width in code points so the dagger and plus-minus signs line up.
  std::size_t cps = 0;
  for (unsigned char ch : s) {
    if ((ch & 0xC0) != 0x80) ++cps;
  }
  return cps >= width ? s : s + std::string(width - cps, ' ');
}

}  // namespace

void Pipeline::stats() {
  const RunConfig& c = config_;
  const std::string fractal_key = detail::upstream_key(c, "fractal");
  const std::string series_key = detail::upstream_key(c, "series");
  const std::string key = key_of({"stats", std::string(version()), fractal_key, series_key,
                                  std::to_string(c.ks_reps), std::to_string(c.seed)});
  if (!force_ && detail::stage_current(c, "stats", key)) {
    spdlog::info("stats: up to date");
    skipped_.push_back("stats");
    return;
  }
  const auto features = read_features(c);
  const std::uint64_t ks_seed = derive_seed(c.seed, "ks");
  StageWriter out(c, "stats", key);

  io::CsvWriter summary_csv(
      {"feature", "property", "group", "n", "median", "ci_low", "ci_high", "coverage", "note"});
  io::CsvWriter tests_csv({"feature", "property", "test", "groups", "statistic", "p_value", "df",
                           "method", "n", "marker", "flagged", "note"});
  // cell[feature][property][group] -> text; marks[feature][property][comparison] -> marker
  std::map<std::string, std::map<std::string, std::map<std::string, std::string>>> cell;
  std::map<std::string, std::map<std::string, std::map<std::string, std::string>>> marks;

  for (std::size_t fi = 0; fi < kFeatureCodes.size(); ++fi) {
    const std::string feature = kFeatureCodes[fi];
    for (series::Property p : series::kAllProperties) {
      const std::string prop(series::property_name(p));
      std::map<std::string, std::vector<double>> groups;
      std::map<corpus::Category, std::vector<double>> by_category;
      for (const auto& row : features) {
        if (row.property != p) continue;
        const auto v = feature_value(row, fi);
        if (!v) continue;
        by_category[row.category].push_back(*v);
        for (const char* g : kGroups) {
          if (in_group(g, row.category)) groups[g].push_back(*v);
        }
      }
      for (const char* g : kGroups) {
        const auto& x = groups[g];
        try {
          const auto s = stats::median_ci(x);
          summary_csv.row({feature, prop, g, std::to_string(s.n), num(s.median), num(s.ci_low),
                           num(s.ci_high), num(s.coverage), ""});
          cell[feature][prop][g] = fmt::format("{} ({}, {})", fmt_value(s.median, fi),
                                               fmt_value(s.ci_low, fi), fmt_value(s.ci_high, fi));
        } catch (const DataError& e) {
          const double med = x.empty() ? std::nan("") : stats::median(x);
          summary_csv.row({feature, prop, g, std::to_string(x.size()), num(med), "nan", "nan",
                           "nan", e.what()});
          cell[feature][prop][g] = x.empty() ? "-" : fmt_value(med, fi) + " (n/a)";
        }
      }
      for (const auto& cmp : kComparisons) {
        try {
          const auto t = stats::mann_whitney_u(groups[cmp.a], groups[cmp.b]);
          const bool star = std::string_view(cmp.name).starts_with("task");
          const std::string marker = star ? stats::stars(t.p_value) : stats::superscript(t.p_value);
          marks[feature][prop][cmp.name] = marker;
          tests_csv.row({feature, prop, "mann_whitney", std::string(cmp.a) + "|" + cmp.b,
                         num(t.statistic), num(t.p_value), num(t.df), t.method,
                         std::to_string(groups[cmp.a].size()) + "|" +
                             std::to_string(groups[cmp.b].size()),
                         marker, t.flagged ? "true" : "false", ""});
        } catch (const DataError& e) {
          tests_csv.row({feature, prop, "mann_whitney", std::string(cmp.a) + "|" + cmp.b, "nan",
                         "nan", "nan", "", "", "", "", e.what()});
        }
      }
      try {
        std::vector<std::vector<double>> three = {by_category[corpus::Category::kCanonical],
                                                  by_category[corpus::Category::kNonCanonical],
                                                  by_category[corpus::Category::kNonLiterary]};
        const auto t = stats::kruskal_wallis(three);
        tests_csv.row({feature, prop, "kruskal_wallis", "can|non-can|non-lit", num(t.statistic),
                       num(t.p_value), num(t.df), t.method,
                       fmt::format("{}|{}|{}", three[0].size(), three[1].size(), three[2].size()),
                       stats::stars(t.p_value), t.flagged ? "true" : "false", ""});
      } catch (const DataError& e) {
        tests_csv.row({feature, prop, "kruskal_wallis", "can|non-can|non-lit", "nan", "nan", "nan",
                       "", "", "", "", e.what()});
      }
      for (auto cat : {corpus::Category::kCanonical, corpus::Category::kNonCanonical,
                       corpus::Category::kNonLiterary}) {
        const std::string g(corpus::category_name(cat));
        try {
          const auto t = stats::ks_normality(by_category[cat], ks_seed, c.ks_reps);
          tests_csv.row({feature, prop, "ks_normality", g, num(t.statistic), num(t.p_value),
                         num(t.df), t.method, std::to_string(by_category[cat].size()),
                         stats::stars(t.p_value), t.flagged ? "true" : "false", ""});
        } catch (const DataError& e) {
          tests_csv.row({feature, prop, "ks_normality", g, "nan", "nan", "nan", "", "", "", "",
                         e.what()});
        }
      }
    }
  }
  out.write("table1_summary.csv", summary_csv.str());
  out.write("table1_tests.csv", tests_csv.str());

  // Paper-style rendering: per feature, Lit / Non-Lit with task-1 stars, then
  // Can / Non-Can with superscripts against Non-Lit and task-2 stars.
  std::string text;
  constexpr std::size_t kFirst = 12;
  constexpr std::size_t kCol = 30;
  text += pad("", 4) + pad("", kFirst);
  for (series::Property p : series::kAllProperties) {
    text += pad(std::string(series::property_name(p)), kCol);
  }
  text += "\n";
  const std::map<std::string, std::string> labels = {
      {"lit", "Lit."}, {"non-lit", "Non-Lit."}, {"can", "Can."}, {"non-can", "Non-Can."}};
  for (const char* feature : kFeatureCodes) {
    auto line = [&](const std::string& head, const std::string& group, const char* sup) {
      text += pad(head, 4) + pad(labels.at(group), kFirst);
      for (series::Property p : series::kAllProperties) {
        const std::string prop(series::property_name(p));
        std::string v = cell[feature][prop][group];
        if (sup) {
          const std::string m = marks[feature][prop][sup];
          if (!m.empty()) v += "^" + m;
        }
        text += pad(v, kCol);
      }
      text += "\n";
    };
    auto star_line = [&](const char* cmp) {
      text += pad("", 4) + pad("", kFirst);
      for (series::Property p : series::kAllProperties) {
        text += pad(marks[feature][std::string(series::property_name(p))][cmp], kCol);
      }
      text += "\n";
    };
    line(feature, "lit", nullptr);
    line("", "non-lit", nullptr);
    star_line("task1");
    line("", "can", "can_vs_non-lit");
    line("", "non-can", "non-can_vs_non-lit");
    star_line("task2");
    text += "\n";
  }
  text +=
      "Median (95% order-statistic CI). Stars: Mann-Whitney, * p <= 0.05, ** p <= 0.01, "
      "*** p <= 0.001 (task 1: Lit. vs Non-Lit.; task 2: Can. vs Non-Can.). Superscripts 1/2/3: "
      "same thresholds against Non-Lit.\n";
  out.write("table1.txt", text);

  // Global MTLD ANOVA over the three categories.
  const auto mtld_rows =
      io::parse_csv(io::read_text(detail::stage_dir(c, "series") / "global_mtld.csv"));
  std::map<corpus::Category, std::vector<double>> mtld_groups;
  for (std::size_t r = 1; r < mtld_rows.size(); ++r) {
    const double v = io::parse_number(mtld_rows[r][2]);
    if (std::isfinite(v)) mtld_groups[corpus::parse_category(mtld_rows[r][1])].push_back(v);
  }
  Json anova = {{"test", "one_way_anova"}, {"groups", {"canonical", "non-canonical", "non-literary"}}};
  try {
    const auto t = stats::one_way_anova({mtld_groups[corpus::Category::kCanonical],
                                         mtld_groups[corpus::Category::kNonCanonical],
                                         mtld_groups[corpus::Category::kNonLiterary]});
    anova["F"] = t.statistic;
    anova["p_value"] = t.p_value;
    anova["df"] = t.df;
    anova["n"] = t.n_per_group;
  } catch (const DataError& e) {
    anova["error"] = e.what();
    spdlog::warn("stats: global MTLD ANOVA skipped: {}", e.what());
  }
  for (auto cat : {corpus::Category::kCanonical, corpus::Category::kNonCanonical,
                   corpus::Category::kNonLiterary}) {
    const auto& g = mtld_groups[cat];
    anova["means"][std::string(corpus::category_name(cat))] =
        g.empty() ? Json(nullptr) : Json(stats::mean(g));
  }
  out.write_json("mtld_anova.json", anova);
  out.write_json("stats.json", {{"ci_method", "binomial order statistic, >= 95% coverage"},
                                {"omnibus", "kruskal_wallis"},
                                {"pairwise", "mann_whitney_u, two-sided"},
                                {"ks_reps", c.ks_reps},
                                {"ks_seed", ks_seed},
                                {"variance", "population"}});
  out.finish();
  spdlog::info("stats: Table 1 written");
}

void Pipeline::classify() {
  const RunConfig& c = config_;
  const std::string fractal_key = detail::upstream_key(c, "fractal");
  const Json echo = Json::parse(c.echo());
  const std::string key = key_of({"classify", std::string(version()), fractal_key,
                                  detail::dump(echo["svm"]), std::to_string(c.seed)});
  if (!force_ && detail::stage_current(c, "classify", key)) {
    spdlog::info("classify: up to date");
    skipped_.push_back("classify");
    return;
  }
  const auto features = read_features(c);
  std::vector<classify::DocumentFeatures> docs;
  std::map<std::string, std::size_t> index;
  for (const auto& row : features) {
    auto [it, inserted] = index.emplace(row.doc_id, docs.size());
    if (inserted) {
      docs.push_back({row.doc_id, row.category, {}});
    }
    classify::PropertyFeatures pf;
    pf.variance = row.v;
    pf.fractal = row.hda;
    docs[it->second].properties[row.property] = pf;
  }
  if (docs.empty()) throw DataError("classify: no feature rows");
  const auto table = classify::assemble_features(docs);

  classify::TaskOptions options;
  options.svm.c = c.svm_c;
  options.svm.gamma = c.svm_gamma;
  options.grid_search = c.grid_search;
  options.scale_on_full_table = c.scale_on_full_table;
  options.jobs = c.jobs;
  const std::uint64_t seed = derive_seed(c.seed, "classify");
  const auto rows = classify::table2(table, seed, options);

  StageWriter out(c, "classify", key);
  {
    std::vector<std::string> header = {"doc_id", "category"};
    header.insert(header.end(), table.columns.begin(), table.columns.end());
    io::CsvWriter csv(header);
    for (std::size_t r = 0; r < table.rows(); ++r) {
      std::vector<std::string> fields = {table.doc_ids[r],
                                         std::string(corpus::category_name(table.categories[r]))};
      for (Eigen::Index k = 0; k < table.values.cols(); ++k) {
        fields.push_back(num(table.values(static_cast<Eigen::Index>(r), k)));
      }
      csv.row(fields);
    }
    out.write("feature_table.csv", csv.str());
  }
  io::CsvWriter t2({"row", "kind", "task", "subset", "n_pos", "n_neg", "excluded", "mean", "sd",
                    "baseline_mean", "baseline_sd", "t", "p_value", "dagger", "dropped_columns"});
  io::CsvWriter scores({"row", "kind", "task", "split", "score", "baseline_score"});
  const std::array<classify::Task, 2> tasks = {classify::Task::kLiteraryVsNonLiterary,
                                               classify::Task::kCanonicalVsNonCanonical};
  for (const auto& row : rows) {
    for (const auto& [kind, per_task] : row.cells) {
      for (auto task : tasks) {
        const auto it = per_task.find(task);
        if (it == per_task.end()) continue;
        const auto& cell = it->second;
        std::string dropped;
        for (const auto& d : cell.result.dropped_columns) dropped += (dropped.empty() ? "" : "|") + d;
        t2.row({row.label, kind, std::string(classify::task_name(task)), cell.result.subset,
                std::to_string(cell.result.n_pos), std::to_string(cell.result.n_neg),
                std::to_string(cell.result.excluded_rows), num(cell.result.mean),
                num(cell.result.sd), num(cell.baseline.mean), num(cell.baseline.sd),
                num(cell.vs_chance.statistic), num(cell.vs_chance.p_value),
                cell.dagger ? "true" : "false", dropped});
        for (std::size_t k = 0; k < cell.result.scores.size(); ++k) {
          scores.row({row.label, kind, std::string(classify::task_name(task)),
                      std::to_string(k), num(cell.result.scores[k]),
                      num(cell.baseline.scores[k])});
        }
      }
    }
  }
  out.write("table2.csv", t2.str());
  out.write("scores.csv", scores.str());

  // Paper-style rendering: accuracy in percent, mean +- SD, dagger when not
  // significantly better than the permuted-label baseline.
  auto render = [&](const classify::Table2Row& row, const std::string& kind,
                    classify::Task task) -> std::string {
    const auto k = row.cells.find(kind);
    if (k == row.cells.end()) return "n/a";
    const auto t = k->second.find(task);
    if (t == k->second.end()) return "n/a";
    const auto& r = t->second;
    return fmt::format("{:.1f} ± {:.1f}{}", 100.0 * r.result.mean, 100.0 * r.result.sd,
                       r.dagger ? " †" : "");
  };
  std::string text;
  constexpr std::size_t kLabel = 26;
  constexpr std::size_t kCol = 16;
  text += pad("", kLabel) + pad("Task 1", 2 * kCol) + pad("Task 2", 2 * kCol) + "\n";
  text += pad("", kLabel) + pad("Variability", kCol) + pad("Fractal", kCol) +
          pad("Variability", kCol) + pad("Fractal", kCol) + "\n";
  for (const auto& row : rows) {
    text += pad(row.label, kLabel);
    if (row.label.ends_with("combined")) {
      for (auto task : tasks) text += pad(render(row, "combined", task), 2 * kCol);
    } else {
      for (auto task : tasks) {
        text += pad(render(row, "variability", task), kCol);
        text += pad(render(row, "fractal", task), kCol);
      }
    }
    text += "\n";
  }
  text += fmt::format(
      "Balanced accuracy in %, mean ± SD over 5x2 cross-validation (seed {}). †: not "
      "significantly better than the permuted-label baseline (5x2cv paired t test, p > 0.05).\n",
      seed);
  out.write("table2.txt", text);
  out.write_json("classify.json",
                 {{"classify_seed", seed},
                  {"documents", table.rows()},
                  {"svm", echo["svm"]},
                  {"class_weights", "inverse class frequency"},
                  {"scaler", c.scale_on_full_table ? "full table" : "training folds"}});
  out.finish();
  spdlog::info("classify: Table 2 written");
}

void Pipeline::report() {
  const RunConfig& c = config_;
  const std::string key =
      key_of({"report", std::string(version()), detail::upstream_key(c, "tag"),
              detail::upstream_key(c, "series"), detail::upstream_key(c, "stats"),
              detail::upstream_key(c, "classify")});
  if (!force_ && detail::stage_current(c, "report", key)) {
    spdlog::info("report: up to date");
    skipped_.push_back("report");
    return;
  }
  StageWriter out(c, "report", key);
  const Json tag = detail::read_json(detail::stage_dir(c, "tag") / "tag.json");
  const auto ingest_rows =
      io::parse_csv(io::read_text(detail::stage_dir(c, "ingest") / "report.csv"));
  const auto availability =
      io::parse_csv(io::read_text(detail::stage_dir(c, "series") / "availability.csv"));
  std::size_t accepted = 0;
  for (std::size_t r = 1; r < ingest_rows.size(); ++r) accepted += ingest_rows[r][5] == "ok";
  std::size_t unavailable = 0;
  for (std::size_t r = 1; r < availability.size(); ++r) unavailable += availability[r][3] != "ok";

  std::string md = "# fractext report\n\n";
  md += fmt::format("- version: {}\n- config hash: {}\n- master seed: {}\n", version(), c.hash(),
                    c.seed);
  md += fmt::format("- documents: {} listed, {} accepted\n", ingest_rows.size() - 1, accepted);
  md += fmt::format("- tagger: {}", tag.value("backend", std::string("?")));
  if (tag.contains("gold_accuracy")) {
    md += fmt::format(" (accuracy {:.1f}% on {} gold tokens)",
                      100.0 * tag["gold_accuracy"].get<double>(),
                      tag["gold_tokens"].get<std::size_t>());
  }
  md += fmt::format("\n- unavailable series: {}\n\n", unavailable);
  md += "## Table 1: medians, confidence intervals and tests\n\n```\n" +
        io::read_text(detail::stage_dir(c, "stats") / "table1.txt") + "```\n\n";
  const Json anova = detail::read_json(detail::stage_dir(c, "stats") / "mtld_anova.json");
  if (anova.contains("F")) {
    md += fmt::format("Global MTLD ANOVA: F = {:.3f}, p = {:.4g}\n\n", anova["F"].get<double>(),
                      anova["p_value"].get<double>());
  } else {
    md += "Global MTLD ANOVA: not computed (" + anova.value("error", std::string()) + ")\n\n";
  }
  md += "## Table 2: classification\n\n```\n" +
        io::read_text(detail::stage_dir(c, "classify") / "table2.txt") + "```\n";
  out.write("report.md", md);
  out.finish();
  spdlog::info("report: {}", (out.dir() / "report.md").string());
}

}  // namespace fractext::pipeline
