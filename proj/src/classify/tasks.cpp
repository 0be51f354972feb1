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

// Feature tables, scaling and the cross-validated classification tasks.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <spdlog/spdlog.h>

#include "fractext/classify.hpp"
#include "fractext/error.hpp"
#include "fractext/parallel.hpp"
#include "fractext/random.hpp"

namespace fractext::classify {

std::string_view feature_code(Feature f) {
  switch (f) {
    case Feature::kVariance:
      return "V";
    case Feature::kHurst:
      return "H";
    case Feature::kDimension:
      return "D";
    case Feature::kAsymmetry:
      return "A";
  }
  return "?";
}

std::string column_name(Feature f, series::Property p) {
  return std::string(feature_code(f)) + ":" + std::string(series::property_name(p));
}

int FeatureTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return static_cast<int>(i);
  }
  return -1;
}

bool FeatureTable::complete(std::size_t row, const std::vector<int>& cols) const {
  for (int c : cols) {
    if (!std::isfinite(values(static_cast<Eigen::Index>(row), c))) return false;
  }
  return true;
}

FeatureTable assemble_features(const std::vector<DocumentFeatures>& docs) {
  if (docs.empty()) throw DataError("feature table: no documents");
  FeatureTable table;
  for (series::Property p : series::kAllProperties) {
    for (Feature f : kAllFeatures) table.columns.push_back(column_name(f, p));
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  table.values = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(docs.size()),
                                           static_cast<Eigen::Index>(table.columns.size()), nan);
  std::set<std::string> seen;
  for (std::size_t r = 0; r < docs.size(); ++r) {
    const DocumentFeatures& doc = docs[r];
    if (!seen.insert(doc.doc_id).second) {
      throw DataError("feature table: duplicate document " + doc.doc_id);
    }
    table.doc_ids.push_back(doc.doc_id);
    table.categories.push_back(doc.category);
    const auto row = static_cast<Eigen::Index>(r);
    for (std::size_t pi = 0; pi < series::kAllProperties.size(); ++pi) {
      const auto it = doc.properties.find(series::kAllProperties[pi]);
      const auto base = static_cast<Eigen::Index>(4 * pi);
      if (it == doc.properties.end()) continue;
      table.values(row, base) = it->second.variance;
      if (it->second.fractal) {
        for (int k = 0; k < 3; ++k) table.values(row, base + 1 + k) = (*it->second.fractal)[k];
      }
    }
  }
  return table;
}

namespace {

std::string join_names(const std::vector<series::Property>& props) {
  if (props.size() == series::kAllProperties.size()) return "all";
  if (props == low_level_properties()) return "low-level";
  if (props == high_level_properties()) return "high-level";
  std::string out;
  for (series::Property p : props) {
    if (!out.empty()) out += "+";
    out += series::property_name(p);
  }
  return out;
}

std::vector<std::string> columns_for(const std::vector<series::Property>& props,
                                     std::initializer_list<Feature> features) {
  std::vector<std::string> cols;
  for (series::Property p : props) {
    for (Feature f : features) cols.push_back(column_name(f, p));
  }
  return cols;
}

}  // namespace

FeatureSubset variability_subset(const std::vector<series::Property>& props) {
  return {join_names(props) + "/variability", columns_for(props, {Feature::kVariance})};
}

FeatureSubset fractal_subset(const std::vector<series::Property>& props) {
  return {join_names(props) + "/fractal",
          columns_for(props, {Feature::kHurst, Feature::kDimension, Feature::kAsymmetry})};
}

FeatureSubset combined_subset(const std::vector<series::Property>& props) {
  return {join_names(props) + "/combined",
          columns_for(props, {Feature::kVariance, Feature::kHurst, Feature::kDimension,
                              Feature::kAsymmetry})};
}

std::vector<series::Property> low_level_properties() {
  std::vector<series::Property> out;
  for (series::Property p : series::kAllProperties) {
    if (series::is_low_level(p)) out.push_back(p);
  }
  return out;
}

std::vector<series::Property> high_level_properties() {
  std::vector<series::Property> out;
  for (series::Property p : series::kAllProperties) {
    if (!series::is_low_level(p)) out.push_back(p);
  }
  return out;
}

Eigen::MatrixXd Scaler::apply(const Eigen::MatrixXd& x) const {
  Eigen::MatrixXd out(x.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = (x.col(kept[k]).array() - mean[k]) / sd[k];
  }
  return out;
}

Scaler fit_scaler(const Eigen::MatrixXd& train) {
  if (train.rows() < 2) throw DataError("scaler: need at least two rows");
  Scaler s;
  for (Eigen::Index c = 0; c < train.cols(); ++c) {
    const double mu = train.col(c).mean();
    const double sd = std::sqrt((train.col(c).array() - mu).square().mean());
    if (sd > 0.0 && std::isfinite(sd)) {
      s.kept.push_back(static_cast<int>(c));
      s.mean.push_back(mu);
      s.sd.push_back(sd);
    } else {
      s.dropped.push_back(static_cast<int>(c));
    }
  }
  return s;
}

std::string_view task_name(Task t) {
  return t == Task::kLiteraryVsNonLiterary ? "task1" : "task2";
}

int task_label(Task t, corpus::Category c) {
  if (t == Task::kLiteraryVsNonLiterary) return corpus::is_literary(c) ? 1 : -1;
  switch (c) {
    case corpus::Category::kCanonical:
      return 1;
    case corpus::Category::kNonCanonical:
      return -1;
    case corpus::Category::kNonLiterary:
      return 0;
  }
  return 0;
}

CvPlan make_cv_plan(const std::vector<int>& labels, std::uint64_t seed, int repetitions) {
  if (repetitions < 1) throw UsageError("cv plan: repetitions must be positive");
  std::vector<int> classes(labels.begin(), labels.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  for (int cls : classes) {
    if (std::count(labels.begin(), labels.end(), cls) < 2) {
      throw DataError("cv plan: class " + std::to_string(cls) + " has fewer than 2 instances");
    }
  }
  CvPlan plan;
  plan.seed = seed;
  for (int r = 0; r < repetitions; ++r) {
    Rng rng(derive_seed(seed, "cv", static_cast<std::uint64_t>(r)));
    std::array<std::vector<std::size_t>, 2> folds;
    for (int cls : classes) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == cls) members.push_back(i);
      }
      rng.shuffle(members);
      const std::size_t offset = rng.below(2);
      for (std::size_t k = 0; k < members.size(); ++k) {
        folds[(k + offset) % 2].push_back(members[k]);
      }
    }
    for (auto& f : folds) std::sort(f.begin(), f.end());
    plan.splits.push_back(std::move(folds));
  }
  return plan;
}

namespace {

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& x, const std::vector<std::size_t>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = x.row(static_cast<Eigen::Index>(rows[i]));
  }
  return out;
}

std::vector<int> take(const std::vector<int>& y, const std::vector<std::size_t>& rows) {
  std::vector<int> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) out.push_back(y[r]);
  return out;
}

void set_class_weights(SvmParams& p, const std::vector<int>& y) {
  const double n = static_cast<double>(y.size());
  const double pos = static_cast<double>(std::count(y.begin(), y.end(), 1));
  const double neg = n - pos;
  p.weight_pos = n / (2.0 * pos);
  p.weight_neg = n / (2.0 * neg);
}

double fit_and_score(const Eigen::MatrixXd& xtr, const std::vector<int>& ytr,
                     const Eigen::MatrixXd& xte, const std::vector<int>& yte,
                     const SvmParams& params) {
  SvmParams p = params;
  set_class_weights(p, ytr);
  const SvmModel model = svm_train(xtr, ytr, p);
  const std::vector<int> pred = svm_predict(model, xte);
  return stats::balanced_accuracy(stats::confusion_matrix(yte, pred));
}

// Inner two-fold search on the training rows only.
SvmParams grid_search(const Eigen::MatrixXd& x, const std::vector<int>& y, SvmParams base,
                      std::uint64_t seed) {
  const CvPlan inner = make_cv_plan(y, seed, 1);
  double best = -1.0;
  SvmParams chosen = base;
  for (int ce = -1; ce <= 2; ++ce) {
    for (int ge = -4; ge <= 2; ++ge) {
      SvmParams p = base;
      p.c = std::pow(10.0, ce);
      p.gamma = std::ldexp(1.0, ge);
      double total = 0.0;
      for (int f = 0; f < 2; ++f) {
        const auto& tr = inner.splits[0][1 - f];
        const auto& te = inner.splits[0][f];
        const Eigen::MatrixXd raw_tr = take_rows(x, tr);
        const Scaler s = fit_scaler(raw_tr);
        total += fit_and_score(s.apply(raw_tr), take(y, tr), s.apply(take_rows(x, te)),
                               take(y, te), p);
      }
      if (total > best) {
        best = total;
        chosen = p;
      }
    }
  }
  return chosen;
}

}  // namespace

TaskResult run_task(const FeatureTable& table, Task task, const FeatureSubset& subset,
                    std::uint64_t seed, const TaskOptions& options) {
  std::vector<int> cols;
  for (const std::string& name : subset.columns) {
    const int c = table.column(name);
    if (c < 0) throw UsageError("feature subset " + subset.name + ": unknown column " + name);
    cols.push_back(c);
  }
  if (cols.empty()) throw UsageError("feature subset " + subset.name + " is empty");

  TaskResult result;
  result.task = task;
  result.subset = subset.name;
  result.columns = subset.columns;
  result.seed = seed;

  std::vector<std::size_t> rows;
  std::vector<int> y;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    const int label = task_label(task, table.categories[r]);
    if (label == 0) continue;
    if (!table.complete(r, cols)) {
      ++result.excluded_rows;
      spdlog::debug("{} {}: excluding {} (missing feature)", task_name(task), subset.name,
                    table.doc_ids[r]);
      continue;
    }
    rows.push_back(r);
    y.push_back(label);
  }
  if (result.excluded_rows > 0) {
    spdlog::info("{} {}: {} document(s) excluded for missing features", task_name(task),
                 subset.name, result.excluded_rows);
  }
  result.n_pos = static_cast<std::size_t>(std::count(y.begin(), y.end(), 1));
  result.n_neg = y.size() - result.n_pos;
  if (result.n_pos < 4 || result.n_neg < 4) {
    throw DataError(std::string(task_name(task)) + " " + subset.name +
                    ": each class needs at least 4 documents, got " +
                    std::to_string(result.n_pos) + " and " + std::to_string(result.n_neg));
  }
  if (options.permute_labels) {
    Rng rng(derive_seed(seed, "permute-labels"));
    rng.shuffle(y);
  }

  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          table.values(static_cast<Eigen::Index>(rows[i]), cols[j]);
    }
  }

  const CvPlan plan = make_cv_plan(y, seed);
  const std::size_t n_splits = 2 * plan.splits.size();
  std::optional<Scaler> full_scaler;
  if (options.scale_on_full_table) full_scaler = fit_scaler(x);

  result.scores.assign(n_splits, 0.0);
  std::vector<std::vector<int>> dropped(n_splits);
  parallel_for(n_splits, options.jobs, [&](std::size_t k) {
    const auto& split = plan.splits[k / 2];
    const std::size_t test_fold = k % 2;
    const auto& tr = split[1 - test_fold];
    const auto& te = split[test_fold];
    const Eigen::MatrixXd raw_tr = take_rows(x, tr);
    const Scaler scaler = full_scaler ? *full_scaler : fit_scaler(raw_tr);
    dropped[k] = scaler.dropped;
    const Eigen::MatrixXd xtr = scaler.apply(raw_tr);
    const Eigen::MatrixXd xte = scaler.apply(take_rows(x, te));
    const std::vector<int> ytr = take(y, tr);
    SvmParams params = options.svm;
    params.seed = derive_seed(seed, "svm", k);
    if (options.grid_search) {
      try {
        params = grid_search(raw_tr, ytr, params, derive_seed(seed, "grid", k));
      } catch (const DataError& e) {
        spdlog::warn("{} {}: grid search skipped on split {}: {}", task_name(task), subset.name,
                     k, e.what());
      }
    }
    result.scores[k] = fit_and_score(xtr, ytr, xte, take(y, te), params);
  });

  std::set<int> dropped_all;
  for (const auto& d : dropped) dropped_all.insert(d.begin(), d.end());
  for (int c : dropped_all) {
    result.dropped_columns.push_back(subset.columns[static_cast<std::size_t>(c)]);
    spdlog::warn("{} {}: column {} is constant in a training fold and was dropped there",
                 task_name(task), subset.name, subset.columns[static_cast<std::size_t>(c)]);
  }
  result.mean = stats::mean(result.scores);
  result.sd = std::sqrt(stats::variance(result.scores, true));
  return result;
}

namespace {

Table2Cell evaluate_cell(const FeatureTable& table, Task task, const FeatureSubset& subset,
                         std::uint64_t seed, const TaskOptions& options) {
  Table2Cell cell;
  cell.result = run_task(table, task, subset, seed, options);
  TaskOptions permuted = options;
  permuted.permute_labels = true;
  cell.baseline = run_task(table, task, subset, seed, permuted);
  cell.vs_chance = stats::paired_5x2cv_t(cell.result.scores, cell.baseline.scores);
  cell.dagger = !(cell.vs_chance.p_value <= 0.05 && cell.result.mean > cell.baseline.mean);
  return cell;
}

}  // namespace

std::vector<Table2Row> table2(const FeatureTable& table, std::uint64_t seed,
                              const TaskOptions& options) {
  struct Spec {
    std::string label;
    std::vector<std::pair<std::string, FeatureSubset>> subsets;
  };
  std::vector<Spec> specs;
  for (series::Property p : series::kAllProperties) {
    specs.push_back({std::string(series::property_name(p)),
                     {{"variability", variability_subset({p})}, {"fractal", fractal_subset({p})}}});
  }
  const std::vector<std::pair<std::string, std::vector<series::Property>>> groups = {
      {"low-level", low_level_properties()},
      {"high-level", high_level_properties()},
      {"low & high-level", {series::kAllProperties.begin(), series::kAllProperties.end()}},
  };
  for (const auto& [label, props] : groups) {
    specs.push_back(
        {label, {{"variability", variability_subset(props)}, {"fractal", fractal_subset(props)}}});
    specs.push_back({label + " combined", {{"combined", combined_subset(props)}}});
  }

  // Tasks whose classes are too small in the whole table are skipped once.
  std::vector<Task> tasks;
  for (Task task : {Task::kLiteraryVsNonLiterary, Task::kCanonicalVsNonCanonical}) {
    std::size_t pos = 0;
    std::size_t neg = 0;
    for (corpus::Category cat : table.categories) {
      const int label = task_label(task, cat);
      pos += label == 1;
      neg += label == -1;
    }
    if (pos < 4 || neg < 4) {
      spdlog::warn("table 2: {} skipped, classes have {} and {} documents (need 4 each)",
                   task_name(task), pos, neg);
    } else {
      tasks.push_back(task);
    }
  }

  std::vector<Table2Row> rows;
  for (const Spec& spec : specs) {
    Table2Row row;
    row.label = spec.label;
    for (const auto& [kind, subset] : spec.subsets) {
      for (Task task : tasks) {
        try {
          row.cells[kind][task] = evaluate_cell(table, task, subset, seed, options);
        } catch (const DataError& e) {
          spdlog::warn("table 2 row '{}' {} {} skipped: {}", spec.label, kind, task_name(task),
                       e.what());
        }
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace fractext::classify
