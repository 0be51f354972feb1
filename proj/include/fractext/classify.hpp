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

// Feature tables, z-scaling, an RBF-kernel SVM trained by SMO, and the
// 5x2 cross-validated classification tasks.

#ifndef FRACTEXT_CLASSIFY_HPP_
#define FRACTEXT_CLASSIFY_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "fractext/corpus.hpp"
#include "fractext/series.hpp"
#include "fractext/stats.hpp"

namespace fractext::classify {

enum class Feature { kVariance, kHurst, kDimension, kAsymmetry };
inline constexpr std::array<Feature, 4> kAllFeatures = {
    Feature::kVariance, Feature::kHurst, Feature::kDimension, Feature::kAsymmetry};

// "V", "H", "D", "A".
std::string_view feature_code(Feature f);
// "V:noun", "H:sentence_length", ...
std::string column_name(Feature f, series::Property p);

// Per-document inputs: variance and, when MFDFA succeeded, H / D / A for each
// available property.
struct PropertyFeatures {
  double variance = 0.0;
  std::optional<std::array<double, 3>> fractal;  // H, D, A
};

struct DocumentFeatures {
  std::string doc_id;
  corpus::Category category = corpus::Category::kCanonical;
  std::map<series::Property, PropertyFeatures> properties;
};

// Documents x 28 columns. Missing cells are NaN; a row takes part in a subset
// only when all of the subset's columns are present.
struct FeatureTable {
  std::vector<std::string> doc_ids;
  std::vector<corpus::Category> categories;
  std::vector<std::string> columns;
  Eigen::MatrixXd values;

  std::size_t rows() const { return doc_ids.size(); }
  int column(std::string_view name) const;
  bool complete(std::size_t row, const std::vector<int>& cols) const;
};

FeatureTable assemble_features(const std::vector<DocumentFeatures>& docs);

struct FeatureSubset {
  std::string name;
  std::vector<std::string> columns;
};

FeatureSubset variability_subset(const std::vector<series::Property>& props);
FeatureSubset fractal_subset(const std::vector<series::Property>& props);
FeatureSubset combined_subset(const std::vector<series::Property>& props);
std::vector<series::Property> low_level_properties();
std::vector<series::Property> high_level_properties();

// Column-wise standardization with population SD. Columns with zero SD in the
// fitting data are dropped.
struct Scaler {
  std::vector<int> kept;
  std::vector<double> mean;
  std::vector<double> sd;
  std::vector<int> dropped;

  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;
};
Scaler fit_scaler(const Eigen::MatrixXd& train);

struct SvmParams {
  double c = 1.0;
  // exp(-gamma |u - v|^2); default 1 / (n_features * var(X)).
  std::optional<double> gamma;
  // Multipliers on C for the +1 and -1 classes.
  double weight_pos = 1.0;
  double weight_neg = 1.0;
  double tolerance = 1e-3;
  long max_iterations = 10'000'000;
  std::uint64_t seed = 1;
  bool record_objective = false;
};

struct SvmModel {
  Eigen::MatrixXd support_vectors;
  // alpha_i * y_i for each support vector; decision = sum + bias.
  std::vector<double> dual_coef;
  std::vector<double> alpha;
  std::vector<int> labels;
  double bias = 0.0;
  double c = 0.0;
  double gamma = 0.0;
  double weight_pos = 1.0;
  double weight_neg = 1.0;
  long iterations = 0;
  // Dual objective e'a - a'Qa/2 after every SMO step, when requested.
  std::vector<double> objective_trace;
  std::size_t n_features() const { return static_cast<std::size_t>(support_vectors.cols()); }
};

double default_gamma(const Eigen::MatrixXd& x);

// y holds +1 / -1. Throws DataError for fewer than two instances of a class
// and NumericalError when SMO does not reach the KKT tolerance.
SvmModel svm_train(const Eigen::MatrixXd& x, const std::vector<int>& y, const SvmParams& params);
std::vector<double> svm_decision(const SvmModel& model, const Eigen::MatrixXd& x);
// Sign of the decision value; exactly zero goes to +1.
std::vector<int> svm_predict(const SvmModel& model, const Eigen::MatrixXd& x);

enum class Task { kLiteraryVsNonLiterary, kCanonicalVsNonCanonical };
std::string_view task_name(Task t);
// +1 for literary (task 1) or canonical (task 2), -1 for the other class, 0
// when the document is not part of the task.
int task_label(Task t, corpus::Category c);

// Five repetitions of a stratified two-fold split. splits[r][f] lists the
// rows in fold f of repetition r.
struct CvPlan {
  std::uint64_t seed = 0;
  std::vector<std::array<std::vector<std::size_t>, 2>> splits;
};
CvPlan make_cv_plan(const std::vector<int>& labels, std::uint64_t seed, int repetitions = 5);

struct TaskOptions {
  SvmParams svm;
  // Inner grid search C in 10^{-1..2}, gamma in 2^{-4..2} on training folds.
  bool grid_search = false;
  // Fit the scaler on all rows instead of the training fold.
  bool scale_on_full_table = false;
  // Permute labels among the task rows before splitting (chance baseline).
  bool permute_labels = false;
  std::size_t jobs = 1;
};

struct TaskResult {
  Task task = Task::kLiteraryVsNonLiterary;
  std::string subset;
  std::vector<std::string> columns;
  std::vector<std::string> dropped_columns;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  std::size_t excluded_rows = 0;
  // Index 2*r + f: repetition r, test fold f.
  std::vector<double> scores;
  double mean = 0.0;
  double sd = 0.0;
  std::uint64_t seed = 0;
};

TaskResult run_task(const FeatureTable& table, Task task, const FeatureSubset& subset,
                    std::uint64_t seed, const TaskOptions& options = {});

struct Table2Cell {
  TaskResult result;
  TaskResult baseline;
  stats::TestResult vs_chance;
  // Not significantly better than the permuted-label baseline.
  bool dagger = false;
};

struct Table2Row {
  std::string label;
  // "variability", "fractal" or "combined" -> cell, per task.
  std::map<std::string, std::map<Task, Table2Cell>> cells;
};

// Property rows, then low-level, high-level and all-property groups with
// their combined rows. Rows whose subset has too few complete documents are
// skipped with a warning.
std::vector<Table2Row> table2(const FeatureTable& table, std::uint64_t seed,
                              const TaskOptions& options = {});

}  // namespace fractext::classify

#endif  // FRACTEXT_CLASSIFY_HPP_
