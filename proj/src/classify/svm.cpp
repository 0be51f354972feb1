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

// C-SVM dual solved by SMO with second-order working-set selection.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "fractext/classify.hpp"
#include "fractext/error.hpp"
#include "fractext/random.hpp"

namespace fractext::classify {
namespace {

constexpr double kTau = 1e-12;

double rbf(const Eigen::Ref<const Eigen::RowVectorXd>& u,
           const Eigen::Ref<const Eigen::RowVectorXd>& v, double gamma) {
  return std::exp(-gamma * (u - v).squaredNorm());
}

}  // namespace

double default_gamma(const Eigen::MatrixXd& x) {
  const double d = static_cast<double>(std::max<Eigen::Index>(1, x.cols()));
  if (x.size() < 2) return 1.0 / d;
  const double mu = x.mean();
  const double var = (x.array() - mu).square().mean();
  if (!(var > 0.0) || !std::isfinite(var)) return 1.0 / d;
  return 1.0 / (d * var);
}

SvmModel svm_train(const Eigen::MatrixXd& x, const std::vector<int>& y, const SvmParams& params) {
  const std::size_t n = y.size();
  if (static_cast<std::size_t>(x.rows()) != n) {
    throw DataError("svm: " + std::to_string(x.rows()) + " rows but " + std::to_string(n) +
                    " labels");
  }
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  for (int label : y) {
    if (label == 1) {
      ++n_pos;
    } else if (label == -1) {
      ++n_neg;
    } else {
      throw DataError("svm: labels must be +1 or -1");
    }
  }
  if (n_pos < 2 || n_neg < 2) {
    throw DataError("svm: need at least two instances of each class, got " +
                    std::to_string(n_pos) + " and " + std::to_string(n_neg));
  }
  if (!(params.c > 0.0) || !(params.weight_pos > 0.0) || !(params.weight_neg > 0.0)) {
    throw UsageError("svm: C and class weights must be positive");
  }
  if (!x.allFinite()) throw DataError("svm: non-finite feature value");

  SvmModel model;
  model.c = params.c;
  model.gamma = params.gamma ? *params.gamma : default_gamma(x);
  if (!(model.gamma > 0.0)) throw UsageError("svm: gamma must be positive");
  model.weight_pos = params.weight_pos;
  model.weight_neg = params.weight_neg;

  Eigen::MatrixXd kernel(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    kernel(i, i) = 1.0;
    for (std::size_t j = 0; j < i; ++j) {
      const double k = rbf(x.row(i), x.row(j), model.gamma);
      kernel(i, j) = k;
      kernel(j, i) = k;
    }
  }
  auto q = [&](std::size_t i, std::size_t j) { return y[i] * y[j] * kernel(i, j); };

  std::vector<double> bound(n);
  for (std::size_t i = 0; i < n; ++i) {
    bound[i] = params.c * (y[i] == 1 ? params.weight_pos : params.weight_neg);
  }
  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);

  // Candidates are scanned in a seeded order; strict comparisons make the
  // first one in that order win ties.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(params.seed);
  rng.shuffle(order);

  auto in_up = [&](std::size_t t) {
    return (y[t] == 1 && alpha[t] < bound[t]) || (y[t] == -1 && alpha[t] > 0.0);
  };
  auto in_low = [&](std::size_t t) {
    return (y[t] == 1 && alpha[t] > 0.0) || (y[t] == -1 && alpha[t] < bound[t]);
  };

  long iter = 0;
  for (;;) {
    double g_max = -std::numeric_limits<double>::infinity();
    std::size_t i = n;
    for (std::size_t t : order) {
      if (in_up(t) && -y[t] * grad[t] > g_max) {
        g_max = -y[t] * grad[t];
        i = t;
      }
    }
    double g_max2 = -std::numeric_limits<double>::infinity();
    double obj_min = std::numeric_limits<double>::infinity();
    std::size_t j = n;
    for (std::size_t t : order) {
      if (!in_low(t)) continue;
      const double yg = y[t] * grad[t];
      g_max2 = std::max(g_max2, yg);
      if (i == n) continue;
      const double diff = g_max + yg;
      if (diff > 0.0) {
        double quad = kernel(i, i) + kernel(t, t) - 2.0 * kernel(i, t);
        if (quad <= 0.0) quad = kTau;
        const double obj = -(diff * diff) / quad;
        if (obj < obj_min) {
          obj_min = obj;
          j = t;
        }
      }
    }
    if (i == n || j == n || g_max + g_max2 < params.tolerance) break;
    if (iter >= params.max_iterations) {
      throw NumericalError("svm: SMO did not converge in " + std::to_string(iter) +
                           " iterations (KKT gap " + std::to_string(g_max + g_max2) + ")");
    }
    ++iter;

    const double old_i = alpha[i];
    const double old_j = alpha[j];
    const double ci = bound[i];
    const double cj = bound[j];
    double& ai = alpha[i];
    double& aj = alpha[j];
    if (y[i] != y[j]) {
      double quad = q(i, i) + q(j, j) + 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = ai - aj;
      ai += delta;
      aj += delta;
      if (diff > 0.0) {
        if (aj < 0.0) {
          aj = 0.0;
          ai = diff;
        }
      } else if (ai < 0.0) {
        ai = 0.0;
        aj = -diff;
      }
      if (diff > ci - cj) {
        if (ai > ci) {
          ai = ci;
          aj = ci - diff;
        }
      } else if (aj > cj) {
        aj = cj;
        ai = cj + diff;
      }
    } else {
      double quad = q(i, i) + q(j, j) - 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = ai + aj;
      ai -= delta;
      aj += delta;
      if (sum > ci) {
        if (ai > ci) {
          ai = ci;
          aj = sum - ci;
        }
      } else if (aj < 0.0) {
        aj = 0.0;
        ai = sum;
      }
      if (sum > cj) {
        if (aj > cj) {
          aj = cj;
          ai = sum - cj;
        }
      } else if (ai < 0.0) {
        ai = 0.0;
        aj = sum;
      }
    }
    const double d_i = ai - old_i;
    const double d_j = aj - old_j;
    for (std::size_t t = 0; t < n; ++t) grad[t] += q(t, i) * d_i + q(t, j) * d_j;

    if (params.record_objective) {
      double f = 0.0;
      for (std::size_t t = 0; t < n; ++t) f += alpha[t] * (grad[t] - 1.0);
      model.objective_trace.push_back(-0.5 * f);
    }
  }
  model.iterations = iter;

  double upper = std::numeric_limits<double>::infinity();
  double lower = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (alpha[t] >= bound[t]) {
      if (y[t] == -1) {
        upper = std::min(upper, yg);
      } else {
        lower = std::max(lower, yg);
      }
    } else if (alpha[t] <= 0.0) {
      if (y[t] == 1) {
        upper = std::min(upper, yg);
      } else {
        lower = std::max(lower, yg);
      }
    } else {
      ++free_count;
      free_sum += yg;
    }
  }
  const double rho =
      free_count > 0 ? free_sum / static_cast<double>(free_count) : 0.5 * (upper + lower);
  model.bias = -rho;

  std::vector<std::size_t> support;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0.0) support.push_back(t);
  }
  model.support_vectors.resize(static_cast<Eigen::Index>(support.size()), x.cols());
  for (std::size_t s = 0; s < support.size(); ++s) {
    const std::size_t t = support[s];
    model.support_vectors.row(static_cast<Eigen::Index>(s)) = x.row(t);
    model.alpha.push_back(alpha[t]);
    model.labels.push_back(y[t]);
    model.dual_coef.push_back(alpha[t] * y[t]);
  }
  return model;
}

std::vector<double> svm_decision(const SvmModel& model, const Eigen::MatrixXd& x) {
  if (x.rows() > 0 && static_cast<std::size_t>(x.cols()) != model.n_features() &&
      model.support_vectors.rows() > 0) {
    throw DataError("svm: model has " + std::to_string(model.n_features()) +
                    " features, input has " + std::to_string(x.cols()));
  }
  std::vector<double> out(static_cast<std::size_t>(x.rows()), model.bias);
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    double sum = model.bias;
    for (Eigen::Index s = 0; s < model.support_vectors.rows(); ++s) {
      sum += model.dual_coef[static_cast<std::size_t>(s)] *
             rbf(model.support_vectors.row(s), x.row(r), model.gamma);
    }
    out[static_cast<std::size_t>(r)] = sum;
  }
  return out;
}

std::vector<int> svm_predict(const SvmModel& model, const Eigen::MatrixXd& x) {
  const std::vector<double> dec = svm_decision(model, x);
  std::vector<int> out(dec.size());
  for (std::size_t i = 0; i < dec.size(); ++i) out[i] = dec[i] >= 0.0 ? 1 : -1;
  return out;
}

}  // namespace fractext::classify
