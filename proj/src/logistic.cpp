//
// Copyright 2026 The dpi-audit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dpiaudit/logistic.hpp"

#include <cmath>
#include <string>

namespace dpiaudit {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

double LogisticModel::predict(std::span<const double> x) const {
  double z = intercept;
  for (std::size_t d = 0; d < weights.size(); ++d) z += weights[d] * x[d];
  return sigmoid(z);
}

LogisticModel train_logistic(const EncodedMatrix& features,
                             std::span<const int> labels,
                             const LogisticConfig& config) {
  const std::size_t n = features.n_rows;
  const std::size_t dim = features.n_cols;
  if (n == 0) throw DataError("train_logistic: no training rows");
  if (labels.size() != n) {
    throw DataError("train_logistic: labels/features size mismatch");
  }

  LogisticModel model;
  model.weights.assign(dim, 0.0);
  model.intercept = 0.0;

  std::vector<double> grad(dim, 0.0);
  const double inv_n = 1.0 / static_cast<double>(n);

  for (std::size_t iter = 0; iter < config.iterations; ++iter) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_intercept = 0.0;
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::span<const double> x = features.row(i);
      double z = model.intercept;
      for (std::size_t d = 0; d < dim; ++d) z += model.weights[d] * x[d];
      const double p = sigmoid(z);
      const double y = static_cast<double>(labels[i]);
      // Cross-entropy written on the logit to avoid log(0).
      loss += (y > 0.5 ? std::log1p(std::exp(-z)) : std::log1p(std::exp(z)));
      const double residual = p - y;
      for (std::size_t d = 0; d < dim; ++d) grad[d] += residual * x[d];
      grad_intercept += residual;
    }
    loss *= inv_n;
    double penalty = 0.0;
    for (std::size_t d = 0; d < dim; ++d) penalty += model.weights[d] * model.weights[d];
    loss += 0.5 * config.l2_penalty * penalty;
    if (!std::isfinite(loss)) {
      throw DataError("train_logistic: non-finite loss at iteration " +
                      std::to_string(iter));
    }
    for (std::size_t d = 0; d < dim; ++d) {
      model.weights[d] -= config.learning_rate *
                          (grad[d] * inv_n + config.l2_penalty * model.weights[d]);
    }
    model.intercept -= config.learning_rate * grad_intercept * inv_n;
  }
  return model;
}

}  // namespace dpiaudit
