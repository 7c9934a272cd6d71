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

#ifndef DPIAUDIT_LOGISTIC_HPP_
#define DPIAUDIT_LOGISTIC_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "dpiaudit/tabular.hpp"

namespace dpiaudit {

// Deterministic full-batch gradient-descent trainer: zero initialization,
// fixed iteration count, fixed accumulation order, no randomness. Identical
// inputs give bitwise-identical models. The L2 penalty applies to the
// weights, not the intercept.
struct LogisticConfig {
  std::size_t iterations = 500;
  double learning_rate = 0.1;
  double l2_penalty = 1e-3;
};

struct LogisticModel {
  std::vector<double> weights;
  double intercept = 0.0;

  // Fitted probability of class 1.
  double predict(std::span<const double> x) const;
};

// labels are 0/1, aligned with feature rows. Throws if the loss turns
// non-finite, reporting the iteration.
LogisticModel train_logistic(const EncodedMatrix& features,
                             std::span<const int> labels,
                             const LogisticConfig& config);

}  // namespace dpiaudit

#endif  // DPIAUDIT_LOGISTIC_HPP_
