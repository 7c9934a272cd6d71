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

#ifndef DPIAUDIT_QUALITY_HPP_
#define DPIAUDIT_QUALITY_HPP_

#include <optional>
#include <string>
#include <vector>

#include "dpiaudit/tabular.hpp"

namespace dpiaudit {

struct BandwidthRule {
  enum class Kind { MedianHeuristic, Fixed };
  Kind kind = Kind::MedianHeuristic;
  double sigma = 1.0;  // Fixed only; must be > 0

  static BandwidthRule median_heuristic() { return {Kind::MedianHeuristic, 0.0}; }
  static BandwidthRule fixed(double sigma) { return {Kind::Fixed, sigma}; }
};

// Unbiased (U-statistic) squared-MMD estimate with Gaussian kernel
// k(u,v) = exp(-||u-v||^2 / (2 sigma^2)). The median heuristic takes the
// median pairwise L2 distance over the pooled sample, seeded-subsampled to
// at most 2000 points. The estimate can dip slightly below zero.
double mmd_rbf(const EncodedMatrix& a, const EncodedMatrix& b,
               const BandwidthRule& bandwidth_rule);

struct MarginalDistance {
  std::string column;
  ColumnKind kind = ColumnKind::Numeric;
  double value = 0.0;
};

struct MarginalWassersteinResult {
  std::vector<MarginalDistance> columns;
  double mean = 0.0;  // unweighted mean across columns
};

// Per-column distribution distance on raw values: exact 1-D Wasserstein-1
// between empirical distributions for numeric columns, total variation
// between category frequencies for categorical ones.
MarginalWassersteinResult marginal_wasserstein(const TabularDataset& a,
                                               const TabularDataset& b);

// Train-on-synthetic / test-on-holdout probe: the deterministic linear
// logistic classifier is fit on the synthetic set and scored by AUCROC on
// the holdout set. The label column must be categorical with exactly two
// categories present in both datasets; features are encoded with an encoder
// fit on synthetic + holdout excluding the label.
double utility_probe(const TabularDataset& synthetic,
                     const TabularDataset& holdout,
                     const std::string& label_column);

struct QualityReport {
  double mmd = 0.0;      // clamped at 0 for reporting
  double mmd_raw = 0.0;  // unclamped estimate
  double wasserstein_mean = 0.0;
  std::vector<MarginalDistance> wasserstein_columns;
  std::optional<double> utility_auc;
};

}  // namespace dpiaudit

#endif  // DPIAUDIT_QUALITY_HPP_
