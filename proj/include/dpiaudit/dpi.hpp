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

#ifndef DPIAUDIT_DPI_HPP_
#define DPIAUDIT_DPI_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "dpiaudit/attacks.hpp"
#include "dpiaudit/neighbors.hpp"

namespace dpiaudit {

// Data Plagiarism Index of one target point: composition of its K-nearest
// pooled neighborhood. ratio = count_synthetic / count_reference, +inf when
// no reference neighbor remains. For a fixed K, ordering points by ratio is
// identical to ordering by count_synthetic, which is what the attack uses
// as its (infinity-free) ranking statistic.
struct DpiScore {
  std::size_t count_synthetic = 0;
  std::size_t count_reference = 0;
  double ratio = 0.0;
};

struct ThresholdRule {
  enum class Kind { MedianOfTestScores, FixedRatio };
  Kind kind = Kind::MedianOfTestScores;
  double ratio = 1.0;  // FixedRatio only

  static ThresholdRule median() { return {Kind::MedianOfTestScores, 0.0}; }
  static ThresholdRule fixed_ratio(double c) { return {Kind::FixedRatio, c}; }
};

struct DpiConfig {
  std::size_t k = 20;
  Metric metric = Metric::L2;
  ThresholdRule threshold = ThresholdRule::median();
};

// Estimate of the data-copying statistic: p_ref and p_syn are the fractions
// of all reference / synthetic points captured by the K-neighborhood, and
// delta = p_syn * (1 - p_ref) is the probability that an independent
// Bernoulli(p_syn) draw strictly exceeds a Bernoulli(p_ref) draw.
struct DeltaEstimate {
  double p_ref = 0.0;
  double p_syn = 0.0;
  double delta = 0.0;
};

struct DpiAttackOutcome {
  AttackScores scores;          // continuous score = count_synthetic
  std::vector<int> decisions;   // I(score > threshold_count)
  double threshold_count = 0.0; // chosen c, in count units
};

DpiScore dpi_score(const PooledIndex& index, std::span<const double> x,
                   const DpiConfig& config);

// Scores every test point by its synthetic neighbor count and thresholds at
// the median score (midpoint convention for even n) or at the fixed ratio c
// translated into count units: count > c*K/(1+c).
DpiAttackOutcome dpi_attack(const PooledIndex& index,
                            const EncodedMatrix& test_points,
                            const DpiConfig& config);

DeltaEstimate delta_estimate(const PooledIndex& index, std::span<const double> x,
                             const DpiConfig& config, std::size_t n_ref_total,
                             std::size_t n_syn_total);

// Same formula, applied to already-computed neighborhood counts.
DeltaEstimate delta_from_counts(std::size_t count_reference,
                                std::size_t count_synthetic,
                                std::size_t n_ref_total,
                                std::size_t n_syn_total);

// Row ids whose count_synthetic reaches the top `percentile` of scores
// (nearest-rank from the top; ties at the cutoff are all included), ordered
// by score descending, then id ascending.
std::vector<std::size_t> top_copied(
    const std::vector<std::pair<std::size_t, DpiScore>>& scores,
    double percentile);

}  // namespace dpiaudit

#endif  // DPIAUDIT_DPI_HPP_
