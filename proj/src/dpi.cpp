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

#include "dpiaudit/dpi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dpiaudit/parallel.hpp"

namespace dpiaudit {

DpiScore dpi_score(const PooledIndex& index, std::span<const double> x,
                   const DpiConfig& config) {
  const NeighborSet neighbors = knn(index, x, config.k);
  DpiScore score;
  score.count_synthetic = neighbors.count_synthetic;
  score.count_reference = neighbors.count_reference;
  if (score.count_reference > 0) {
    score.ratio = static_cast<double>(score.count_synthetic) /
                  static_cast<double>(score.count_reference);
  } else {
    score.ratio = score.count_synthetic > 0
                      ? std::numeric_limits<double>::infinity()
                      : 0.0;
  }
  return score;
}

DpiAttackOutcome dpi_attack(const PooledIndex& index,
                            const EncodedMatrix& test_points,
                            const DpiConfig& config) {
  if (test_points.n_rows == 0) {
    throw DataError("dpi_attack: empty test set");
  }
  DpiAttackOutcome outcome;
  outcome.scores.attack_name = "dpi";
  outcome.scores.scores.resize(test_points.n_rows);
  outcome.scores.labels.assign(test_points.n_rows, 0);

  parallel_for(test_points.n_rows, [&](std::size_t i) {
    const DpiScore s = dpi_score(index, test_points.row(i), config);
    outcome.scores.scores[i] = static_cast<double>(s.count_synthetic);
  });

  if (config.threshold.kind == ThresholdRule::Kind::MedianOfTestScores) {
    std::vector<double> sorted = outcome.scores.scores;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    outcome.threshold_count =
        n % 2 == 1 ? sorted[n / 2]
                   : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  } else {
    // ratio > c  <=>  count > c*K/(1+c) at fixed K.
    const double c = config.threshold.ratio;
    outcome.threshold_count =
        c * static_cast<double>(config.k) / (1.0 + c);
  }

  outcome.decisions.resize(test_points.n_rows);
  for (std::size_t i = 0; i < test_points.n_rows; ++i) {
    outcome.decisions[i] =
        outcome.scores.scores[i] > outcome.threshold_count ? 1 : 0;
  }
  return outcome;
}

DeltaEstimate delta_from_counts(std::size_t count_reference,
                                std::size_t count_synthetic,
                                std::size_t n_ref_total,
                                std::size_t n_syn_total) {
  if (n_ref_total == 0 || n_syn_total == 0) {
    throw DataError("delta_estimate: totals must be positive");
  }
  DeltaEstimate estimate;
  estimate.p_ref = static_cast<double>(count_reference) /
                   static_cast<double>(n_ref_total);
  estimate.p_syn = static_cast<double>(count_synthetic) /
                   static_cast<double>(n_syn_total);
  estimate.delta = estimate.p_syn * (1.0 - estimate.p_ref);
  return estimate;
}

DeltaEstimate delta_estimate(const PooledIndex& index, std::span<const double> x,
                             const DpiConfig& config, std::size_t n_ref_total,
                             std::size_t n_syn_total) {
  const DpiScore score = dpi_score(index, x, config);
  return delta_from_counts(score.count_reference, score.count_synthetic,
                           n_ref_total, n_syn_total);
}

std::vector<std::size_t> top_copied(
    const std::vector<std::pair<std::size_t, DpiScore>>& scores,
    double percentile) {
  if (scores.empty()) throw DataError("top_copied: no scores");
  if (!(percentile > 0.0) || !(percentile < 100.0)) {
    throw DataError("top_copied: percentile must lie in (0, 100)");
  }

  std::vector<std::pair<std::size_t, std::size_t>> by_score;  // (count, id)
  by_score.reserve(scores.size());
  for (const auto& [id, score] : scores) {
    by_score.emplace_back(score.count_synthetic, id);
  }
  std::sort(by_score.begin(), by_score.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });

  // Nearest-rank cutoff from the top: at least one row, ties all included.
  const std::size_t n = by_score.size();
  const std::size_t rank = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(static_cast<double>(n) *
                                             percentile / 100.0)));
  const std::size_t cutoff = by_score[rank - 1].first;

  std::vector<std::size_t> ids;
  for (const auto& [count, id] : by_score) {
    if (count < cutoff) break;
    ids.push_back(id);
  }
  return ids;
}

}  // namespace dpiaudit
