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

#ifndef DPIAUDIT_ATTACKS_HPP_
#define DPIAUDIT_ATTACKS_HPP_

#include <string>
#include <vector>

#include "dpiaudit/logistic.hpp"
#include "dpiaudit/neighbors.hpp"
#include "dpiaudit/tabular.hpp"

namespace dpiaudit {

// Per-test-point scores under the shared convention: higher score means
// more likely member. Labels (1 = member, 0 = nonmember) are attached by
// the caller once the test set is known; attacks emit them zero-filled.
struct AttackScores {
  std::vector<double> scores;
  std::vector<int> labels;
  std::string attack_name;
};

struct AucResult {
  double auc = 0.0;
  std::size_t n_members = 0;
  std::size_t n_nonmembers = 0;
};

// Tie-corrected Mann-Whitney statistic: P(member score > nonmember score)
// plus half the tie probability. Exact rank computation, no trapezoids;
// equals the all-pairs count bit-for-bit (rank sums stay on half-integers).
AucResult auc_roc(const AttackScores& scores);

// Negated distance to the nearest synthetic point.
AttackScores gan_leaks(const EncodedMatrix& synthetic,
                       const EncodedMatrix& test_points, Metric metric);

// Nearest-reference distance minus nearest-synthetic distance.
AttackScores gan_leaks_calibrated(const EncodedMatrix& synthetic,
                                  const EncodedMatrix& reference,
                                  const EncodedMatrix& test_points,
                                  Metric metric);

// Identical scoring to gan_leaks_calibrated under the similarity-metric
// framing (distance to closest record); kept as a named alias so reports
// can present both.
AttackScores dcr_attack(const EncodedMatrix& synthetic,
                        const EncodedMatrix& reference,
                        const EncodedMatrix& test_points, Metric metric);

struct RadiusRule {
  enum class Kind { MedianPairwise, Fixed };
  Kind kind = Kind::MedianPairwise;
  double radius = 0.0;  // Fixed only; must be > 0

  static RadiusRule median_pairwise() { return {Kind::MedianPairwise, 0.0}; }
  static RadiusRule fixed(double r) { return {Kind::Fixed, r}; }
};

// Count of synthetic points within a radius of the test point. Under
// MedianPairwise the radius is the median over test points of the
// nearest-synthetic distance, computed once for the whole batch.
AttackScores mc_attack(const EncodedMatrix& synthetic,
                       const EncodedMatrix& test_points, Metric metric,
                       const RadiusRule& radius_rule);

// Calibrated discriminator attack: a deterministic linear logistic model is
// trained to separate synthetic (class 1) from reference (class 0); the
// score is the fitted probability of class 1.
AttackScores logan_calibrated(const EncodedMatrix& synthetic,
                              const EncodedMatrix& reference,
                              const EncodedMatrix& test_points,
                              const LogisticConfig& train_config);

// Fraction of synthetic rows exactly equal (all fields) to at least one
// training row.
double identical_match_share(const TabularDataset& train,
                             const TabularDataset& synthetic);

// Sample Pearson correlation between two attacks' scores over the same test
// points. Constant score vectors are an error (undefined correlation).
double score_correlation(const AttackScores& a, const AttackScores& b);

}  // namespace dpiaudit

#endif  // DPIAUDIT_ATTACKS_HPP_
