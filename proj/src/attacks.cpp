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

#include "dpiaudit/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "dpiaudit/parallel.hpp"

namespace dpiaudit {

namespace {

double min_distance_to(const EncodedMatrix& pool, std::span<const double> x,
                       Metric metric) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pool.n_rows; ++i) {
    best = std::min(best, comparable_distance(x, pool.row(i), metric));
  }
  return finalize_distance(best, metric);
}

void check_same_dim(const EncodedMatrix& a, const EncodedMatrix& b,
                    const char* what) {
  if (a.n_cols != b.n_cols) {
    throw DataError(std::string(what) + ": dimension mismatch (" +
                    std::to_string(a.n_cols) + " vs " +
                    std::to_string(b.n_cols) + ")");
  }
}

AttackScores make_scores(std::string name, std::size_t n) {
  AttackScores s;
  s.attack_name = std::move(name);
  s.scores.assign(n, 0.0);
  s.labels.assign(n, 0);
  return s;
}

// Midpoint of the two central order statistics for even n.
double median_of(std::vector<double> values) {
  const std::size_t n = values.size();
  std::sort(values.begin(), values.end());
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

AucResult auc_roc(const AttackScores& scores) {
  const std::size_t n = scores.scores.size();
  if (scores.labels.size() != n) {
    throw DataError("auc_roc: scores/labels size mismatch");
  }
  AucResult result;
  for (const int label : scores.labels) {
    if (label == 1) ++result.n_members;
    else ++result.n_nonmembers;
  }
  if (result.n_members == 0 || result.n_nonmembers == 0) {
    throw DataError("auc_roc: need at least one member and one nonmember");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores.scores[a] < scores.scores[b];
  });

  // Rank sum of members with average ranks over tie groups. Ranks are
  // half-integers, so the double accumulation below is exact.
  double member_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores.scores[order[j]] == scores.scores[order[i]]) ++j;
    const double avg_rank = 0.5 * (static_cast<double>(i + 1) +
                                   static_cast<double>(j));  // 1-based
    for (std::size_t t = i; t < j; ++t) {
      if (scores.labels[order[t]] == 1) member_rank_sum += avg_rank;
    }
    i = j;
  }

  const double n1 = static_cast<double>(result.n_members);
  const double n0 = static_cast<double>(result.n_nonmembers);
  const double u = member_rank_sum - n1 * (n1 + 1.0) / 2.0;
  result.auc = u / (n1 * n0);
  return result;
}

AttackScores gan_leaks(const EncodedMatrix& synthetic,
                       const EncodedMatrix& test_points, Metric metric) {
  if (synthetic.n_rows == 0) throw DataError("gan_leaks: empty synthetic set");
  check_same_dim(synthetic, test_points, "gan_leaks");
  AttackScores out = make_scores("gan_leaks", test_points.n_rows);
  parallel_for(test_points.n_rows, [&](std::size_t i) {
    out.scores[i] = -min_distance_to(synthetic, test_points.row(i), metric);
  });
  return out;
}

AttackScores gan_leaks_calibrated(const EncodedMatrix& synthetic,
                                  const EncodedMatrix& reference,
                                  const EncodedMatrix& test_points,
                                  Metric metric) {
  if (synthetic.n_rows == 0 || reference.n_rows == 0) {
    throw DataError("gan_leaks_calibrated: empty pool");
  }
  check_same_dim(synthetic, test_points, "gan_leaks_calibrated");
  check_same_dim(reference, test_points, "gan_leaks_calibrated");
  AttackScores out = make_scores("gan_leaks_calibrated", test_points.n_rows);
  parallel_for(test_points.n_rows, [&](std::size_t i) {
    const std::span<const double> x = test_points.row(i);
    out.scores[i] = min_distance_to(reference, x, metric) -
                    min_distance_to(synthetic, x, metric);
  });
  return out;
}

AttackScores dcr_attack(const EncodedMatrix& synthetic,
                        const EncodedMatrix& reference,
                        const EncodedMatrix& test_points, Metric metric) {
  AttackScores out =
      gan_leaks_calibrated(synthetic, reference, test_points, metric);
  out.attack_name = "dcr";
  return out;
}

AttackScores mc_attack(const EncodedMatrix& synthetic,
                       const EncodedMatrix& test_points, Metric metric,
                       const RadiusRule& radius_rule) {
  if (synthetic.n_rows == 0) throw DataError("mc_attack: empty synthetic set");
  check_same_dim(synthetic, test_points, "mc_attack");

  double radius = radius_rule.radius;
  if (radius_rule.kind == RadiusRule::Kind::Fixed) {
    if (radius <= 0.0) throw DataError("mc_attack: fixed radius must be > 0");
  } else {
    std::vector<double> nearest(test_points.n_rows);
    parallel_for(test_points.n_rows, [&](std::size_t i) {
      nearest[i] = min_distance_to(synthetic, test_points.row(i), metric);
    });
    radius = median_of(std::move(nearest));
  }

  AttackScores out = make_scores("mc", test_points.n_rows);
  parallel_for(test_points.n_rows, [&](std::size_t i) {
    const std::span<const double> x = test_points.row(i);
    std::size_t count = 0;
    for (std::size_t s = 0; s < synthetic.n_rows; ++s) {
      if (distance(x, synthetic.row(s), metric) <= radius) ++count;
    }
    out.scores[i] = static_cast<double>(count);
  });
  return out;
}

AttackScores logan_calibrated(const EncodedMatrix& synthetic,
                              const EncodedMatrix& reference,
                              const EncodedMatrix& test_points,
                              const LogisticConfig& train_config) {
  if (synthetic.n_rows == 0 || reference.n_rows == 0) {
    throw DataError("logan_calibrated: empty pool");
  }
  check_same_dim(synthetic, reference, "logan_calibrated");
  check_same_dim(synthetic, test_points, "logan_calibrated");

  // Stack synthetic (class 1) then reference (class 0) in a fixed order.
  EncodedMatrix features;
  features.n_rows = synthetic.n_rows + reference.n_rows;
  features.n_cols = synthetic.n_cols;
  features.values.reserve(features.n_rows * features.n_cols);
  features.values.insert(features.values.end(), synthetic.values.begin(),
                         synthetic.values.end());
  features.values.insert(features.values.end(), reference.values.begin(),
                         reference.values.end());
  std::vector<int> labels(features.n_rows, 0);
  std::fill(labels.begin(), labels.begin() + synthetic.n_rows, 1);

  const LogisticModel model = train_logistic(features, labels, train_config);

  AttackScores out = make_scores("logan", test_points.n_rows);
  parallel_for(test_points.n_rows, [&](std::size_t i) {
    out.scores[i] = model.predict(test_points.row(i));
  });
  return out;
}

double identical_match_share(const TabularDataset& train,
                             const TabularDataset& synthetic) {
  if (!same_schema(train.schema, synthetic.schema)) {
    throw DataError("identical_match_share: schema mismatch");
  }
  if (synthetic.n_rows() == 0) return 0.0;

  // Exact all-field equality via a canonical string key per row. Numeric
  // cells use the shortest round-trip representation, so equal doubles map
  // to equal keys.
  auto row_key = [](const Row& row) {
    std::string key;
    for (const auto& value : row) {
      key += value_to_string(value);
      key.push_back('\x1f');
    }
    return key;
  };

  std::unordered_set<std::string> train_rows;
  train_rows.reserve(train.n_rows());
  for (const auto& row : train.rows) train_rows.insert(row_key(row));

  std::size_t matches = 0;
  for (const auto& row : synthetic.rows) {
    if (train_rows.contains(row_key(row))) ++matches;
  }
  return static_cast<double>(matches) / static_cast<double>(synthetic.n_rows());
}

double score_correlation(const AttackScores& a, const AttackScores& b) {
  const std::size_t n = a.scores.size();
  if (b.scores.size() != n || n == 0) {
    throw DataError("score_correlation: score vectors must align");
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_a += a.scores[i];
    mean_b += b.scores[i];
  }
  mean_a *= inv_n;
  mean_b *= inv_n;
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a.scores[i] - mean_a;
    const double db = b.scores[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0.0 || var_b == 0.0) {
    throw DataError("score_correlation: constant score vector (undefined)");
  }
  return cov / std::sqrt(var_a * var_b);
}

}  // namespace dpiaudit
