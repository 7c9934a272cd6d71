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

#include "dpiaudit/quality.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dpiaudit/attacks.hpp"
#include "dpiaudit/logistic.hpp"
#include "dpiaudit/neighbors.hpp"
#include "dpiaudit/rng.hpp"

namespace dpiaudit {

namespace {

constexpr std::size_t kMedianSubsampleCap = 2000;
constexpr std::uint64_t kMedianSubsampleSeed = 0x5D1A7B4C9E2F8A03ULL;

double median_heuristic_sigma(const EncodedMatrix& a, const EncodedMatrix& b) {
  // Pool rows of both samples, cap the pool at a seeded subsample.
  std::vector<std::span<const double>> pooled;
  pooled.reserve(a.n_rows + b.n_rows);
  for (std::size_t i = 0; i < a.n_rows; ++i) pooled.push_back(a.row(i));
  for (std::size_t i = 0; i < b.n_rows; ++i) pooled.push_back(b.row(i));

  if (pooled.size() > kMedianSubsampleCap) {
    const std::vector<std::size_t> perm =
        random_permutation(pooled.size(), kMedianSubsampleSeed);
    std::vector<std::span<const double>> subsample;
    subsample.reserve(kMedianSubsampleCap);
    for (std::size_t i = 0; i < kMedianSubsampleCap; ++i) {
      subsample.push_back(pooled[perm[i]]);
    }
    pooled = std::move(subsample);
  }

  std::vector<double> distances;
  distances.reserve(pooled.size() * (pooled.size() - 1) / 2);
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    for (std::size_t j = i + 1; j < pooled.size(); ++j) {
      distances.push_back(distance(pooled[i], pooled[j], Metric::L2));
    }
  }
  std::sort(distances.begin(), distances.end());
  const std::size_t n = distances.size();
  const double median = n == 0 ? 0.0
                        : n % 2 == 1
                            ? distances[n / 2]
                            : 0.5 * (distances[n / 2 - 1] + distances[n / 2]);
  return std::max(median, 1e-12);
}

}  // namespace

double mmd_rbf(const EncodedMatrix& a, const EncodedMatrix& b,
               const BandwidthRule& bandwidth_rule) {
  if (a.n_rows < 2 || b.n_rows < 2) {
    throw DataError("mmd_rbf: the unbiased estimator needs >= 2 rows per sample");
  }
  if (a.n_cols != b.n_cols) throw DataError("mmd_rbf: dimension mismatch");

  double sigma = bandwidth_rule.sigma;
  if (bandwidth_rule.kind == BandwidthRule::Kind::Fixed) {
    if (!(sigma > 0.0)) throw DataError("mmd_rbf: fixed bandwidth must be > 0");
  } else {
    sigma = median_heuristic_sigma(a, b);
  }
  const double gamma = 1.0 / (2.0 * sigma * sigma);

  auto kernel = [gamma](std::span<const double> u, std::span<const double> v) {
    return std::exp(-gamma * comparable_distance(u, v, Metric::L2));
  };

  // Fixed i<j / full-cross summation order keeps the estimate symmetric in
  // each block and deterministic.
  const double m = static_cast<double>(a.n_rows);
  const double n = static_cast<double>(b.n_rows);

  double sum_aa = 0.0;
  for (std::size_t i = 0; i < a.n_rows; ++i) {
    for (std::size_t j = i + 1; j < a.n_rows; ++j) {
      sum_aa += kernel(a.row(i), a.row(j));
    }
  }
  double sum_bb = 0.0;
  for (std::size_t i = 0; i < b.n_rows; ++i) {
    for (std::size_t j = i + 1; j < b.n_rows; ++j) {
      sum_bb += kernel(b.row(i), b.row(j));
    }
  }
  double sum_ab = 0.0;
  for (std::size_t i = 0; i < a.n_rows; ++i) {
    for (std::size_t j = 0; j < b.n_rows; ++j) {
      sum_ab += kernel(a.row(i), b.row(j));
    }
  }

  return 2.0 * sum_aa / (m * (m - 1.0)) + 2.0 * sum_bb / (n * (n - 1.0)) -
         2.0 * sum_ab / (m * n);
}

MarginalWassersteinResult marginal_wasserstein(const TabularDataset& a,
                                               const TabularDataset& b) {
  if (!same_schema(a.schema, b.schema)) {
    throw DataError("marginal_wasserstein: schema mismatch");
  }
  if (a.n_rows() == 0 || b.n_rows() == 0) {
    throw DataError("marginal_wasserstein: empty dataset");
  }

  MarginalWassersteinResult result;
  result.columns.reserve(a.schema.size());

  for (std::size_t c = 0; c < a.schema.size(); ++c) {
    MarginalDistance entry;
    entry.column = a.schema[c].name;
    entry.kind = a.schema[c].kind;

    if (entry.kind == ColumnKind::Numeric) {
      // Exact W1 between empirical distributions: integrate |F_a - F_b|
      // over the merged support.
      std::vector<double> va(a.n_rows()), vb(b.n_rows());
      for (std::size_t r = 0; r < a.n_rows(); ++r) {
        va[r] = std::get<double>(a.rows[r][c]);
      }
      for (std::size_t r = 0; r < b.n_rows(); ++r) {
        vb[r] = std::get<double>(b.rows[r][c]);
      }
      std::sort(va.begin(), va.end());
      std::sort(vb.begin(), vb.end());

      const double step_a = 1.0 / static_cast<double>(va.size());
      const double step_b = 1.0 / static_cast<double>(vb.size());
      double total = 0.0;
      double cdf_a = 0.0, cdf_b = 0.0;
      std::size_t ia = 0, ib = 0;
      double prev = std::min(va.front(), vb.front());
      while (ia < va.size() || ib < vb.size()) {
        const double next =
            ib >= vb.size() ? va[ia]
            : ia >= va.size() ? vb[ib]
                              : std::min(va[ia], vb[ib]);
        total += std::abs(cdf_a - cdf_b) * (next - prev);
        while (ia < va.size() && va[ia] == next) {
          cdf_a += step_a;
          ++ia;
        }
        while (ib < vb.size() && vb[ib] == next) {
          cdf_b += step_b;
          ++ib;
        }
        prev = next;
      }
      entry.value = total;
    } else {
      // Total variation between category frequency vectors over the union
      // of observed labels.
      std::map<std::string, std::pair<double, double>> freq;
      const double wa = 1.0 / static_cast<double>(a.n_rows());
      const double wb = 1.0 / static_cast<double>(b.n_rows());
      for (const auto& row : a.rows) {
        freq[std::get<std::string>(row[c])].first += wa;
      }
      for (const auto& row : b.rows) {
        freq[std::get<std::string>(row[c])].second += wb;
      }
      double tv = 0.0;
      for (const auto& [label, p] : freq) tv += std::abs(p.first - p.second);
      entry.value = 0.5 * tv;
    }
    result.columns.push_back(std::move(entry));
  }

  double sum = 0.0;
  for (const auto& entry : result.columns) sum += entry.value;
  result.mean = sum / static_cast<double>(result.columns.size());
  return result;
}

double utility_probe(const TabularDataset& synthetic,
                     const TabularDataset& holdout,
                     const std::string& label_column) {
  if (!same_schema(synthetic.schema, holdout.schema)) {
    throw DataError("utility_probe: schema mismatch");
  }
  const auto label_index = synthetic.column_index(label_column);
  if (!label_index) {
    throw DataError("utility_probe: no column named '" + label_column + "'");
  }
  if (synthetic.schema[*label_index].kind != ColumnKind::Categorical) {
    throw DataError("utility_probe: label column '" + label_column +
                    "' must be categorical");
  }

  // Drop the label column to build the feature datasets.
  auto strip_label = [&](const TabularDataset& data) {
    TabularDataset out;
    out.role = data.role;
    for (std::size_t c = 0; c < data.schema.size(); ++c) {
      if (c != *label_index) out.schema.push_back(data.schema[c]);
    }
    out.rows.reserve(data.n_rows());
    for (const auto& row : data.rows) {
      Row stripped;
      stripped.reserve(row.size() - 1);
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c != *label_index) stripped.push_back(row[c]);
      }
      out.rows.push_back(std::move(stripped));
    }
    return out;
  };

  auto labels_of = [&](const TabularDataset& data,
                       const std::vector<std::string>& classes) {
    std::vector<int> labels;
    labels.reserve(data.n_rows());
    for (const auto& row : data.rows) {
      const std::string& value = std::get<std::string>(row[*label_index]);
      if (value == classes[0]) labels.push_back(0);
      else if (value == classes[1]) labels.push_back(1);
      else labels.push_back(-1);
    }
    return labels;
  };

  // The two classes, in first-appearance order over synthetic then holdout.
  std::vector<std::string> classes;
  for (const TabularDataset* data : {&synthetic, &holdout}) {
    for (const auto& row : data->rows) {
      const std::string& value = std::get<std::string>(row[*label_index]);
      if (std::find(classes.begin(), classes.end(), value) == classes.end()) {
        classes.push_back(value);
      }
    }
  }
  if (classes.size() != 2) {
    throw DataError("utility_probe: label column '" + label_column + "' has " +
                    std::to_string(classes.size()) +
                    " categories, need exactly 2");
  }
  for (const TabularDataset* data : {&synthetic, &holdout}) {
    const auto labels = labels_of(*data, classes);
    const bool has0 = std::find(labels.begin(), labels.end(), 0) != labels.end();
    const bool has1 = std::find(labels.begin(), labels.end(), 1) != labels.end();
    if (!has0 || !has1) {
      throw DataError(
          "utility_probe: both label categories must be present in both "
          "datasets");
    }
  }

  const TabularDataset syn_features = strip_label(synthetic);
  const TabularDataset hold_features = strip_label(holdout);
  const Encoder encoder = fit_encoder({&syn_features, &hold_features});
  const EncodedMatrix syn_encoded = encode(encoder, syn_features);
  const EncodedMatrix hold_encoded = encode(encoder, hold_features);

  const std::vector<int> syn_labels = labels_of(synthetic, classes);
  const LogisticModel model =
      train_logistic(syn_encoded, syn_labels, LogisticConfig{});

  AttackScores probe;
  probe.attack_name = "utility_probe";
  probe.labels = labels_of(holdout, classes);
  probe.scores.reserve(hold_encoded.n_rows);
  for (std::size_t i = 0; i < hold_encoded.n_rows; ++i) {
    probe.scores.push_back(model.predict(hold_encoded.row(i)));
  }
  return auc_roc(probe).auc;
}

}  // namespace dpiaudit
