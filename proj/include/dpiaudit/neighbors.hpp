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

#ifndef DPIAUDIT_NEIGHBORS_HPP_
#define DPIAUDIT_NEIGHBORS_HPP_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "dpiaudit/tabular.hpp"

namespace dpiaudit {

enum class Metric { L1, L2 };

const char* metric_name(Metric metric);
Metric metric_from_name(std::string_view name);

enum class IndexBackend { BruteForce, Accelerated };

// Order-preserving distance surrogate: L1 sum of absolute differences, L2
// sum of squares (no final sqrt). Both search backends rank candidates by
// this value, accumulated in dimension order, so ties agree bit-for-bit.
double comparable_distance(std::span<const double> a, std::span<const double> b,
                           Metric metric);

// Turns a comparable value into the actual distance (sqrt for L2).
double finalize_distance(double comparable, Metric metric);

double distance(std::span<const double> a, std::span<const double> b,
                Metric metric);

struct NeighborSet {
  std::vector<std::size_t> indices;  // pool indices, (distance, index) ascending
  std::vector<double> distances;     // non-decreasing, aligned with indices
  std::size_t count_reference = 0;
  std::size_t count_synthetic = 0;
};

// Exact K-nearest-neighbor search over the pooled reference + synthetic
// points. The reference block comes first; distance ties are broken by the
// smaller pool index, which favors reference points. Both backends return
// identical neighbor sets on every input; BruteForce doubles as the oracle
// in tests. Immutable after construction, safe for concurrent queries.
class PooledIndex {
 public:
  PooledIndex(const EncodedMatrix& reference, const EncodedMatrix& synthetic,
              Metric metric, IndexBackend backend);

  NeighborSet query(std::span<const double> point, std::size_t k) const;

  std::size_t size() const { return n_ref_ + n_syn_; }
  std::size_t dim() const { return dim_; }
  std::size_t n_reference() const { return n_ref_; }
  std::size_t n_synthetic() const { return n_syn_; }
  Metric metric() const { return metric_; }
  IndexBackend backend() const { return backend_; }
  bool is_synthetic(std::size_t pool_index) const {
    return pool_index >= n_ref_;
  }
  std::span<const double> point(std::size_t pool_index) const {
    return {points_.data() + pool_index * dim_, dim_};
  }

 private:
  struct KdNode {
    std::size_t begin = 0;
    std::size_t end = 0;          // leaf covers order_[begin, end)
    std::size_t split_dim = 0;
    double split_value = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::vector<double> box_lo;   // tight bounding box of the node's points
    std::vector<double> box_hi;
  };

  std::int32_t build_node(std::size_t begin, std::size_t end);
  double box_lower_bound(const KdNode& node,
                         std::span<const double> point) const;
  void search_node(std::int32_t node_id, std::span<const double> point,
                   std::size_t k,
                   std::vector<std::pair<double, std::size_t>>* heap) const;
  NeighborSet brute_force_query(std::span<const double> point,
                                std::size_t k) const;

  std::vector<double> points_;  // row-major pool, reference block first
  std::size_t n_ref_ = 0;
  std::size_t n_syn_ = 0;
  std::size_t dim_ = 0;
  Metric metric_ = Metric::L2;
  IndexBackend backend_ = IndexBackend::Accelerated;
  std::vector<std::size_t> order_;  // kd-tree leaf ordering of pool indices
  std::vector<KdNode> nodes_;
  std::int32_t root_ = -1;
};

PooledIndex build_index(const EncodedMatrix& reference,
                        const EncodedMatrix& synthetic, Metric metric,
                        IndexBackend backend);

NeighborSet knn(const PooledIndex& index, std::span<const double> query,
                std::size_t k);

}  // namespace dpiaudit

#endif  // DPIAUDIT_NEIGHBORS_HPP_
