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

#include "dpiaudit/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dpiaudit {

namespace {
constexpr std::size_t kLeafSize = 16;
}  // namespace

const char* metric_name(Metric metric) {
  return metric == Metric::L1 ? "l1" : "l2";
}

Metric metric_from_name(std::string_view name) {
  if (name == "l1" || name == "L1") return Metric::L1;
  if (name == "l2" || name == "L2") return Metric::L2;
  throw UsageError("unknown metric '" + std::string(name) +
                   "' (expected l1 or l2)");
}

double comparable_distance(std::span<const double> a, std::span<const double> b,
                           Metric metric) {
  double acc = 0.0;
  if (metric == Metric::L1) {
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = a[i] - b[i];
      acc += d * d;
    }
  }
  return acc;
}

double finalize_distance(double comparable, Metric metric) {
  return metric == Metric::L2 ? std::sqrt(comparable) : comparable;
}

double distance(std::span<const double> a, std::span<const double> b,
                Metric metric) {
  return finalize_distance(comparable_distance(a, b, metric), metric);
}

PooledIndex::PooledIndex(const EncodedMatrix& reference,
                         const EncodedMatrix& synthetic, Metric metric,
                         IndexBackend backend)
    : n_ref_(reference.n_rows),
      n_syn_(synthetic.n_rows),
      metric_(metric),
      backend_(backend) {
  if (n_ref_ + n_syn_ == 0) {
    throw DataError("build_index: pool is empty");
  }
  if (n_ref_ > 0 && n_syn_ > 0 && reference.n_cols != synthetic.n_cols) {
    throw DataError("build_index: dimension mismatch (" +
                    std::to_string(reference.n_cols) + " vs " +
                    std::to_string(synthetic.n_cols) + ")");
  }
  dim_ = n_ref_ > 0 ? reference.n_cols : synthetic.n_cols;
  if (dim_ == 0) throw DataError("build_index: zero-dimensional points");

  points_.reserve((n_ref_ + n_syn_) * dim_);
  points_.insert(points_.end(), reference.values.begin(),
                 reference.values.end());
  points_.insert(points_.end(), synthetic.values.begin(),
                 synthetic.values.end());

  if (backend_ == IndexBackend::Accelerated) {
    order_.resize(size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    nodes_.reserve(2 * size() / kLeafSize + 2);
    root_ = build_node(0, size());
  }
}

std::int32_t PooledIndex::build_node(std::size_t begin, std::size_t end) {
  KdNode node;
  node.begin = begin;
  node.end = end;
  node.box_lo.assign(dim_, std::numeric_limits<double>::infinity());
  node.box_hi.assign(dim_, -std::numeric_limits<double>::infinity());
  for (std::size_t i = begin; i < end; ++i) {
    const std::span<const double> p = point(order_[i]);
    for (std::size_t d = 0; d < dim_; ++d) {
      node.box_lo[d] = std::min(node.box_lo[d], p[d]);
      node.box_hi[d] = std::max(node.box_hi[d], p[d]);
    }
  }

  if (end - begin > kLeafSize) {
    // Split on the widest box dimension at the median point.
    std::size_t split_dim = 0;
    double best_extent = -1.0;
    for (std::size_t d = 0; d < dim_; ++d) {
      const double extent = node.box_hi[d] - node.box_lo[d];
      if (extent > best_extent) {
        best_extent = extent;
        split_dim = d;
      }
    }
    if (best_extent > 0.0) {
      const std::size_t mid = begin + (end - begin) / 2;
      std::nth_element(order_.begin() + begin, order_.begin() + mid,
                       order_.begin() + end,
                       [&](std::size_t a, std::size_t b) {
                         const double ca = points_[a * dim_ + split_dim];
                         const double cb = points_[b * dim_ + split_dim];
                         return ca < cb || (ca == cb && a < b);
                       });
      node.split_dim = split_dim;
      node.split_value = points_[order_[mid] * dim_ + split_dim];
      const std::int32_t id = static_cast<std::int32_t>(nodes_.size());
      nodes_.push_back(std::move(node));
      const std::int32_t left = build_node(begin, mid);
      const std::int32_t right = build_node(mid, end);
      nodes_[id].left = left;
      nodes_[id].right = right;
      return id;
    }
    // All points identical: keep as one (large) leaf.
  }
  const std::int32_t id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(std::move(node));
  return id;
}

// Lower bound on comparable_distance between `point` and any point inside
// the node's box. Terms accumulate in dimension order with the same
// operations as comparable_distance, so the bound never exceeds the true
// value under floating point and pruning stays exact.
double PooledIndex::box_lower_bound(const KdNode& node,
                                    std::span<const double> point) const {
  double acc = 0.0;
  for (std::size_t d = 0; d < dim_; ++d) {
    double t = 0.0;
    const double below = node.box_lo[d] - point[d];
    const double above = point[d] - node.box_hi[d];
    if (below > t) t = below;
    if (above > t) t = above;
    acc += metric_ == Metric::L1 ? t : t * t;
  }
  return acc;
}

void PooledIndex::search_node(
    std::int32_t node_id, std::span<const double> query, std::size_t k,
    std::vector<std::pair<double, std::size_t>>* heap) const {
  const KdNode& node = nodes_[static_cast<std::size_t>(node_id)];
  if (heap->size() == k && box_lower_bound(node, query) > heap->front().first) {
    // A box at exactly the current worst distance may still hold a
    // lower-index tie, so only a strictly greater bound prunes.
    return;
  }
  if (node.left < 0) {
    for (std::size_t i = node.begin; i < node.end; ++i) {
      const std::size_t idx = order_[i];
      const std::pair<double, std::size_t> candidate{
          comparable_distance(query, point(idx), metric_), idx};
      if (heap->size() < k) {
        heap->push_back(candidate);
        std::push_heap(heap->begin(), heap->end());
      } else if (candidate < heap->front()) {
        std::pop_heap(heap->begin(), heap->end());
        heap->back() = candidate;
        std::push_heap(heap->begin(), heap->end());
      }
    }
    return;
  }
  const bool go_left_first = query[node.split_dim] < node.split_value;
  search_node(go_left_first ? node.left : node.right, query, k, heap);
  search_node(go_left_first ? node.right : node.left, query, k, heap);
}

NeighborSet PooledIndex::brute_force_query(std::span<const double> query,
                                           std::size_t k) const {
  std::vector<std::pair<double, std::size_t>> all(size());
  for (std::size_t i = 0; i < size(); ++i) {
    all[i] = {comparable_distance(query, point(i), metric_), i};
  }
  std::partial_sort(all.begin(), all.begin() + k, all.end());

  NeighborSet result;
  result.indices.reserve(k);
  result.distances.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    result.indices.push_back(all[i].second);
    result.distances.push_back(finalize_distance(all[i].first, metric_));
    if (is_synthetic(all[i].second)) ++result.count_synthetic;
    else ++result.count_reference;
  }
  return result;
}

NeighborSet PooledIndex::query(std::span<const double> query,
                               std::size_t k) const {
  if (query.size() != dim_) {
    throw DataError("knn: query has dimension " + std::to_string(query.size()) +
                    ", index has " + std::to_string(dim_));
  }
  if (k == 0) throw DataError("knn: k must be positive");
  if (k > size()) {
    throw DataError("knn: k exceeds pool size (" + std::to_string(k) + " > " +
                    std::to_string(size()) + ")");
  }
  if (backend_ == IndexBackend::BruteForce) {
    return brute_force_query(query, k);
  }

  std::vector<std::pair<double, std::size_t>> heap;
  heap.reserve(k);
  search_node(root_, query, k, &heap);
  std::sort_heap(heap.begin(), heap.end());

  NeighborSet result;
  result.indices.reserve(k);
  result.distances.reserve(k);
  for (const auto& [comparable, idx] : heap) {
    result.indices.push_back(idx);
    result.distances.push_back(finalize_distance(comparable, metric_));
    if (is_synthetic(idx)) ++result.count_synthetic;
    else ++result.count_reference;
  }
  return result;
}

PooledIndex build_index(const EncodedMatrix& reference,
                        const EncodedMatrix& synthetic, Metric metric,
                        IndexBackend backend) {
  return PooledIndex(reference, synthetic, metric, backend);
}

NeighborSet knn(const PooledIndex& index, std::span<const double> query,
                std::size_t k) {
  return index.query(query, k);
}

}  // namespace dpiaudit
