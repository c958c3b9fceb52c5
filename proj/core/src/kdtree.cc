/*
 * Copyright 2026 The radar_slam Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "radar_slam/kdtree.h"

#include <algorithm>
#include <numeric>

namespace radar_slam {
namespace {

double SquaredDistance(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const double dx = a.x() - b.x();
  const double dy = a.y() - b.y();
  return dx * dx + dy * dy;
}

// Bounded max-heap on NeighborLess: the front is the worst kept neighbor.
class KnnHeap {
 public:
  KnnHeap(std::size_t k, double max_squared)
      : k_(k), max_squared_(max_squared) {
    heap_.reserve(k);
  }

  bool full() const { return heap_.size() == k_; }

  // Radius a candidate must not exceed to possibly enter the heap.
  double bound() const {
    return full() ? heap_.front().squared_distance : max_squared_;
  }

  void Offer(const Neighbor& candidate) {
    if (candidate.squared_distance > max_squared_) return;
    if (!full()) {
      heap_.push_back(candidate);
      std::push_heap(heap_.begin(), heap_.end(), NeighborLess);
    } else if (NeighborLess(candidate, heap_.front())) {
      std::pop_heap(heap_.begin(), heap_.end(), NeighborLess);
      heap_.back() = candidate;
      std::push_heap(heap_.begin(), heap_.end(), NeighborLess);
    }
  }

  std::vector<Neighbor> Sorted() && {
    std::sort_heap(heap_.begin(), heap_.end(), NeighborLess);
    return std::move(heap_);
  }

 private:
  std::size_t k_;
  double max_squared_;
  std::vector<Neighbor> heap_;
};

double BoxSquaredDistance(const Eigen::Vector2d& q, const Eigen::Vector2d& lo,
                          const Eigen::Vector2d& hi) {
  const double dx = std::max({lo.x() - q.x(), 0.0, q.x() - hi.x()});
  const double dy = std::max({lo.y() - q.y(), 0.0, q.y() - hi.y()});
  return dx * dx + dy * dy;
}

}  // namespace

KdTree2::KdTree2(std::vector<Eigen::Vector2d> points)
    : points_(std::move(points)) {
  order_.resize(points_.size());
  std::iota(order_.begin(), order_.end(), 0u);
  if (!points_.empty()) {
    nodes_.reserve(2 * points_.size() / kLeafSize + 1);
    Build(0, static_cast<std::uint32_t>(points_.size()));
  }
}

std::uint32_t KdTree2::Build(std::uint32_t begin, std::uint32_t end) {
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.emplace_back();
  Eigen::Vector2d lo = points_[order_[begin]];
  Eigen::Vector2d hi = lo;
  for (std::uint32_t i = begin + 1; i < end; ++i) {
    lo = lo.cwiseMin(points_[order_[i]]);
    hi = hi.cwiseMax(points_[order_[i]]);
  }
  nodes_[id].begin = begin;
  nodes_[id].end = end;
  nodes_[id].lo = lo;
  nodes_[id].hi = hi;
  if (end - begin <= kLeafSize) {
    nodes_[id].left = kLeaf;
    return id;
  }
  const Eigen::Vector2d extent = hi - lo;
  const int axis = extent.x() >= extent.y() ? 0 : 1;
  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid,
                   order_.begin() + end,
                   [&](std::uint32_t a, std::uint32_t b) {
                     return points_[a][axis] < points_[b][axis];
                   });
  nodes_[id].axis = axis;
  nodes_[id].split = points_[order_[mid]][axis];
  const std::uint32_t left = Build(begin, mid);
  const std::uint32_t right = Build(mid, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

std::vector<Neighbor> KdTree2::Knn(const Eigen::Vector2d& query, std::size_t k,
                                   double max_distance,
                                   std::uint32_t exclude) const {
  if (k == 0 || points_.empty()) return {};
  const double max_squared = max_distance == std::numeric_limits<double>::infinity()
                                 ? max_distance
                                 : max_distance * max_distance;
  KnnHeap heap(k, max_squared);

  // Depth-first with nearer child first. A subtree is pruned only when its
  // box is strictly farther than the current bound, so equal-distance points
  // with smaller indices are still visited.
  std::vector<std::uint32_t> stack;
  stack.reserve(64);
  stack.push_back(0);
  while (!stack.empty()) {
    const Node& node = nodes_[stack.back()];
    stack.pop_back();
    if (BoxSquaredDistance(query, node.lo, node.hi) > heap.bound()) continue;
    if (node.left == kLeaf) {
      for (std::uint32_t i = node.begin; i < node.end; ++i) {
        const std::uint32_t idx = order_[i];
        if (idx == exclude) continue;
        heap.Offer({idx, SquaredDistance(points_[idx], query)});
      }
      continue;
    }
    const bool go_left = query[node.axis] < node.split;
    stack.push_back(go_left ? node.right : node.left);
    stack.push_back(go_left ? node.left : node.right);
  }
  return std::move(heap).Sorted();
}

std::vector<Neighbor> BruteForceKnn(std::span<const Eigen::Vector2d> points,
                                    const Eigen::Vector2d& query,
                                    std::size_t k, double max_distance,
                                    std::uint32_t exclude) {
  std::vector<Neighbor> all;
  all.reserve(points.size());
  const double max_squared = max_distance * max_distance;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i == exclude) continue;
    const double d = SquaredDistance(points[i], query);
    if (d > max_squared) continue;
    all.push_back({static_cast<std::uint32_t>(i), d});
  }
  std::sort(all.begin(), all.end(), NeighborLess);
  if (all.size() > k) all.resize(k);
  return all;
}

}  // namespace radar_slam
