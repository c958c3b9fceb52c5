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

#ifndef RADAR_SLAM_KDTREE_H_
#define RADAR_SLAM_KDTREE_H_

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "Eigen/Core"

namespace radar_slam {

struct Neighbor {
  std::uint32_t index = 0;
  double squared_distance = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Neighbors are ordered by squared distance, then by index. Every query of
// KdTree2 returns results in this order, so exact ties resolve to the point
// that was inserted first.
inline bool NeighborLess(const Neighbor& a, const Neighbor& b) {
  if (a.squared_distance != b.squared_distance) {
    return a.squared_distance < b.squared_distance;
  }
  return a.index < b.index;
}

// Static 2-D KD-tree with exact k-nearest-neighbor queries. The tree owns a
// copy of the points; rebuild it to reflect changes.
class KdTree2 {
 public:
  KdTree2() = default;
  explicit KdTree2(std::vector<Eigen::Vector2d> points);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<Eigen::Vector2d>& points() const { return points_; }
  const Eigen::Vector2d& point(std::uint32_t i) const { return points_[i]; }

  // Up to `k` nearest points, ascending by NeighborLess. Points farther than
  // `max_distance` are never returned. If `exclude` is a valid index, that
  // point is skipped.
  std::vector<Neighbor> Knn(
      const Eigen::Vector2d& query, std::size_t k,
      double max_distance = std::numeric_limits<double>::infinity(),
      std::uint32_t exclude = kNoExclusion) const;

  static constexpr std::uint32_t kNoExclusion =
      std::numeric_limits<std::uint32_t>::max();

 private:
  struct Node {
    // Leaf iff `left == kLeaf`; then [begin, end) indexes `order_`.
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    int axis = 0;
    double split = 0.0;
    Eigen::Vector2d lo = Eigen::Vector2d::Zero();
    Eigen::Vector2d hi = Eigen::Vector2d::Zero();
  };
  static constexpr std::uint32_t kLeaf =
      std::numeric_limits<std::uint32_t>::max();
  static constexpr std::uint32_t kLeafSize = 8;

  std::uint32_t Build(std::uint32_t begin, std::uint32_t end);

  std::vector<Eigen::Vector2d> points_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
};

// O(n) reference used by tests and by tiny clouds: same ordering contract as
// KdTree2::Knn.
std::vector<Neighbor> BruteForceKnn(
    std::span<const Eigen::Vector2d> points, const Eigen::Vector2d& query,
    std::size_t k,
    double max_distance = std::numeric_limits<double>::infinity(),
    std::uint32_t exclude = KdTree2::kNoExclusion);

}  // namespace radar_slam

#endif  // RADAR_SLAM_KDTREE_H_
