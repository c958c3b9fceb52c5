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

#ifndef RADAR_SLAM_TESTS_SUPPORT_GEOMETRY_ORACLE_H_
#define RADAR_SLAM_TESTS_SUPPORT_GEOMETRY_ORACLE_H_

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "Eigen/Core"
#include "radar_slam/geometry_filter.h"

namespace radar_slam {
namespace testing {

// Linearity from the quadratic formula on a covariance built by hand.
inline double OracleLinearity(const std::vector<Eigen::Vector2d>& points) {
  const double n = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (const auto& p : points) {
    mx += p.x();
    my += p.y();
  }
  mx /= n;
  my /= n;
  double a = 0.0, b = 0.0, c = 0.0;
  for (const auto& p : points) {
    a += (p.x() - mx) * (p.x() - mx);
    b += (p.x() - mx) * (p.y() - my);
    c += (p.y() - my) * (p.y() - my);
  }
  a /= n;
  b /= n;
  c /= n;
  const double trace = a + c;
  const double det = a * c - b * b;
  const double disc = std::sqrt(std::max(trace * trace / 4.0 - det, 0.0));
  const double l1 = trace / 2.0 + disc;
  const double l2 = std::max(trace / 2.0 - disc, 0.0);
  return l1 > 0.0 ? (l1 - l2) / l1 : 0.0;
}

// O(n^2) kNN plus the oracle above.
inline std::vector<bool> OracleMask(const std::vector<Eigen::Vector2d>& xy,
                             const GeometryConfig& config) {
  const std::size_t n = xy.size();
  const auto m = static_cast<std::size_t>(config.m);
  std::vector<bool> keep(n, false);
  if (n < m + 1) return keep;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) order.push_back({(xy[j] - xy[i]).squaredNorm(), j});
    }
    std::sort(order.begin(), order.end());
    std::vector<Eigen::Vector2d> neighborhood;
    for (std::size_t j = 0; j < m; ++j) {
      neighborhood.push_back(xy[order[j].second]);
    }
    const double radius = std::sqrt(order[m - 1].first);
    keep[i] = radius < config.d_max &&
              OracleLinearity(neighborhood) > config.theta_min;
  }
  return keep;
}

// Mix of noisy wall segments and clutter, 1 to 200 points.
inline std::vector<Eigen::Vector2d> RandomSurfaceCloud(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> size(1, 200);
  std::vector<Eigen::Vector2d> xy;
  const int n = size(rng);
  for (int i = 0; i < n; ++i) {
    if (u(rng) < 0.6) {
      const double s = 8.0 * u(rng);
      const int wall = i % 3;
      xy.emplace_back(wall == 0 ? s : 2.0 * wall + 0.02 * u(rng),
                      wall == 0 ? 0.05 * u(rng) : s);
    } else {
      xy.emplace_back(8.0 * u(rng), 8.0 * u(rng));
    }
  }
  return xy;
}

}  // namespace testing
}  // namespace radar_slam

#endif  // RADAR_SLAM_TESTS_SUPPORT_GEOMETRY_ORACLE_H_
