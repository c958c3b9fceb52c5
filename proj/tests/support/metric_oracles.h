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

#ifndef RADAR_SLAM_TESTS_SUPPORT_METRIC_ORACLES_H_
#define RADAR_SLAM_TESTS_SUPPORT_METRIC_ORACLES_H_

#include <cmath>
#include <numbers>
#include <vector>

#include "radar_slam/pose2.h"

namespace radar_slam {
namespace testing {

// Poses every `spacing` meters along +x.
inline std::vector<Pose2> StraightPath(double length, double spacing) {
  std::vector<Pose2> poses;
  const int n = static_cast<int>(std::lround(length / spacing));
  for (int i = 0; i <= n; ++i) poses.emplace_back(i * spacing, 0.0, 0.0);
  return poses;
}

// Position RMSE after the best rigid alignment, found without a closed form:
// for a fixed rotation the best translation is the centroid difference, and
// the remaining one-dimensional cost is searched on a dense grid and refined
// by golden-section search.
inline double BruteForceAte(const std::vector<Pose2>& estimate,
                            const std::vector<Pose2>& ground_truth) {
  const std::size_t n = estimate.size();
  Eigen::Vector2d ce = Eigen::Vector2d::Zero();
  Eigen::Vector2d cg = Eigen::Vector2d::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    ce += estimate[i].translation();
    cg += ground_truth[i].translation();
  }
  ce /= static_cast<double>(n);
  cg /= static_cast<double>(n);
  auto cost = [&](double theta) {
    const Eigen::Matrix2d r = Pose2(0.0, 0.0, theta).rotation();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Eigen::Vector2d d = r * (estimate[i].translation() - ce) -
                                (ground_truth[i].translation() - cg);
      sum += d.squaredNorm();
    }
    return sum;
  };
  constexpr int kGrid = 7200;
  const double step = 2.0 * std::numbers::pi / kGrid;
  double best_theta = 0.0;
  double best = cost(0.0);
  for (int k = 1; k < kGrid; ++k) {
    const double theta = -std::numbers::pi + k * step;
    const double c = cost(theta);
    if (c < best) {
      best = c;
      best_theta = theta;
    }
  }
  double lo = best_theta - step;
  double hi = best_theta + step;
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double a = hi - ratio * (hi - lo);
    const double b = lo + ratio * (hi - lo);
    if (cost(a) < cost(b)) {
      hi = b;
    } else {
      lo = a;
    }
  }
  return std::sqrt(std::min(best, cost(0.5 * (lo + hi))) /
                   static_cast<double>(n));
}

}  // namespace testing
}  // namespace radar_slam

#endif  // RADAR_SLAM_TESTS_SUPPORT_METRIC_ORACLES_H_
