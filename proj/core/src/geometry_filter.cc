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

#include "radar_slam/geometry_filter.h"

#include <cmath>
#include <stdexcept>

#include "radar_slam/kdtree.h"

namespace radar_slam {

double NeighborhoodPca::linearity() const {
  if (!(major_eigenvalue > 0.0)) return 0.0;
  return (major_eigenvalue - minor_eigenvalue) / major_eigenvalue;
}

std::pair<double, double> SymmetricEigen2(const Eigen::Matrix2d& m,
                                          Eigen::Vector2d* direction) {
  const double a = m(0, 0);
  const double b = 0.5 * (m(0, 1) + m(1, 0));
  const double c = m(1, 1);
  const double half_trace = 0.5 * (a + c);
  const double half_gap = 0.5 * (a - c);
  const double radius = std::hypot(half_gap, b);
  const double major = half_trace + radius;
  const double minor = std::max(half_trace - radius, 0.0);
  if (direction != nullptr) {
    if (radius == 0.0) {
      *direction = Eigen::Vector2d::UnitX();
    } else if (half_gap >= 0.0) {
      // (major - c, b) is well conditioned when a >= c.
      *direction = Eigen::Vector2d(half_gap + radius, b).normalized();
    } else {
      *direction = Eigen::Vector2d(b, radius - half_gap).normalized();
    }
  }
  return {major, minor};
}

NeighborhoodPca ComputePca(std::span<const Eigen::Vector2d> points) {
  NeighborhoodPca pca;
  if (points.empty()) return pca;
  const double n = static_cast<double>(points.size());
  Eigen::Vector2d sum = Eigen::Vector2d::Zero();
  for (const auto& p : points) sum += p;
  pca.centroid = sum / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& p : points) {
    const double dx = p.x() - pca.centroid.x();
    const double dy = p.y() - pca.centroid.y();
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  pca.covariance << sxx / n, sxy / n, sxy / n, syy / n;
  const auto [major, minor] = SymmetricEigen2(pca.covariance, &pca.direction);
  pca.major_eigenvalue = major;
  pca.minor_eigenvalue = minor;
  return pca;
}

double LocalLinearity(std::span<const Eigen::Vector2d> neighborhood) {
  return ComputePca(neighborhood).linearity();
}

double LocalLinearity(std::span<const Point2> neighborhood) {
  std::vector<Eigen::Vector2d> xy;
  xy.reserve(neighborhood.size());
  for (const auto& p : neighborhood) xy.push_back(p.xy());
  return LocalLinearity(xy);
}

void GeometryConfig::Validate() const {
  if (m < 3) throw std::invalid_argument("geometry.m must be >= 3");
  if (!(d_max > 0.0)) throw std::invalid_argument("geometry.d_max must be > 0");
  if (!(theta_min >= 0.0 && theta_min < 1.0)) {
    throw std::invalid_argument("geometry.theta_min must be in [0, 1)");
  }
}

std::vector<bool> SurfaceMask(const FeatureCloud& cloud,
                              const GeometryConfig& config) {
  config.Validate();
  const std::size_t n = cloud.size();
  std::vector<bool> keep(n, false);
  const auto m = static_cast<std::size_t>(config.m);
  if (n < m + 1) return keep;

  std::vector<Eigen::Vector2d> xy;
  xy.reserve(n);
  for (const auto& p : cloud.points) xy.push_back(p.xy());
  const KdTree2 tree(xy);

  std::vector<Eigen::Vector2d> neighborhood;
  neighborhood.reserve(m);
  for (std::size_t i = 0; i < n; ++i) {
    const auto neighbors =
        tree.Knn(xy[i], m, std::numeric_limits<double>::infinity(),
                 static_cast<std::uint32_t>(i));
    if (neighbors.size() < m) continue;
    const double radius = std::sqrt(neighbors.back().squared_distance);
    if (!(radius < config.d_max)) continue;
    neighborhood.clear();
    for (const auto& nb : neighbors) neighborhood.push_back(xy[nb.index]);
    keep[i] = LocalLinearity(neighborhood) > config.theta_min;
  }
  return keep;
}

FeatureCloud FilterSurface(const FeatureCloud& cloud,
                           const GeometryConfig& config) {
  const std::vector<bool> keep = SurfaceMask(cloud, config);
  FeatureCloud out;
  out.scan_index = cloud.scan_index;
  out.frame = cloud.frame;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (keep[i]) out.points.push_back(cloud.points[i]);
  }
  return out;
}

}  // namespace radar_slam
