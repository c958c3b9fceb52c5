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

#ifndef RADAR_SLAM_GEOMETRY_FILTER_H_
#define RADAR_SLAM_GEOMETRY_FILTER_H_

#include <span>
#include <vector>

#include "Eigen/Core"
#include "radar_slam/scan.h"

namespace radar_slam {

// Principal-component summary of a 2-D point set. The covariance is
// normalized by the set size, eigenvalues satisfy
// major_eigenvalue >= minor_eigenvalue >= 0, and `direction` is the unit
// eigenvector of the major eigenvalue.
struct NeighborhoodPca {
  Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
  Eigen::Matrix2d covariance = Eigen::Matrix2d::Zero();
  double major_eigenvalue = 0.0;
  double minor_eigenvalue = 0.0;
  Eigen::Vector2d direction = Eigen::Vector2d::UnitX();

  // (major - minor) / major; 0 for a zero-variance set.
  double linearity() const;
};

// Closed-form eigen decomposition of a symmetric 2x2 matrix. Returns
// {major, minor} and writes the unit major eigenvector to `direction`.
std::pair<double, double> SymmetricEigen2(const Eigen::Matrix2d& m,
                                          Eigen::Vector2d* direction);

NeighborhoodPca ComputePca(std::span<const Eigen::Vector2d> points);

// Local linearity of a neighborhood, in [0, 1]. Coincident points give 0.
double LocalLinearity(std::span<const Eigen::Vector2d> neighborhood);
double LocalLinearity(std::span<const Point2> neighborhood);

struct GeometryConfig {
  int m = 10;            // neighbors per point, excluding the point itself
  double d_max = 2.0;    // meters; neighborhood radius must be below this
  double theta_min = 0.9;

  void Validate() const;
};

// Keep decision for every input point, in input order.
std::vector<bool> SurfaceMask(const FeatureCloud& cloud,
                              const GeometryConfig& config);

// Surface features: points whose m-neighborhood is linear (theta > theta_min)
// and compact (radius < d_max). Survivors keep their input order.
FeatureCloud FilterSurface(const FeatureCloud& cloud,
                           const GeometryConfig& config);

}  // namespace radar_slam

#endif  // RADAR_SLAM_GEOMETRY_FILTER_H_
