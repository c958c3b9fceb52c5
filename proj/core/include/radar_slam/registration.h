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

#ifndef RADAR_SLAM_REGISTRATION_H_
#define RADAR_SLAM_REGISTRATION_H_

#include "Eigen/Core"
#include "radar_slam/feature_map.h"
#include "radar_slam/kdtree.h"
#include "radar_slam/pose2.h"
#include "radar_slam/scan.h"

namespace radar_slam {

struct RegistrationConfig {
  int max_iterations = 30;
  int correspondence_k = 5;
  double max_correspondence_dist = 3.0;  // meters
  double linearity_gate = 0.5;
  double convergence_eps_trans = 1e-4;   // meters
  double convergence_eps_rot = 1e-5;     // radians
  double huber_delta = 0.35;             // meters

  void Validate() const;
  HitConfig hit_config() const {
    return {correspondence_k, max_correspondence_dist};
  }
};

// Line fitted to the map neighborhood of one transformed source point.
struct Correspondence {
  Point2 source;  // world frame
  Eigen::Vector2d target_centroid = Eigen::Vector2d::Zero();
  Eigen::Vector2d line_dir = Eigen::Vector2d::UnitX();  // unit length
  bool valid = false;
};

// Fits a line to the k nearest target points of `source`. Invalid when the
// target has fewer than k points, the k-th neighbor lies beyond
// max_correspondence_dist, or the neighborhood linearity is below
// linearity_gate.
Correspondence FindCorrespondence(const Point2& source, const KdTree2& target,
                                  const RegistrationConfig& config);

// Signed point-to-line distance: the 2-D cross product of (q - centroid) with
// the unit line direction.
double PointToLineResidual(const Eigen::Vector2d& q,
                           const Correspondence& correspondence);

// Robust cost of one residual: r^2 inside +/-delta, 2*delta*|r| - delta^2
// outside.
double HuberCost(double residual, double delta);

struct RegistrationResult {
  Pose2 pose;
  int iterations = 0;
  double initial_cost = 0.0;  // at the initial pose, meters^2
  double final_cost = 0.0;    // at the returned pose, meters^2
  int inlier_count = 0;       // valid correspondences at the returned pose
  bool converged = false;
};

// Estimates the world pose of `source` (sensor frame) against `target` by
// Gauss-Newton on the Huber-weighted point-to-line cost. Correspondences are
// re-associated every iteration until the step falls below ten times the
// convergence tolerance (or half the iteration budget is spent), then held
// fixed. On fewer than three valid correspondences at any iteration, returns
// `initial` with converged = false.
RegistrationResult Register(const FeatureCloud& source, const KdTree2& target,
                            const Pose2& initial,
                            const RegistrationConfig& config);

inline RegistrationResult Register(const FeatureCloud& source,
                                   const FeatureMap& map, const Pose2& initial,
                                   const RegistrationConfig& config) {
  return Register(source, map.index(), initial, config);
}

}  // namespace radar_slam

#endif  // RADAR_SLAM_REGISTRATION_H_
