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

#include "radar_slam/registration.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "Eigen/Cholesky"
#include "radar_slam/geometry_filter.h"

namespace radar_slam {
namespace {

constexpr int kMinValidCorrespondences = 3;
constexpr double kFreezeFactor = 10.0;

struct Linearization {
  Eigen::Matrix3d hessian = Eigen::Matrix3d::Zero();
  Eigen::Vector3d gradient = Eigen::Vector3d::Zero();
  double cost = 0.0;
  int valid = 0;
};

// Re-associates every source point when `reassociate` is set, otherwise
// reuses the lines stored in `associations` by the last re-association.
Linearization Linearize(const FeatureCloud& source, const KdTree2& target,
                        const Pose2& pose, const RegistrationConfig& config,
                        bool reassociate,
                        std::vector<Correspondence>* associations) {
  Linearization lin;
  const Eigen::Vector2d t = pose.translation();
  associations->resize(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) {
    const Point2 q = TransformPoint(pose, source.points[i]);
    if (reassociate) {
      (*associations)[i] = FindCorrespondence(q, target, config);
    }
    const Correspondence& c = (*associations)[i];
    if (!c.valid) continue;
    ++lin.valid;
    const double r = PointToLineResidual(q.xy(), c);
    lin.cost += HuberCost(r, config.huber_delta);
    // r = (q - m) x d, with d fixed during the step.
    const Eigen::Vector2d normal(c.line_dir.y(), -c.line_dir.x());
    const Eigen::Vector2d lever = q.xy() - t;
    const Eigen::Vector2d dq_dyaw(-lever.y(), lever.x());
    const Eigen::Vector3d jacobian(normal.x(), normal.y(), normal.dot(dq_dyaw));
    const double abs_r = std::abs(r);
    const double weight =
        abs_r <= config.huber_delta ? 1.0 : config.huber_delta / abs_r;
    lin.hessian += weight * jacobian * jacobian.transpose();
    lin.gradient += weight * r * jacobian;
  }
  return lin;
}

}  // namespace

void RegistrationConfig::Validate() const {
  if (max_iterations < 1) throw std::invalid_argument("icp.max_iterations must be >= 1");
  if (correspondence_k < 2) {
    throw std::invalid_argument("icp.correspondence_k must be >= 2");
  }
  if (!(max_correspondence_dist > 0.0) || !(linearity_gate > 0.0) ||
      !(convergence_eps_trans > 0.0) || !(convergence_eps_rot > 0.0) ||
      !(huber_delta > 0.0)) {
    throw std::invalid_argument("icp.* thresholds must be positive");
  }
}

Correspondence FindCorrespondence(const Point2& source, const KdTree2& target,
                                  const RegistrationConfig& config) {
  Correspondence c;
  c.source = source;
  const auto k = static_cast<std::size_t>(config.correspondence_k);
  if (target.size() < k) return c;
  const auto neighbors =
      target.Knn(source.xy(), k, config.max_correspondence_dist);
  if (neighbors.size() < k) return c;
  Eigen::Vector2d xy[16];
  std::vector<Eigen::Vector2d> heap_xy;
  std::span<Eigen::Vector2d> set;
  if (k <= 16) {
    for (std::size_t i = 0; i < k; ++i) xy[i] = target.point(neighbors[i].index);
    set = std::span<Eigen::Vector2d>(xy, k);
  } else {
    for (const auto& nb : neighbors) heap_xy.push_back(target.point(nb.index));
    set = heap_xy;
  }
  const NeighborhoodPca pca = ComputePca(set);
  if (pca.linearity() < config.linearity_gate) return c;
  c.target_centroid = pca.centroid;
  c.line_dir = pca.direction;
  c.valid = true;
  return c;
}

double PointToLineResidual(const Eigen::Vector2d& q,
                           const Correspondence& correspondence) {
  const Eigen::Vector2d d = q - correspondence.target_centroid;
  return d.x() * correspondence.line_dir.y() -
         d.y() * correspondence.line_dir.x();
}

double HuberCost(double residual, double delta) {
  const double a = std::abs(residual);
  return a <= delta ? a * a : 2.0 * delta * a - delta * delta;
}

RegistrationResult Register(const FeatureCloud& source, const KdTree2& target,
                            const Pose2& initial,
                            const RegistrationConfig& config) {
  config.Validate();
  RegistrationResult result;
  result.pose = initial;
  if (source.empty()) return result;

  Pose2 pose = initial;
  std::vector<Correspondence> associations;
  bool frozen = false;
  for (int iteration = 1; iteration <= config.max_iterations; ++iteration) {
    result.iterations = iteration;
    const Linearization lin =
        Linearize(source, target, pose, config, !frozen, &associations);
    if (lin.valid < kMinValidCorrespondences) {
      result.pose = initial;
      result.converged = false;
      result.inlier_count = lin.valid;
      return result;
    }
    if (iteration == 1) result.initial_cost = lin.cost;

    // Levenberg damping keeps rank-deficient scenes (a single wall) solvable.
    Eigen::Matrix3d damped = lin.hessian;
    damped.diagonal().array() += 1e-6 * lin.hessian.trace();
    const Eigen::Vector3d step = damped.ldlt().solve(-lin.gradient);
    if (!step.allFinite()) break;
    // A step below tolerance is not applied, so an already optimal pose is
    // returned bit-for-bit.
    if (step.head<2>().norm() < config.convergence_eps_trans &&
        std::abs(step.z()) < config.convergence_eps_rot) {
      result.converged = true;
      break;
    }
    pose = Pose2(pose.x() + step.x(), pose.y() + step.y(), pose.yaw() + step.z());
    // Near the optimum, re-association can flip a few correspondences back
    // and forth; finish on a fixed association instead.
    if (!frozen && ((step.head<2>().norm() < kFreezeFactor *
                                                config.convergence_eps_trans &&
                     std::abs(step.z()) <
                         kFreezeFactor * config.convergence_eps_rot) ||
                    2 * iteration >= config.max_iterations)) {
      frozen = true;
    }
  }

  const Linearization final_lin =
      Linearize(source, target, pose, config, true, &associations);
  result.pose = pose;
  result.final_cost = final_lin.cost;
  result.inlier_count = final_lin.valid;
  if (final_lin.valid < kMinValidCorrespondences) {
    result.pose = initial;
    result.converged = false;
  }
  return result;
}

}  // namespace radar_slam
