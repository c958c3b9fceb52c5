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

#ifndef RADAR_SLAM_POSE_GRAPH_H_
#define RADAR_SLAM_POSE_GRAPH_H_

#include <string>
#include <vector>

#include "Eigen/Core"
#include "radar_slam/pose2.h"

namespace radar_slam {

// Diagonal information weights 1/sigma^2 for (x, y, yaw).
Eigen::Vector3d InformationFromSigmas(double sigma_xy, double sigma_yaw);

struct PoseGraphEdge {
  enum class Kind { kOdometry, kLoop };

  int from = 0;
  int to = 0;
  Pose2 measurement;  // expected inverse(X_from) * X_to
  Eigen::Vector3d information = Eigen::Vector3d::Ones();
  Kind kind = Kind::kOdometry;
};

struct PoseGraph {
  std::vector<Pose2> nodes;
  std::vector<PoseGraphEdge> edges;

  int AddNode(const Pose2& pose);
  void AddEdge(const PoseGraphEdge& edge);
  std::size_t loop_edge_count() const;
};

// Residual (dx, dy, dyaw) of inverse(Z) * (inverse(X_from) * X_to), with the
// yaw normalized.
Eigen::Vector3d EdgeResidual(const PoseGraphEdge& edge,
                             const std::vector<Pose2>& poses);

// Sum over edges of r' * diag(information) * r.
double GraphCost(const PoseGraph& graph, const std::vector<Pose2>& poses);

struct OptimizerOptions {
  int max_iterations = 50;
  double step_tolerance = 1e-6;
};

struct OptimizationResult {
  std::vector<Pose2> poses;  // prior poses when !success
  bool success = false;
  int iterations = 0;
  double initial_cost = 0.0;
  double final_cost = 0.0;
  std::string message;
};

// Gauss-Newton with Levenberg-Marquardt fallback on a rejected step, node 0
// held fixed as the gauge. Accepted iterations never increase the cost.
// Singular normal equations abort the run and return the prior poses.
OptimizationResult OptimizePoseGraph(const PoseGraph& graph,
                                     const OptimizerOptions& options = {});

}  // namespace radar_slam

#endif  // RADAR_SLAM_POSE_GRAPH_H_
