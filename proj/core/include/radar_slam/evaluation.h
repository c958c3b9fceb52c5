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

#ifndef RADAR_SLAM_EVALUATION_H_
#define RADAR_SLAM_EVALUATION_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "radar_slam/pose2.h"

namespace radar_slam {

struct StampedPose {
  std::int64_t scan_index = 0;
  Pose2 pose;
};
using Trajectory = std::vector<StampedPose>;

// CSV with header "scan_index,x,y,yaw".
Trajectory ReadTrajectoryCsv(const std::filesystem::path& path);
void WriteTrajectoryCsv(const Trajectory& trajectory,
                        const std::filesystem::path& path);

// Pairs the poses that share a scan index, in estimate order. Throws
// std::invalid_argument if no index is shared.
void AssociateByIndex(const Trajectory& estimate,
                      const Trajectory& ground_truth,
                      std::vector<Pose2>* matched_estimate,
                      std::vector<Pose2>* matched_ground_truth);

inline constexpr std::array<double, 8> kKittiSegmentLengths = {
    100.0, 200.0, 300.0, 400.0, 500.0, 600.0, 700.0, 800.0};

struct DriftResult {
  double translation_percent = 0.0;
  double rotation_deg_per_100m = 0.0;
  int segments = 0;
};

// Relative drift averaged over every sub-sequence whose ground-truth arc
// length reaches one of `lengths`. Every pose is a start; a segment from i
// ends at the first pose j with arc(j) - arc(i) >= L. Per segment,
// E = (est_i^-1 est_j)^-1 (gt_i^-1 gt_j), and the errors are |t(E)| / L and
// |yaw(E)| / L. Throws std::invalid_argument if the ground truth is shorter
// than the smallest length or the inputs differ in size.
DriftResult KittiDrift(std::span<const Pose2> estimate,
                       std::span<const Pose2> ground_truth,
                       std::span<const double> lengths = kKittiSegmentLengths);

// Rigid transform T minimizing sum |T * est_i - gt_i|^2 over positions.
Pose2 AlignRigid(std::span<const Pose2> estimate,
                 std::span<const Pose2> ground_truth);

// Position RMSE after AlignRigid.
double AteRmse(std::span<const Pose2> estimate,
               std::span<const Pose2> ground_truth);

}  // namespace radar_slam

#endif  // RADAR_SLAM_EVALUATION_H_
