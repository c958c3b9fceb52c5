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

#ifndef RADAR_SLAM_ABLATION_H_
#define RADAR_SLAM_ABLATION_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "radar_slam/config.h"
#include "radar_slam/evaluation.h"
#include "radar_slam/pipeline.h"
#include "radar_slam/scan.h"

namespace radar_slam {

struct AblationVariant {
  std::string name;
  PipelineConfig config;
};

// full, no_probability_filter, no_geometry_filter, no_loop and one
// scan_to_frames(n) per entry of `frames`, all derived from `base`.
std::vector<AblationVariant> StandardAblation(const PipelineConfig& base,
                                              const std::vector<int>& frames);

struct TrajectoryScore {
  std::optional<DriftResult> drift;  // absent when the path is under 100 m
  double ate_rmse = 0.0;
};

// Associates by scan index, then scores.
TrajectoryScore ScoreTrajectory(const Trajectory& estimate,
                                const Trajectory& ground_truth);

struct AblationRow {
  std::string variant;
  std::string trajectory;  // "odometry" or "corrected"
  TrajectoryScore score;
};

// Runs every variant over the same scans and scores its odometry and, when
// loop closure is enabled, its corrected trajectory.
std::vector<AblationRow> RunAblation(const std::vector<AblationVariant>& variants,
                                     const std::vector<PolarScan>& scans,
                                     const Trajectory& ground_truth,
                                     bool single_thread = true);

// Same, streaming scans from files so the sequence need not fit in memory.
std::vector<AblationRow> RunAblation(
    const std::vector<AblationVariant>& variants,
    const std::vector<std::filesystem::path>& scan_files,
    const Trajectory& ground_truth, bool single_thread = true);

// CSV "variant,trajectory,kitti_trans_pct,kitti_rot_deg_per_100m,ate_rmse";
// missing drift values are left empty.
void WriteAblationCsv(const std::vector<AblationRow>& rows,
                      const std::filesystem::path& path);

}  // namespace radar_slam

#endif  // RADAR_SLAM_ABLATION_H_
