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

#include "radar_slam/ablation.h"

#include <functional>

#include "csv_table.h"
#include "radar_slam/scan_io.h"

namespace radar_slam {
namespace {

std::vector<AblationRow> RunVariants(
    const std::vector<AblationVariant>& variants, std::size_t num_scans,
    const std::function<PolarScan(std::size_t)>& scan_at,
    const Trajectory& ground_truth, bool single_thread) {
  std::vector<AblationRow> rows;
  for (const AblationVariant& v : variants) {
    Pipeline pipeline(v.config, single_thread);
    for (std::size_t i = 0; i < num_scans; ++i) {
      pipeline.ProcessScan(scan_at(i));
    }
    pipeline.Finish();
    rows.push_back(
        {v.name, "odometry", ScoreTrajectory(pipeline.odometry(), ground_truth)});
    if (v.config.loop_enabled) {
      rows.push_back({v.name, "corrected",
                      ScoreTrajectory(pipeline.corrected(), ground_truth)});
    }
  }
  return rows;
}

}  // namespace

std::vector<AblationVariant> StandardAblation(const PipelineConfig& base,
                                              const std::vector<int>& frames) {
  std::vector<AblationVariant> variants;
  variants.push_back({"full", base});
  AblationVariant v{"no_probability_filter", base};
  v.config.probability_filter_enabled = false;
  variants.push_back(v);
  v = {"no_geometry_filter", base};
  v.config.geometry_filter_enabled = false;
  variants.push_back(v);
  if (base.loop_enabled) {
    v = {"no_loop", base};
    v.config.loop_enabled = false;
    variants.push_back(v);
  }
  for (const int n : frames) {
    v = {"", base};
    v.config.matching = MatchingMode::kScanToFrames;
    v.config.frames = n;
    v.name = MatchingName(v.config);
    variants.push_back(v);
  }
  return variants;
}

TrajectoryScore ScoreTrajectory(const Trajectory& estimate,
                                const Trajectory& ground_truth) {
  std::vector<Pose2> est;
  std::vector<Pose2> gt;
  AssociateByIndex(estimate, ground_truth, &est, &gt);
  TrajectoryScore score;
  score.ate_rmse = AteRmse(est, gt);
  double length = 0.0;
  for (std::size_t i = 1; i < gt.size(); ++i) {
    length += (gt[i].translation() - gt[i - 1].translation()).norm();
  }
  if (length >= kKittiSegmentLengths.front()) {
    score.drift = KittiDrift(est, gt);
  }
  return score;
}

std::vector<AblationRow> RunAblation(const std::vector<AblationVariant>& variants,
                                     const std::vector<PolarScan>& scans,
                                     const Trajectory& ground_truth,
                                     bool single_thread) {
  return RunVariants(
      variants, scans.size(), [&scans](std::size_t i) { return scans[i]; },
      ground_truth, single_thread);
}

std::vector<AblationRow> RunAblation(
    const std::vector<AblationVariant>& variants,
    const std::vector<std::filesystem::path>& scan_files,
    const Trajectory& ground_truth, bool single_thread) {
  return RunVariants(
      variants, scan_files.size(),
      [&scan_files](std::size_t i) { return ReadScan(scan_files[i]); },
      ground_truth, single_thread);
}

void WriteAblationCsv(const std::vector<AblationRow>& rows,
                      const std::filesystem::path& path) {
  std::string text =
      "variant,trajectory,kitti_trans_pct,kitti_rot_deg_per_100m,ate_rmse\n";
  for (const AblationRow& r : rows) {
    text += r.variant + "," + r.trajectory + ",";
    if (r.score.drift) {
      text += internal::FormatDouble(r.score.drift->translation_percent) + "," +
              internal::FormatDouble(r.score.drift->rotation_deg_per_100m);
    } else {
      text += ",";
    }
    text += "," + internal::FormatDouble(r.score.ate_rmse) + "\n";
  }
  internal::WriteTextFile(path, text);
}

}  // namespace radar_slam
