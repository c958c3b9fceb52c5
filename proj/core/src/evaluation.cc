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

#include "radar_slam/evaluation.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "csv_table.h"

namespace radar_slam {
namespace {

void CheckSizes(std::span<const Pose2> a, std::span<const Pose2> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("trajectory sizes differ");
  }
  if (a.size() < 2) {
    throw std::invalid_argument("metrics need at least two paired poses");
  }
}

}  // namespace

Trajectory ReadTrajectoryCsv(const std::filesystem::path& path) {
  Trajectory trajectory;
  for (const auto& r : internal::ReadNumericCsv(path, 4, "trajectory")) {
    trajectory.push_back(
        {static_cast<std::int64_t>(r[0]), Pose2(r[1], r[2], r[3])});
  }
  return trajectory;
}

void WriteTrajectoryCsv(const Trajectory& trajectory,
                        const std::filesystem::path& path) {
  std::string text = "scan_index,x,y,yaw\n";
  for (const StampedPose& s : trajectory) {
    text += std::to_string(s.scan_index) + "," +
            internal::FormatDouble(s.pose.x()) + "," +
            internal::FormatDouble(s.pose.y()) + "," +
            internal::FormatDouble(s.pose.yaw()) + "\n";
  }
  internal::WriteTextFile(path, text);
}

void AssociateByIndex(const Trajectory& estimate,
                      const Trajectory& ground_truth,
                      std::vector<Pose2>* matched_estimate,
                      std::vector<Pose2>* matched_ground_truth) {
  std::unordered_map<std::int64_t, Pose2> truth;
  for (const StampedPose& s : ground_truth) truth[s.scan_index] = s.pose;
  matched_estimate->clear();
  matched_ground_truth->clear();
  for (const StampedPose& s : estimate) {
    const auto it = truth.find(s.scan_index);
    if (it == truth.end()) continue;
    matched_estimate->push_back(s.pose);
    matched_ground_truth->push_back(it->second);
  }
  if (matched_estimate->empty()) {
    throw std::invalid_argument("trajectories share no scan index");
  }
}

DriftResult KittiDrift(std::span<const Pose2> estimate,
                       std::span<const Pose2> ground_truth,
                       std::span<const double> lengths) {
  CheckSizes(estimate, ground_truth);
  const std::size_t n = ground_truth.size();
  std::vector<double> arc(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    arc[i] = arc[i - 1] + (ground_truth[i].translation() -
                           ground_truth[i - 1].translation())
                              .norm();
  }
  const double shortest = *std::min_element(lengths.begin(), lengths.end());
  if (arc.back() < shortest) {
    throw std::invalid_argument(
        "ground truth is shorter than the shortest drift segment (" +
        std::to_string(shortest) + " m); use ATE instead");
  }
  double translation_sum = 0.0;
  double rotation_sum = 0.0;
  int segments = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (const double length : lengths) {
      const auto end =
          std::lower_bound(arc.begin() + i, arc.end(), arc[i] + length);
      if (end == arc.end()) continue;
      const auto j = static_cast<std::size_t>(end - arc.begin());
      const Pose2 rel_est = Between(estimate[i], estimate[j]);
      const Pose2 rel_gt = Between(ground_truth[i], ground_truth[j]);
      const Pose2 error = rel_est.inverse() * rel_gt;
      translation_sum += error.translation().norm() / length;
      rotation_sum += std::abs(error.yaw()) / length;
      ++segments;
    }
  }
  DriftResult result;
  result.segments = segments;
  if (segments > 0) {
    result.translation_percent = 100.0 * translation_sum / segments;
    result.rotation_deg_per_100m =
        100.0 * (180.0 / std::numbers::pi) * rotation_sum / segments;
  }
  return result;
}

Pose2 AlignRigid(std::span<const Pose2> estimate,
                 std::span<const Pose2> ground_truth) {
  CheckSizes(estimate, ground_truth);
  const double n = static_cast<double>(estimate.size());
  Eigen::Vector2d mean_est = Eigen::Vector2d::Zero();
  Eigen::Vector2d mean_gt = Eigen::Vector2d::Zero();
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    mean_est += estimate[i].translation();
    mean_gt += ground_truth[i].translation();
  }
  mean_est /= n;
  mean_gt /= n;
  double dot = 0.0;
  double cross = 0.0;
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    const Eigen::Vector2d e = estimate[i].translation() - mean_est;
    const Eigen::Vector2d g = ground_truth[i].translation() - mean_gt;
    dot += e.dot(g);
    cross += e.x() * g.y() - e.y() * g.x();
  }
  const double yaw = std::atan2(cross, dot);
  const Pose2 rotation(0.0, 0.0, yaw);
  const Eigen::Vector2d t = mean_gt - rotation * mean_est;
  return Pose2(t.x(), t.y(), yaw);
}

double AteRmse(std::span<const Pose2> estimate,
               std::span<const Pose2> ground_truth) {
  const Pose2 align = AlignRigid(estimate, ground_truth);
  double sum = 0.0;
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    sum += (align * estimate[i].translation() - ground_truth[i].translation())
               .squaredNorm();
  }
  return std::sqrt(sum / static_cast<double>(estimate.size()));
}

}  // namespace radar_slam
