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

#include "radar_slam/loop_closure.h"

#include <algorithm>
#include <stdexcept>

namespace radar_slam {

void LoopClosureConfig::Validate() const {
  descriptor.Validate();
  icp.Validate();
  if (!(cost_gate > 0.0) || inlier_gate < 3) {
    throw std::invalid_argument("loop.cost_gate must be > 0, loop.inlier_gate >= 3");
  }
  if (!(loop_sigma_xy > 0.0 && loop_sigma_yaw > 0.0 && odometry_sigma_xy > 0.0 &&
        odometry_sigma_yaw > 0.0)) {
    throw std::invalid_argument("loop.*_sigma_* must be positive");
  }
  if (max_stored_scans < 1 || adoption_delay < 1 || match.min_separation < 1) {
    throw std::invalid_argument(
        "loop.max_stored_scans, loop.adoption_delay and loop.min_separation "
        "must be >= 1");
  }
}

VerificationResult VerifyCandidate(const LoopCandidate& candidate,
                                   const FeatureCloud& query_cloud,
                                   const FeatureCloud& match_cloud,
                                   const LoopClosureConfig& config) {
  VerificationResult result;
  std::vector<Eigen::Vector2d> target;
  target.reserve(match_cloud.size());
  for (const Point2& p : match_cloud.points) target.push_back(p.xy());
  const KdTree2 tree(std::move(target));
  if (query_cloud.empty()) return result;
  result.registration = Register(query_cloud, tree,
                                 Pose2(0.0, 0.0, candidate.yaw_hint), config.icp);
  const RegistrationResult& reg = result.registration;
  const double mean_cost =
      reg.inlier_count > 0 ? reg.final_cost / reg.inlier_count : 0.0;
  result.accepted = reg.converged && reg.inlier_count >= config.inlier_gate &&
                    mean_cost < config.cost_gate;
  if (result.accepted) {
    result.edge.from = static_cast<int>(candidate.match_scan);
    result.edge.to = static_cast<int>(candidate.query_scan);
    result.edge.measurement = reg.pose;
    result.edge.information =
        InformationFromSigmas(config.loop_sigma_xy, config.loop_sigma_yaw);
    result.edge.kind = PoseGraphEdge::Kind::kLoop;
  }
  return result;
}

std::optional<PoseGraphEdge> VerifyAndClose(const LoopCandidate& candidate,
                                            const FeatureCloud& query_cloud,
                                            const FeatureCloud& match_cloud,
                                            const LoopClosureConfig& config,
                                            PoseGraph* graph) {
  const VerificationResult v =
      VerifyCandidate(candidate, query_cloud, match_cloud, config);
  if (!v.accepted) return std::nullopt;
  graph->AddEdge(v.edge);
  return v.edge;
}

void KeyScanStore::Add(std::shared_ptr<const KeyScan> scan) {
  scans_.push_back(std::move(scan));
  while (scans_.size() > capacity_) scans_.pop_front();
}

std::shared_ptr<const KeyScan> KeyScanStore::Find(
    std::int64_t scan_index) const {
  const auto it = std::lower_bound(
      scans_.begin(), scans_.end(), scan_index,
      [](const std::shared_ptr<const KeyScan>& s, std::int64_t index) {
        return s->scan_index < index;
      });
  if (it == scans_.end() || (*it)->scan_index != scan_index) return nullptr;
  return *it;
}

std::vector<std::shared_ptr<const KeyScan>> KeyScanStore::Snapshot() const {
  return {scans_.begin(), scans_.end()};
}

bool DetectAndClose(const KeyScan& query,
                    const std::vector<std::shared_ptr<const KeyScan>>& scans,
                    const LoopClosureConfig& config, PoseGraph* graph,
                    std::vector<LoopEvent>* events) {
  std::vector<ScanDescriptor> database;
  database.reserve(scans.size());
  for (const auto& s : scans) {
    if (s->scan_index < query.scan_index - config.match.min_separation) {
      database.push_back(s->descriptor);
    }
  }
  const auto candidates = MatchDescriptor(query.descriptor, database,
                                          config.match, config.descriptor);
  for (const LoopCandidate& candidate : candidates) {
    const auto match = std::find_if(
        scans.begin(), scans.end(),
        [&](const auto& s) { return s->scan_index == candidate.match_scan; });
    if (match == scans.end()) continue;
    const VerificationResult v =
        VerifyCandidate(candidate, query.cloud, (*match)->cloud, config);
    if (events != nullptr) {
      LoopEvent event;
      event.query_scan = candidate.query_scan;
      event.match_scan = candidate.match_scan;
      event.descriptor_distance = candidate.descriptor_distance;
      event.yaw_hint = candidate.yaw_hint;
      event.accepted = v.accepted;
      event.inliers = v.registration.inlier_count;
      event.mean_cost = v.registration.inlier_count > 0
                            ? v.registration.final_cost /
                                  v.registration.inlier_count
                            : 0.0;
      event.edge_pose = v.registration.pose;
      events->push_back(event);
    }
    if (v.accepted) {
      graph->AddEdge(v.edge);
      return true;
    }
  }
  return false;
}

}  // namespace radar_slam
