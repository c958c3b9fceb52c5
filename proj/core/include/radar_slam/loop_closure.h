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

#ifndef RADAR_SLAM_LOOP_CLOSURE_H_
#define RADAR_SLAM_LOOP_CLOSURE_H_

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <vector>

#include "radar_slam/pose_graph.h"
#include "radar_slam/registration.h"
#include "radar_slam/scan.h"
#include "radar_slam/scan_context.h"

namespace radar_slam {

struct LoopClosureConfig {
  DescriptorConfig descriptor;
  MatchConfig match;
  RegistrationConfig icp;  // used for verification only
  double cost_gate = 0.02;  // mean robust cost per inlier, meters^2
  int inlier_gate = 30;
  double loop_sigma_xy = 0.1;
  double loop_sigma_yaw = 0.01;
  double odometry_sigma_xy = 0.05;
  double odometry_sigma_yaw = 0.005;
  int max_stored_scans = 2000;
  // Optimized poses computed after scan k are adopted by tracking after scan
  // k + adoption_delay.
  int adoption_delay = 1;

  void Validate() const;
};

// Surface cloud (sensor frame, motion compensated) and descriptor of a past
// scan, shared read-only between tracking and the loop back-end.
struct KeyScan {
  std::int64_t scan_index = 0;
  FeatureCloud cloud;
  ScanDescriptor descriptor;
};

struct VerificationResult {
  bool accepted = false;
  RegistrationResult registration;
  PoseGraphEdge edge;  // meaningful when accepted
};

// Registers the query cloud against a temporary map built from the match
// cloud, seeded with the candidate's yaw hint. Accepts when ICP converged,
// the mean cost per inlier is below cost_gate and there are at least
// inlier_gate inliers. The edge runs from the match node to the query node.
VerificationResult VerifyCandidate(const LoopCandidate& candidate,
                                   const FeatureCloud& query_cloud,
                                   const FeatureCloud& match_cloud,
                                   const LoopClosureConfig& config);

// Appends the verified edge to `graph` and returns it, or returns nothing if
// verification failed.
std::optional<PoseGraphEdge> VerifyAndClose(const LoopCandidate& candidate,
                                            const FeatureCloud& query_cloud,
                                            const FeatureCloud& match_cloud,
                                            const LoopClosureConfig& config,
                                            PoseGraph* graph);

// Bounded store of the most recent key scans.
class KeyScanStore {
 public:
  explicit KeyScanStore(std::size_t capacity) : capacity_(capacity) {}

  void Add(std::shared_ptr<const KeyScan> scan);
  std::shared_ptr<const KeyScan> Find(std::int64_t scan_index) const;
  // Immutable view for a back-end job; later Add() calls do not affect it.
  std::vector<std::shared_ptr<const KeyScan>> Snapshot() const;
  std::size_t size() const { return scans_.size(); }

 private:
  std::size_t capacity_;
  std::deque<std::shared_ptr<const KeyScan>> scans_;
};

struct LoopEvent {
  std::int64_t query_scan = 0;
  std::int64_t match_scan = 0;
  double descriptor_distance = 0.0;
  double yaw_hint = 0.0;
  bool accepted = false;
  double mean_cost = 0.0;
  int inliers = 0;
  Pose2 edge_pose;
};

// Detects candidates for `query` among `scans` and verifies them best first.
// Appends at most one loop edge to `graph`; every verified candidate is
// reported in `events`.
bool DetectAndClose(const KeyScan& query,
                    const std::vector<std::shared_ptr<const KeyScan>>& scans,
                    const LoopClosureConfig& config, PoseGraph* graph,
                    std::vector<LoopEvent>* events);

}  // namespace radar_slam

#endif  // RADAR_SLAM_LOOP_CLOSURE_H_
