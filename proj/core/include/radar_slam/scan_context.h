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

#ifndef RADAR_SLAM_SCAN_CONTEXT_H_
#define RADAR_SLAM_SCAN_CONTEXT_H_

#include <cstdint>
#include <vector>

#include "Eigen/Core"
#include "radar_slam/scan.h"

namespace radar_slam {

struct DescriptorConfig {
  int num_rings = 20;
  int num_sectors = 60;
  double max_range = 100.0;  // meters

  double sector_width() const;
  void Validate() const;
};

// Polar ring x sector grid over a sensor-frame feature cloud. Each cell holds
// the largest point intensity that falls into it, 0 if empty. Radar clouds
// are planar, so intensity takes the place of the height that the lidar
// variant of this descriptor stores.
struct ScanDescriptor {
  std::int64_t scan_index = 0;
  Eigen::MatrixXd cells;  // num_rings x num_sectors
  double max_range = 0.0;
};

ScanDescriptor Describe(const FeatureCloud& cloud,
                        const DescriptorConfig& config);

struct DescriptorDistance {
  double distance = 1.0;  // in [0, 1]
  int shift = 0;          // best s; ties go to the smallest s
};

// Minimum over circular column shifts s of the mean cosine distance between
// query column j and candidate column (j + s) mod N. Column pairs that are
// both empty are skipped; a pair with exactly one empty column scores 1.
// Returns distance 1 if every pair is empty.
DescriptorDistance CompareDescriptors(const ScanDescriptor& query,
                                      const ScanDescriptor& candidate);

struct LoopCandidate {
  std::int64_t query_scan = 0;
  std::int64_t match_scan = 0;
  double descriptor_distance = 1.0;
  // Yaw of the query scan relative to the match scan implied by the best
  // column shift, normalized to (-pi, pi].
  double yaw_hint = 0.0;
};

struct MatchConfig {
  double distance_threshold = 0.25;
  int min_separation = 50;  // scans
  int max_candidates = 3;
};

// Candidates among `database` entries more than `min_separation` scans older
// than the query whose distance is below the threshold, best first (ties by
// older match scan).
std::vector<LoopCandidate> MatchDescriptor(
    const ScanDescriptor& query, const std::vector<ScanDescriptor>& database,
    const MatchConfig& match_config, const DescriptorConfig& descriptor_config);

}  // namespace radar_slam

#endif  // RADAR_SLAM_SCAN_CONTEXT_H_
