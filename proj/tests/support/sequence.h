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

#ifndef RADAR_SLAM_TESTS_SUPPORT_SEQUENCE_H_
#define RADAR_SLAM_TESTS_SUPPORT_SEQUENCE_H_

#include <vector>

#include "radar_slam/evaluation.h"
#include "radar_slam/fixtures.h"
#include "radar_slam/scan.h"
#include "radar_slam/simulator.h"

namespace radar_slam {
namespace testing {

struct Sequence {
  std::vector<PolarScan> scans;
  Trajectory ground_truth;
};

// Renders `num_scans` scans of `fixture` in memory (all of them when
// `num_scans` is negative).
inline Sequence RenderFixture(const Fixture& fixture, int num_scans = -1) {
  if (num_scans < 0) num_scans = fixture.num_scans;
  const PoseFunction pose_at = [&fixture](double t) {
    return fixture.script.PoseAt(t);
  };
  Sequence s;
  for (int k = 0; k < num_scans; ++k) {
    const double t = fixture.script.start_time() +
                     k * fixture.params.rotation_period;
    s.scans.push_back(RenderScan(fixture.world, pose_at, k, t, fixture.params,
                                 fixture.artifacts)
                          .scan);
    s.ground_truth.push_back({k, fixture.script.PoseAt(t)});
  }
  return s;
}

}  // namespace testing
}  // namespace radar_slam

#endif  // RADAR_SLAM_TESTS_SUPPORT_SEQUENCE_H_
