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

#ifndef RADAR_SLAM_MOTION_MODEL_H_
#define RADAR_SLAM_MOTION_MODEL_H_

#include "radar_slam/pose2.h"
#include "radar_slam/scan.h"

namespace radar_slam {

// Constant twist between consecutive scans, expressed in the earlier scan's
// frame.
struct VelocityEstimate {
  double v_x = 0.0;    // m/s
  double v_y = 0.0;    // m/s
  double omega = 0.0;  // rad/s

  // Relative motion accumulated over `dt` seconds, as a single
  // rotate-then-translate pose (first-order, not the SE(2) exponential).
  Pose2 Displacement(double dt) const {
    return Pose2(v_x * dt, v_y * dt, omega * dt);
  }

  friend bool operator==(const VelocityEstimate&,
                         const VelocityEstimate&) = default;
};

// Twist that carries `previous` to `current` in `dt` seconds. Throws
// std::invalid_argument unless dt > 0.
VelocityEstimate EstimateVelocity(const Pose2& previous, const Pose2& current,
                                  double dt);

// De-skews a sensor-frame cloud to time `t0`: each point observed at time t is
// mapped through the sensor displacement between t0 and t. Timestamps are
// preserved.
FeatureCloud CompensateMotion(const FeatureCloud& cloud,
                              const VelocityEstimate& velocity, double t0);

}  // namespace radar_slam

#endif  // RADAR_SLAM_MOTION_MODEL_H_
