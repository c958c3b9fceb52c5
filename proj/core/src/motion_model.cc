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

#include "radar_slam/motion_model.h"

#include <stdexcept>

namespace radar_slam {

VelocityEstimate EstimateVelocity(const Pose2& previous, const Pose2& current,
                                  double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("EstimateVelocity: dt must be positive");
  }
  const Pose2 relative = Between(previous, current);
  return {relative.x() / dt, relative.y() / dt, relative.yaw() / dt};
}

FeatureCloud CompensateMotion(const FeatureCloud& cloud,
                              const VelocityEstimate& velocity, double t0) {
  FeatureCloud out;
  out.scan_index = cloud.scan_index;
  out.frame = cloud.frame;
  out.points.reserve(cloud.size());
  for (const Point2& p : cloud.points) {
    const double dt = p.t - t0;
    if (dt == 0.0) {
      out.points.push_back(p);
      continue;
    }
    out.points.push_back(TransformPoint(velocity.Displacement(dt), p));
  }
  return out;
}

}  // namespace radar_slam
