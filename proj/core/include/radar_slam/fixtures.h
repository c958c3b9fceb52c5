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

#ifndef RADAR_SLAM_FIXTURES_H_
#define RADAR_SLAM_FIXTURES_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "Eigen/Core"
#include "radar_slam/simulator.h"

namespace radar_slam {

// A ready-to-render synthetic sequence.
struct Fixture {
  std::string name;
  World world;
  TrajectoryScript script;
  int num_scans = 0;
  ScanParams params;
  ArtifactConfig artifacts;
};

// Closed polygonal route driven at constant `speed` from the middle of the
// first edge for `distance` meters (wrapping around as many laps as needed).
// Every vertex is rounded by a circular arc of `corner_radius` entered and
// left through clothoids of `transition_length`, so curvature is continuous;
// zero gives plain circular fillets. Yaw follows the path tangent.
TrajectoryScript MakeLoopScript(const std::vector<Eigen::Vector2d>& corners,
                                double corner_radius, double transition_length,
                                double speed, double distance,
                                double start_time = 0.0);

// Axis-aligned rectangle outline.
void AddBox(const Eigen::Vector2d& min_corner,
            const Eigen::Vector2d& max_corner, double reflectivity,
            World* world);

// Built-in sequences:
//   stationary  101 scans at rest in a furnished room, mild range noise
//   straight    60 scans down a jagged corridor at 1 m/s, noise free
//   square_loop 300 scans, a little over one lap of a 30 m square route at
//               2 m/s, mild range noise
//   noisy_loop  400 scans around a 50 x 30 m block with speckle (0.002),
//               ghosts (0.05), saturation and range noise
// `seed` keys every artifact draw.
std::vector<std::string> FixtureNames();
Fixture MakeFixture(std::string_view name, std::uint64_t seed = 0);

}  // namespace radar_slam

#endif  // RADAR_SLAM_FIXTURES_H_
