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

#ifndef RADAR_SLAM_SIMULATOR_H_
#define RADAR_SLAM_SIMULATOR_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <vector>

#include "Eigen/Core"
#include "radar_slam/pose2.h"
#include "radar_slam/scan.h"

namespace radar_slam {

struct Segment {
  Eigen::Vector2d a = Eigen::Vector2d::Zero();
  Eigen::Vector2d b = Eigen::Vector2d::Zero();
  double reflectivity = 1.0;  // (0, 1]
};

struct World {
  std::vector<Segment> segments;

  void Validate() const;
  // Nearest segment along a ray; `range` is infinite on a miss.
  struct Hit {
    double range = std::numeric_limits<double>::infinity();
    double reflectivity = 0.0;
  };
  Hit CastRay(const Eigen::Vector2d& origin, double angle) const;
};

// CSV rows "x1,y1,x2,y2,reflectivity"; a non-numeric first line is a header.
World ReadWorldCsv(const std::filesystem::path& path);
void WriteWorldCsv(const World& world, const std::filesystem::path& path);

struct Waypoint {
  double time = 0.0;
  Pose2 pose;
};

// Piecewise constant-velocity trajectory through time-stamped waypoints.
class TrajectoryScript {
 public:
  TrajectoryScript() = default;
  explicit TrajectoryScript(std::vector<Waypoint> waypoints);

  const std::vector<Waypoint>& waypoints() const { return waypoints_; }
  double start_time() const { return waypoints_.front().time; }
  double end_time() const { return waypoints_.back().time; }
  // Linear in x, y and (shortest-arc) yaw between the bracketing waypoints;
  // clamped outside the scripted span.
  Pose2 PoseAt(double time) const;

 private:
  std::vector<Waypoint> waypoints_;
};

// CSV rows "time,x,y,yaw"; a non-numeric first line is a header.
TrajectoryScript ReadScriptCsv(const std::filesystem::path& path);
void WriteScriptCsv(const TrajectoryScript& script,
                    const std::filesystem::path& path);

struct ScanParams {
  int azimuths = 400;
  int bins = 1000;
  double range_resolution = 0.05;  // meters per bin
  double rotation_period = 0.25;   // seconds (4 Hz)
  double pulse_sigma_bins = 3.0;   // standard deviation of a return pulse
};

struct ArtifactConfig {
  // Per cell: a short flat blob of speckle starting at that cell.
  double speckle_prob = 0.0;
  double speckle_intensity_min = 0.4;
  double speckle_intensity_max = 0.9;
  int speckle_extent_bins = 3;
  // Per return: a half-intensity pulse at twice the hit range. Draws are
  // shared by blocks of `ghost_span_azimuths` consecutive azimuths, so a ghost
  // images a stretch of wall, as multipath does.
  double ghost_prob = 0.0;
  int ghost_span_azimuths = 16;
  // Per azimuth: a full-intensity run.
  double saturation_prob = 0.0;
  int saturation_min_bins = 20;
  int saturation_max_bins = 80;
  // Gaussian jitter on every return's range, meters.
  double range_noise_std = 0.0;
  std::uint64_t noise_seed = 0;

  void Validate() const;
};

enum class CellLabel : std::uint8_t {
  kEmpty = 0,
  kReturn = 1,
  kGhost = 2,
  kSpeckle = 3,
  kSaturation = 4,
};

struct RenderedScan {
  PolarScan scan;
  // Dominant contributor of every cell, same layout as scan.power.
  std::vector<CellLabel> labels;
};

using PoseFunction = std::function<Pose2(double)>;

// Renders one rotation. Every azimuth is cast from the sensor pose at its own
// timestamp, so motion during the rotation shows up as skew. Artifact draws
// come from a counter-based generator keyed on (seed, scan, azimuth, cell),
// so output is independent of evaluation order.
RenderedScan RenderScan(const World& world, const PoseFunction& pose_at,
                        std::int64_t scan_index, double t_start,
                        const ScanParams& params,
                        const ArtifactConfig& artifacts);

// Ground-truth sensor pose at the start of each scan.
std::vector<Pose2> GroundTruthPoses(const TrajectoryScript& script,
                                    int num_scans, const ScanParams& params);

struct SequenceFiles {
  std::vector<std::filesystem::path> scans;
  std::filesystem::path ground_truth;
};

// Writes `out_dir`/scans/scan_NNNNNN.rscan and `out_dir`/ground_truth.csv
// (scan_index,x,y,yaw). Throws std::invalid_argument if the script does not
// cover all scans.
SequenceFiles GenerateSequence(const World& world,
                               const TrajectoryScript& script, int num_scans,
                               const ScanParams& params,
                               const ArtifactConfig& artifacts,
                               const std::filesystem::path& out_dir);

// Uniform [0, 1) value for a key; the generator behind RenderScan.
double CounterUniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                      std::uint64_t c, std::uint64_t stream);

}  // namespace radar_slam

#endif  // RADAR_SLAM_SIMULATOR_H_
