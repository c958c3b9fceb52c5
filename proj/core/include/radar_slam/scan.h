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

#ifndef RADAR_SLAM_SCAN_H_
#define RADAR_SLAM_SCAN_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "radar_slam/pose2.h"

namespace radar_slam {

inline constexpr int kMinAzimuths = 8;
inline constexpr int kMinBins = 16;

// Thrown for malformed scan files and for scans that violate the PolarScan
// invariants. `field()` names the offending header field or array.
class ScanFormatError : public std::runtime_error {
 public:
  ScanFormatError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// One radar rotation: `azimuths` rows of `bins` power readings each.
struct PolarScan {
  std::int64_t scan_index = 0;
  int azimuths = 0;
  int bins = 0;
  double range_resolution = 0.0;  // meters per bin
  std::vector<double> azimuth_angles;      // radians, strictly increasing in [0, 2pi)
  std::vector<double> azimuth_timestamps;  // seconds, non-decreasing
  std::vector<float> power;                // row-major azimuths x bins, in [0, 1]

  std::span<const float> row(int azimuth) const {
    return {power.data() + static_cast<std::size_t>(azimuth) * bins,
            static_cast<std::size_t>(bins)};
  }
  std::span<float> mutable_row(int azimuth) {
    return {power.data() + static_cast<std::size_t>(azimuth) * bins,
            static_cast<std::size_t>(bins)};
  }
  float at(int azimuth, int bin) const {
    return power[static_cast<std::size_t>(azimuth) * bins + bin];
  }
  double start_time() const { return azimuth_timestamps.front(); }
  double end_time() const { return azimuth_timestamps.back(); }

  friend bool operator==(const PolarScan&, const PolarScan&) = default;
};

// Throws ScanFormatError if `scan` violates any PolarScan invariant.
void ValidateScan(const PolarScan& scan);

// Allocates an all-zero scan with evenly spaced azimuths covering [0, 2pi) and
// timestamps spread linearly over `rotation_period` starting at `t_start`.
PolarScan MakeEmptyScan(std::int64_t scan_index, int azimuths, int bins,
                        double range_resolution, double t_start,
                        double rotation_period);

enum class Frame { kSensor, kWorld };

struct FeatureCloud {
  std::int64_t scan_index = 0;
  Frame frame = Frame::kSensor;
  std::vector<Point2> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

// Maps every point through `pose` and retags the cloud as `frame`.
FeatureCloud TransformCloud(const FeatureCloud& cloud, const Pose2& pose,
                            Frame frame);

}  // namespace radar_slam

#endif  // RADAR_SLAM_SCAN_H_
