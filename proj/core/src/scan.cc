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

#include "radar_slam/scan.h"

#include <cmath>
#include <numbers>
#include <string>

namespace radar_slam {

void ValidateScan(const PolarScan& scan) {
  if (scan.azimuths < kMinAzimuths) {
    throw ScanFormatError("azimuths", "need at least " +
                                          std::to_string(kMinAzimuths) +
                                          ", got " +
                                          std::to_string(scan.azimuths));
  }
  if (scan.bins < kMinBins) {
    throw ScanFormatError("bins", "need at least " + std::to_string(kMinBins) +
                                      ", got " + std::to_string(scan.bins));
  }
  if (!(std::isfinite(scan.range_resolution) && scan.range_resolution > 0.0)) {
    throw ScanFormatError("range_resolution", "must be finite and positive");
  }
  const auto a = static_cast<std::size_t>(scan.azimuths);
  if (scan.azimuth_angles.size() != a) {
    throw ScanFormatError("azimuth_angles", "expected " + std::to_string(a) +
                                                " entries, got " +
                                                std::to_string(
                                                    scan.azimuth_angles.size()));
  }
  if (scan.azimuth_timestamps.size() != a) {
    throw ScanFormatError(
        "azimuth_timestamps",
        "expected " + std::to_string(a) + " entries, got " +
            std::to_string(scan.azimuth_timestamps.size()));
  }
  if (scan.power.size() != a * static_cast<std::size_t>(scan.bins)) {
    throw ScanFormatError("power", "expected " +
                                       std::to_string(a * scan.bins) +
                                       " cells, got " +
                                       std::to_string(scan.power.size()));
  }
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < a; ++i) {
    const double angle = scan.azimuth_angles[i];
    if (!std::isfinite(angle) || angle < 0.0 || angle >= kTwoPi) {
      throw ScanFormatError("azimuth_angles",
                            "entry " + std::to_string(i) + " outside [0, 2pi)");
    }
    if (i > 0 && !(angle > scan.azimuth_angles[i - 1])) {
      throw ScanFormatError("azimuth_angles", "not strictly increasing at entry " +
                                                  std::to_string(i));
    }
    const double stamp = scan.azimuth_timestamps[i];
    if (!std::isfinite(stamp)) {
      throw ScanFormatError("azimuth_timestamps",
                            "entry " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && stamp < scan.azimuth_timestamps[i - 1]) {
      throw ScanFormatError("azimuth_timestamps",
                            "decreasing at entry " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < scan.power.size(); ++i) {
    const float v = scan.power[i];
    if (!(v >= 0.0f && v <= 1.0f)) {
      throw ScanFormatError("power", "cell " + std::to_string(i) +
                                         " outside [0, 1]");
    }
  }
}

PolarScan MakeEmptyScan(std::int64_t scan_index, int azimuths, int bins,
                        double range_resolution, double t_start,
                        double rotation_period) {
  PolarScan scan;
  scan.scan_index = scan_index;
  scan.azimuths = azimuths;
  scan.bins = bins;
  scan.range_resolution = range_resolution;
  scan.azimuth_angles.resize(azimuths);
  scan.azimuth_timestamps.resize(azimuths);
  for (int a = 0; a < azimuths; ++a) {
    scan.azimuth_angles[a] = 2.0 * std::numbers::pi * a / azimuths;
    scan.azimuth_timestamps[a] = t_start + rotation_period * a / azimuths;
  }
  scan.power.assign(static_cast<std::size_t>(azimuths) * bins, 0.0f);
  return scan;
}

FeatureCloud TransformCloud(const FeatureCloud& cloud, const Pose2& pose,
                            Frame frame) {
  FeatureCloud out;
  out.scan_index = cloud.scan_index;
  out.frame = frame;
  out.points.reserve(cloud.points.size());
  for (const Point2& p : cloud.points) {
    out.points.push_back(TransformPoint(pose, p));
  }
  return out;
}

}  // namespace radar_slam
