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

#include "radar_slam/feature_detector.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace radar_slam {
namespace {

struct Run {
  int begin = 0;  // inclusive
  int end = 0;    // inclusive
  float peak = 0.0f;
};

}  // namespace

void DetectorConfig::Validate() const {
  if (!(intensity_threshold > 0.0 && intensity_threshold < 1.0)) {
    throw std::invalid_argument("detector.intensity_threshold must be in (0, 1)");
  }
  if (!(gradient_threshold > 0.0)) {
    throw std::invalid_argument("detector.gradient_threshold must be > 0");
  }
  if (min_run_bins < 1) {
    throw std::invalid_argument("detector.min_run_bins must be >= 1");
  }
  if (max_features_per_azimuth < 1) {
    throw std::invalid_argument(
        "detector.max_features_per_azimuth must be >= 1");
  }
}

FeatureCloud DetectFeatures(const PolarScan& scan,
                            const DetectorConfig& config) {
  config.Validate();
  FeatureCloud cloud;
  cloud.scan_index = scan.scan_index;
  cloud.frame = Frame::kSensor;

  const int bins = scan.bins;
  const auto threshold = static_cast<float>(config.intensity_threshold);
  const auto max_gradient = static_cast<float>(config.gradient_threshold);
  std::vector<Run> runs;
  for (int a = 0; a < scan.azimuths; ++a) {
    const auto row = scan.row(a);
    runs.clear();
    int run_begin = -1;
    float run_peak = 0.0f;
    for (int b = 0; b <= bins; ++b) {
      bool marked = false;
      if (b < bins && row[b] >= threshold) {
        const float gradient = b + 1 < bins ? row[b + 1] - row[b]
                                            : row[b] - row[b - 1];
        marked = std::abs(gradient) <= max_gradient;
      }
      if (marked) {
        if (run_begin < 0) {
          run_begin = b;
          run_peak = row[b];
        } else {
          run_peak = std::max(run_peak, row[b]);
        }
      } else if (run_begin >= 0) {
        if (b - run_begin >= config.min_run_bins) {
          runs.push_back({run_begin, b - 1, run_peak});
        }
        run_begin = -1;
      }
    }
    if (runs.empty()) continue;

    const auto limit = static_cast<std::size_t>(config.max_features_per_azimuth);
    if (runs.size() > limit) {
      std::stable_sort(runs.begin(), runs.end(),
                       [](const Run& l, const Run& r) { return l.peak > r.peak; });
      runs.resize(limit);
      std::sort(runs.begin(), runs.end(),
                [](const Run& l, const Run& r) { return l.begin < r.begin; });
    }

    const double angle = scan.azimuth_angles[a];
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    for (const Run& run : runs) {
      const int mid = run.begin + (run.end - run.begin) / 2;
      const double range = (mid + 0.5) * scan.range_resolution;
      cloud.points.push_back(
          {range * c, range * s, scan.azimuth_timestamps[a], run.peak});
    }
  }
  return cloud;
}

}  // namespace radar_slam
