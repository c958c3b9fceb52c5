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

#ifndef RADAR_SLAM_FEATURE_DETECTOR_H_
#define RADAR_SLAM_FEATURE_DETECTOR_H_

#include "radar_slam/scan.h"

namespace radar_slam {

struct DetectorConfig {
  double intensity_threshold = 0.35;
  double gradient_threshold = 0.15;  // max |power[b+1] - power[b]|
  int min_run_bins = 2;
  int max_features_per_azimuth = 4;

  void Validate() const;
};

// Per azimuth, marks bins that are bright (power >= intensity_threshold) and
// flat (|forward difference| <= gradient_threshold; the last bin uses the
// backward difference), groups marked bins into maximal runs, and emits the
// midpoint bin of every run of at least `min_run_bins`. Only the
// `max_features_per_azimuth` runs with the highest peak power survive; ties
// go to the run that starts at the smaller bin.
//
// Points are in the sensor frame at range (bin + 0.5) * range_resolution,
// stamped with their azimuth's timestamp and carrying the run's peak power as
// intensity. Output is ordered by azimuth, then by bin.
FeatureCloud DetectFeatures(const PolarScan& scan, const DetectorConfig& config);

}  // namespace radar_slam

#endif  // RADAR_SLAM_FEATURE_DETECTOR_H_
