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

#ifndef RADAR_SLAM_CONFIG_H_
#define RADAR_SLAM_CONFIG_H_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "radar_slam/feature_detector.h"
#include "radar_slam/feature_map.h"
#include "radar_slam/geometry_filter.h"
#include "radar_slam/loop_closure.h"
#include "radar_slam/pose_graph.h"
#include "radar_slam/registration.h"

namespace radar_slam {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class MatchingMode { kScanToMap, kScanToFrames };

struct PipelineConfig {
  DetectorConfig detector;
  GeometryConfig geometry;
  RegistrationConfig icp;
  FilterConfig pfilter;
  LoopClosureConfig loop;
  OptimizerOptions optimizer;

  MatchingMode matching = MatchingMode::kScanToMap;
  int frames = 1;  // local map size in kScanToFrames
  bool geometry_filter_enabled = true;
  bool probability_filter_enabled = true;
  bool loop_enabled = true;
  // Motion compensation uses the mean twist of this many recent scan steps.
  int velocity_window = 2;

  // Throws ConfigError on the first invalid field.
  void Validate() const;
};

// INI text, one section per module; keys are addressed as section.key:
//
//   [pipeline]
//   matching = scan_to_frames(9)     ; or scan_to_map
//   geometry_filter = true
//   [pfilter]
//   theta_p = 0.25
//
// Comments start a line with '#' or ';'. Omitted keys keep their defaults;
// unknown keys and malformed values throw ConfigError.
PipelineConfig ParseConfig(std::string_view text);
PipelineConfig LoadConfig(const std::filesystem::path& path);

// Sets one dotted key, e.g. SetConfigValue("icp.huber_delta", "0.5", &c).
void SetConfigValue(std::string_view key, std::string_view value,
                    PipelineConfig* config);

// Every key with its current value, in a form ParseConfig reads back.
std::string FormatConfig(const PipelineConfig& config);
std::vector<std::string> ConfigKeys();

// "scan_to_map" or "scan_to_frames(n)".
std::string MatchingName(const PipelineConfig& config);

}  // namespace radar_slam

#endif  // RADAR_SLAM_CONFIG_H_
