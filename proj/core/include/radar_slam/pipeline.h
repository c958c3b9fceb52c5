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

#ifndef RADAR_SLAM_PIPELINE_H_
#define RADAR_SLAM_PIPELINE_H_

#include <cstdint>
#include <deque>
#include <filesystem>
#include <future>
#include <memory>
#include <optional>
#include <vector>

#include "radar_slam/config.h"
#include "radar_slam/evaluation.h"
#include "radar_slam/feature_map.h"
#include "radar_slam/kdtree.h"
#include "radar_slam/loop_closure.h"
#include "radar_slam/motion_model.h"
#include "radar_slam/pose_graph.h"
#include "radar_slam/scan.h"

namespace radar_slam {

// One row of the per-scan log. `fallback` marks scans whose registration
// failed and whose pose is the constant-velocity prediction.
struct ScanRecord {
  std::int64_t scan_index = 0;
  std::size_t raw_features = 0;
  std::size_t surface_features = 0;
  std::size_t map_size = 0;
  std::size_t evicted = 0;
  int iterations = 0;
  bool converged = false;
  bool fallback = false;
  double final_cost = 0.0;
  int inliers = 0;
  Pose2 pose;
};

// Wall-clock milliseconds per stage; not reproducible by nature.
struct TimingRecord {
  std::int64_t scan_index = 0;
  double detect_ms = 0.0;
  double geometry_ms = 0.0;
  double register_ms = 0.0;
  double map_ms = 0.0;
  double total_ms = 0.0;
};

// Sequential tracking front end plus loop-closure back end.
//
// The first scan is mapped before any velocity is known. Once the second
// scan has been registered, the first scan is re-compensated with the
// resulting velocity, the map restarted from it and the second scan
// registered again.
//
// Prediction uses the twist of the latest step. Motion compensation uses the
// mean twist of the last pipeline.velocity_window steps.
//
// The back-end job for scan k works on immutable snapshots (key scans, a
// copy of the pose graph). Its result is adopted at the end of scan
// k + loop.adoption_delay, never in between, and no new job starts while one
// is pending. With `single_thread` the job runs inline at its adoption
// point; otherwise it runs on a worker thread. Both schedules adopt the same
// results at the same scans, so their outputs are identical.
class Pipeline {
 public:
  explicit Pipeline(PipelineConfig config, bool single_thread = true);
  ~Pipeline();

  Pipeline(const Pipeline&) = delete;
  Pipeline& operator=(const Pipeline&) = delete;

  // Requires scan.scan_index == scans_processed(). Returns the tracking
  // pose of the scan start.
  Pose2 ProcessScan(const PolarScan& scan);

  // Adopts any pending back-end result. Call once after the last scan.
  void Finish();

  std::int64_t scans_processed() const { return next_index_; }
  const PipelineConfig& config() const { return config_; }
  const Pose2& pose() const { return pose_; }
  const VelocityEstimate& velocity() const { return velocity_; }
  VelocityEstimate compensation_velocity() const;

  // Dead-reckoned chain of the odometry edges.
  const Trajectory& odometry() const { return odometry_; }
  // Current pose-graph nodes, including every adopted correction.
  Trajectory corrected() const;
  const PoseGraph& graph() const { return graph_; }

  // The active local map: the feature map in scan_to_map mode, otherwise
  // the union of the retained frames as cold-start points.
  FeatureMap LocalMap() const;
  const FeatureMap& feature_map() const { return map_; }

  const std::vector<ScanRecord>& scan_log() const { return scan_log_; }
  const std::vector<TimingRecord>& timing_log() const { return timing_log_; }
  const std::vector<LoopEvent>& loop_events() const { return loop_events_; }

 private:
  struct BackEndResult {
    std::vector<LoopEvent> events;
    std::optional<PoseGraphEdge> edge;
    OptimizationResult optimization;
  };
  struct PendingJob {
    std::int64_t launch_scan = 0;
    std::future<BackEndResult> result;
  };

  void LaunchBackEnd(std::shared_ptr<const KeyScan> query);
  void Adopt(PendingJob* job);
  void RebuildFrameIndex();
  void RestartMap();

  PipelineConfig config_;
  bool single_thread_;
  FeatureCloud first_surface_;
  double first_surface_start_ = 0.0;
  std::int64_t next_index_ = 0;
  double previous_start_time_ = 0.0;
  Pose2 pose_;
  VelocityEstimate velocity_;
  std::deque<VelocityEstimate> recent_velocities_;
  FeatureMap map_;
  std::deque<FeatureCloud> frames_;
  KdTree2 frame_index_;
  PoseGraph graph_;
  Trajectory odometry_;
  KeyScanStore key_scans_;
  std::optional<PendingJob> pending_;
  std::vector<ScanRecord> scan_log_;
  std::vector<TimingRecord> timing_log_;
  std::vector<LoopEvent> loop_events_;
};

struct RunOptions {
  bool single_thread = true;
};

struct RunSummary {
  std::size_t scans = 0;
  std::size_t loop_edges = 0;
  std::size_t fallbacks = 0;
  std::size_t map_size = 0;
};

// Processes every scan file of `input_dir` (or of `input_dir`/scans when the
// former holds none) in name order and writes to
// `output_dir`:
//   odometry.csv   dead-reckoned trajectory
//   corrected.csv  loop-corrected trajectory (loop enabled only)
//   map.csv        final local map
//   scan_log.csv   per-scan statistics
//   loops.csv      verified loop candidates (loop enabled only)
//   timing.csv     per-stage wall-clock times
//   config.ini     the effective configuration
// Throws std::runtime_error("no scans found ...") for an empty input,
// ScanFormatError for malformed scans and ConfigError for a bad config.
RunSummary RunPipeline(const PipelineConfig& config,
                       const std::filesystem::path& input_dir,
                       const std::filesystem::path& output_dir,
                       const RunOptions& options = {});

void WriteScanLogCsv(const std::vector<ScanRecord>& log,
                     const std::filesystem::path& path);
void WriteTimingCsv(const std::vector<TimingRecord>& log,
                    const std::filesystem::path& path);
void WriteLoopEventsCsv(const std::vector<LoopEvent>& events,
                        const std::filesystem::path& path);

}  // namespace radar_slam

#endif  // RADAR_SLAM_PIPELINE_H_
