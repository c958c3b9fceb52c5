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

#include "radar_slam/pipeline.h"

#include <chrono>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "csv_table.h"
#include "radar_slam/feature_detector.h"
#include "radar_slam/geometry_filter.h"
#include "radar_slam/registration.h"
#include "radar_slam/scan_context.h"
#include "radar_slam/scan_io.h"

namespace radar_slam {
namespace {

using Clock = std::chrono::steady_clock;

double MillisecondsSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

std::string Num(double v) { return internal::FormatDouble(v); }

}  // namespace

Pipeline::Pipeline(PipelineConfig config, bool single_thread)
    : config_(std::move(config)),
      single_thread_(single_thread),
      key_scans_(static_cast<std::size_t>(
          std::max(1, config_.loop.max_stored_scans))) {
  config_.Validate();
}

Pipeline::~Pipeline() {
  if (pending_ && pending_->result.valid()) pending_->result.wait();
}

Pose2 Pipeline::ProcessScan(const PolarScan& scan) {
  const auto t_total = Clock::now();
  ValidateScan(scan);
  if (scan.scan_index != next_index_) {
    throw ScanFormatError("scan_index",
                          "expected " + std::to_string(next_index_) +
                              ", got " + std::to_string(scan.scan_index));
  }
  TimingRecord timing;
  timing.scan_index = scan.scan_index;
  ScanRecord record;
  record.scan_index = scan.scan_index;

  auto t = Clock::now();
  const FeatureCloud raw = DetectFeatures(scan, config_.detector);
  timing.detect_ms = MillisecondsSince(t);
  record.raw_features = raw.size();

  t = Clock::now();
  const FeatureCloud surface = config_.geometry_filter_enabled
                                   ? FilterSurface(raw, config_.geometry)
                                   : raw;
  timing.geometry_ms = MillisecondsSince(t);
  record.surface_features = surface.size();

  FeatureCloud compensated =
      CompensateMotion(surface, compensation_velocity(), scan.start_time());

  t = Clock::now();
  const bool first = next_index_ == 0;
  double dt = 0.0;
  Pose2 pose;
  if (!first) {
    dt = scan.start_time() - previous_start_time_;
    if (!(dt > 0.0)) {
      throw ScanFormatError("azimuth_timestamps",
                            "scan does not start after the previous scan");
    }
    const Pose2 predicted = pose_ * velocity_.Displacement(dt);
    const KdTree2& target = config_.matching == MatchingMode::kScanToMap
                                ? map_.index()
                                : frame_index_;
    RegistrationResult reg =
        Register(compensated, target, predicted, config_.icp);
    if (next_index_ == 1 && reg.converged) {
      // Scan 0 entered the map without a velocity; redo the first pair now
      // that one is known.
      velocity_ = EstimateVelocity(pose_, reg.pose, dt);
      recent_velocities_.assign(1, velocity_);
      RestartMap();
      compensated = CompensateMotion(surface, velocity_, scan.start_time());
      const KdTree2& restarted = config_.matching == MatchingMode::kScanToMap
                                     ? map_.index()
                                     : frame_index_;
      reg = Register(compensated, restarted, reg.pose, config_.icp);
    }
    record.iterations = reg.iterations;
    record.converged = reg.converged;
    record.final_cost = reg.final_cost;
    record.inliers = reg.inlier_count;
    record.fallback = !reg.converged;
    pose = reg.converged ? reg.pose : predicted;
  }
  timing.register_ms = MillisecondsSince(t);

  t = Clock::now();
  const FeatureCloud world = TransformCloud(compensated, pose, Frame::kWorld);
  if (config_.matching == MatchingMode::kScanToMap) {
    const auto births =
        map_.RecordHits(world, config_.icp.hit_config(), config_.pfilter);
    map_.Update(world, births, config_.pfilter,
                config_.probability_filter_enabled);
    record.evicted = map_.evicted_last_update();
    record.map_size = map_.size();
  } else {
    frames_.push_back(world);
    while (frames_.size() > static_cast<std::size_t>(config_.frames)) {
      frames_.pop_front();
    }
    RebuildFrameIndex();
    record.map_size = frame_index_.size();
  }
  timing.map_ms = MillisecondsSince(t);

  if (first) {
    first_surface_ = surface;
    first_surface_start_ = scan.start_time();
    graph_.AddNode(pose);
    odometry_.push_back({scan.scan_index, pose});
  } else {
    velocity_ = EstimateVelocity(pose_, pose, dt);
    recent_velocities_.push_back(velocity_);
    while (recent_velocities_.size() >
           static_cast<std::size_t>(config_.velocity_window)) {
      recent_velocities_.pop_front();
    }
    const Pose2 step = Between(pose_, pose);
    const int node = graph_.AddNode(pose);
    PoseGraphEdge edge;
    edge.from = node - 1;
    edge.to = node;
    edge.measurement = step;
    edge.information = InformationFromSigmas(config_.loop.odometry_sigma_xy,
                                             config_.loop.odometry_sigma_yaw);
    edge.kind = PoseGraphEdge::Kind::kOdometry;
    graph_.AddEdge(edge);
    odometry_.push_back({scan.scan_index, odometry_.back().pose * step});
  }
  pose_ = pose;
  previous_start_time_ = scan.start_time();
  ++next_index_;

  if (config_.loop_enabled) {
    auto key = std::make_shared<KeyScan>();
    key->scan_index = scan.scan_index;
    key->cloud = compensated;
    key->descriptor = Describe(compensated, config_.loop.descriptor);
    key_scans_.Add(key);
    if (pending_ && pending_->launch_scan + config_.loop.adoption_delay <=
                        scan.scan_index) {
      Adopt(&*pending_);
      pending_.reset();
    }
    if (!pending_) LaunchBackEnd(std::move(key));
  }

  record.pose = pose_;
  scan_log_.push_back(record);
  timing.total_ms = MillisecondsSince(t_total);
  timing_log_.push_back(timing);
  return pose_;
}

VelocityEstimate Pipeline::compensation_velocity() const {
  VelocityEstimate mean;
  if (recent_velocities_.empty()) return mean;
  for (const VelocityEstimate& v : recent_velocities_) {
    mean.v_x += v.v_x;
    mean.v_y += v.v_y;
    mean.omega += v.omega;
  }
  const auto n = static_cast<double>(recent_velocities_.size());
  mean.v_x /= n;
  mean.v_y /= n;
  mean.omega /= n;
  return mean;
}

void Pipeline::LaunchBackEnd(std::shared_ptr<const KeyScan> query) {
  auto job = [query = std::move(query), scans = key_scans_.Snapshot(),
              graph = graph_, loop = config_.loop,
              options = config_.optimizer]() mutable {
    BackEndResult result;
    if (DetectAndClose(*query, scans, loop, &graph, &result.events)) {
      result.edge = graph.edges.back();
      result.optimization = OptimizePoseGraph(graph, options);
    }
    return result;
  };
  pending_.emplace();
  pending_->launch_scan = next_index_ - 1;
  pending_->result = std::async(
      single_thread_ ? std::launch::deferred : std::launch::async,
      std::move(job));
}

void Pipeline::Adopt(PendingJob* job) {
  BackEndResult result = job->result.get();
  loop_events_.insert(loop_events_.end(), result.events.begin(),
                      result.events.end());
  if (!result.edge) return;
  graph_.AddEdge(*result.edge);
  if (!result.optimization.success) return;

  const std::vector<Pose2>& optimized = result.optimization.poses;
  const std::vector<Pose2> old = graph_.nodes;
  const std::size_t last = optimized.size() - 1;
  std::vector<Pose2> updated(old.size());
  std::vector<Pose2> correction(old.size());
  for (std::size_t i = 0; i < old.size(); ++i) {
    updated[i] = i <= last ? optimized[i]
                           : optimized[last] * Between(old[last], old[i]);
    correction[i] = updated[i] * old[i].inverse();
  }
  const auto correct = [&correction](std::int64_t scan) {
    return correction[static_cast<std::size_t>(scan)];
  };
  map_.ApplyCorrection(correct);
  for (FeatureCloud& frame : frames_) {
    frame = TransformCloud(frame, correct(frame.scan_index), Frame::kWorld);
  }
  if (!frames_.empty()) RebuildFrameIndex();
  graph_.nodes = std::move(updated);
  pose_ = graph_.nodes.back();
}

void Pipeline::Finish() {
  if (pending_) {
    Adopt(&*pending_);
    pending_.reset();
  }
}

void Pipeline::RestartMap() {
  const FeatureCloud world = TransformCloud(
      CompensateMotion(first_surface_, velocity_, first_surface_start_),
      Pose2::Identity(), Frame::kWorld);
  map_ = FeatureMap();
  frames_.clear();
  if (config_.matching == MatchingMode::kScanToMap) {
    const auto births =
        map_.RecordHits(world, config_.icp.hit_config(), config_.pfilter);
    map_.Update(world, births, config_.pfilter,
                config_.probability_filter_enabled);
  } else {
    frames_.push_back(world);
    RebuildFrameIndex();
  }
  if (config_.loop_enabled) {
    auto key = std::make_shared<KeyScan>(*key_scans_.Find(0));
    key->cloud = TransformCloud(world, Pose2::Identity(), Frame::kSensor);
    key->descriptor = Describe(key->cloud, config_.loop.descriptor);
    key_scans_ = KeyScanStore(static_cast<std::size_t>(
        std::max(1, config_.loop.max_stored_scans)));
    key_scans_.Add(std::move(key));
  }
}

void Pipeline::RebuildFrameIndex() {
  std::vector<Eigen::Vector2d> points;
  for (const FeatureCloud& frame : frames_) {
    for (const Point2& p : frame.points) points.push_back(p.xy());
  }
  frame_index_ = KdTree2(std::move(points));
}

Trajectory Pipeline::corrected() const {
  Trajectory out;
  out.reserve(graph_.nodes.size());
  for (std::size_t i = 0; i < graph_.nodes.size(); ++i) {
    out.push_back({static_cast<std::int64_t>(i), graph_.nodes[i]});
  }
  return out;
}

FeatureMap Pipeline::LocalMap() const {
  if (config_.matching == MatchingMode::kScanToMap) return map_;
  FeatureMap map;
  for (const FeatureCloud& frame : frames_) map.Insert(frame);
  return map;
}

void WriteScanLogCsv(const std::vector<ScanRecord>& log,
                     const std::filesystem::path& path) {
  std::string text =
      "scan_index,raw_features,surface_features,map_size,evicted,iterations,"
      "converged,fallback,final_cost,inliers,x,y,yaw\n";
  for (const ScanRecord& r : log) {
    text += std::to_string(r.scan_index) + "," +
            std::to_string(r.raw_features) + "," +
            std::to_string(r.surface_features) + "," +
            std::to_string(r.map_size) + "," + std::to_string(r.evicted) +
            "," + std::to_string(r.iterations) + "," +
            (r.converged ? "1" : "0") + "," + (r.fallback ? "1" : "0") + "," +
            Num(r.final_cost) + "," + std::to_string(r.inliers) + "," +
            Num(r.pose.x()) + "," + Num(r.pose.y()) + "," +
            Num(r.pose.yaw()) + "\n";
  }
  internal::WriteTextFile(path, text);
}

void WriteTimingCsv(const std::vector<TimingRecord>& log,
                    const std::filesystem::path& path) {
  std::string text =
      "scan_index,detect_ms,geometry_ms,register_ms,map_ms,total_ms\n";
  char line[160];
  for (const TimingRecord& r : log) {
    std::snprintf(line, sizeof(line), "%lld,%.3f,%.3f,%.3f,%.3f,%.3f\n",
                  static_cast<long long>(r.scan_index), r.detect_ms,
                  r.geometry_ms, r.register_ms, r.map_ms, r.total_ms);
    text += line;
  }
  internal::WriteTextFile(path, text);
}

void WriteLoopEventsCsv(const std::vector<LoopEvent>& events,
                        const std::filesystem::path& path) {
  std::string text =
      "query_scan,match_scan,descriptor_distance,yaw_hint,accepted,"
      "mean_cost,inliers,edge_x,edge_y,edge_yaw\n";
  for (const LoopEvent& e : events) {
    text += std::to_string(e.query_scan) + "," +
            std::to_string(e.match_scan) + "," + Num(e.descriptor_distance) +
            "," + Num(e.yaw_hint) + "," + (e.accepted ? "1" : "0") + "," +
            Num(e.mean_cost) + "," + std::to_string(e.inliers) + "," +
            Num(e.edge_pose.x()) + "," + Num(e.edge_pose.y()) + "," +
            Num(e.edge_pose.yaw()) + "\n";
  }
  internal::WriteTextFile(path, text);
}

RunSummary RunPipeline(const PipelineConfig& config,
                       const std::filesystem::path& input_dir,
                       const std::filesystem::path& output_dir,
                       const RunOptions& options) {
  config.Validate();
  if (!std::filesystem::is_directory(input_dir)) {
    throw std::runtime_error("cannot read input directory " +
                             input_dir.string());
  }
  auto files = ListScanFiles(input_dir);
  if (files.empty() && std::filesystem::is_directory(input_dir / "scans")) {
    files = ListScanFiles(input_dir / "scans");
  }
  if (files.empty()) {
    throw std::runtime_error("no scans found in " + input_dir.string());
  }
  std::filesystem::create_directories(output_dir);
  Pipeline pipeline(config, options.single_thread);
  for (const auto& file : files) {
    pipeline.ProcessScan(ReadScan(file));
  }
  pipeline.Finish();

  WriteTrajectoryCsv(pipeline.odometry(), output_dir / "odometry.csv");
  pipeline.LocalMap().WriteCsv(output_dir / "map.csv");
  WriteScanLogCsv(pipeline.scan_log(), output_dir / "scan_log.csv");
  WriteTimingCsv(pipeline.timing_log(), output_dir / "timing.csv");
  internal::WriteTextFile(output_dir / "config.ini", FormatConfig(config));
  if (config.loop_enabled) {
    WriteTrajectoryCsv(pipeline.corrected(), output_dir / "corrected.csv");
    WriteLoopEventsCsv(pipeline.loop_events(), output_dir / "loops.csv");
  }

  RunSummary summary;
  summary.scans = files.size();
  summary.loop_edges = pipeline.graph().loop_edge_count();
  summary.map_size = pipeline.LocalMap().size();
  for (const ScanRecord& r : pipeline.scan_log()) {
    if (r.fallback) ++summary.fallbacks;
  }
  return summary;
}

}  // namespace radar_slam
