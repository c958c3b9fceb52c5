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

#include "radar_slam/simulator.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

#include "csv_table.h"
#include "radar_slam/scan_io.h"

namespace radar_slam {
namespace {

constexpr std::uint64_t kGhostStream = 1;
constexpr std::uint64_t kSpeckleStream = 2;
constexpr std::uint64_t kSpeckleValueStream = 3;
constexpr std::uint64_t kSaturationStream = 4;
constexpr std::uint64_t kSaturationStartStream = 5;
constexpr std::uint64_t kSaturationLengthStream = 6;
constexpr std::uint64_t kRangeNoiseStream = 7;
constexpr std::uint64_t kRangeNoiseAngleStream = 8;
constexpr float kLabelFloor = 0.01f;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double Cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

class Canvas {
 public:
  Canvas(PolarScan* scan, std::vector<CellLabel>* labels)
      : scan_(scan), labels_(labels) {}

  void Deposit(int azimuth, int bin, float value, CellLabel label) {
    if (bin < 0 || bin >= scan_->bins) return;
    const std::size_t cell =
        static_cast<std::size_t>(azimuth) * scan_->bins + bin;
    value = std::clamp(value, 0.0f, 1.0f);
    if (value > scan_->power[cell]) {
      scan_->power[cell] = value;
      if (value >= kLabelFloor) (*labels_)[cell] = label;
    }
  }

  // Gaussian pulse whose peak sits at fractional bin `center`.
  void Pulse(int azimuth, double center, double amplitude, double sigma,
             CellLabel label) {
    const int reach = static_cast<int>(std::ceil(4.0 * sigma));
    const int mid = static_cast<int>(std::lround(center));
    for (int b = mid - reach; b <= mid + reach; ++b) {
      const double z = (b - center) / sigma;
      Deposit(azimuth, b, static_cast<float>(amplitude * std::exp(-0.5 * z * z)),
              label);
    }
  }

 private:
  PolarScan* scan_;
  std::vector<CellLabel>* labels_;
};

}  // namespace

double CounterUniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                      std::uint64_t c, std::uint64_t stream) {
  std::uint64_t h = SplitMix64(seed);
  h = SplitMix64(h ^ a);
  h = SplitMix64(h ^ b);
  h = SplitMix64(h ^ c);
  h = SplitMix64(h ^ stream);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

void World::Validate() const {
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const Segment& s = segments[i];
    if (!s.a.allFinite() || !s.b.allFinite() || s.a == s.b) {
      throw std::invalid_argument("world: degenerate segment " +
                                  std::to_string(i));
    }
    if (!(s.reflectivity > 0.0 && s.reflectivity <= 1.0)) {
      throw std::invalid_argument("world: reflectivity out of (0, 1] at " +
                                  std::to_string(i));
    }
  }
}

World::Hit World::CastRay(const Eigen::Vector2d& origin, double angle) const {
  const Eigen::Vector2d d(std::cos(angle), std::sin(angle));
  Hit best;
  for (const Segment& s : segments) {
    const Eigen::Vector2d e = s.b - s.a;
    const double denom = Cross(d, e);
    if (std::abs(denom) < 1e-12) continue;
    const Eigen::Vector2d w = s.a - origin;
    const double t = Cross(w, e) / denom;
    const double u = Cross(w, d) / denom;
    if (t > 1e-9 && u >= 0.0 && u <= 1.0 && t < best.range) {
      best.range = t;
      best.reflectivity = s.reflectivity;
    }
  }
  return best;
}

World ReadWorldCsv(const std::filesystem::path& path) {
  World world;
  for (const auto& r : internal::ReadNumericCsv(path, 5, "world")) {
    world.segments.push_back(
        Segment{Eigen::Vector2d(r[0], r[1]), Eigen::Vector2d(r[2], r[3]), r[4]});
  }
  world.Validate();
  return world;
}

void WriteWorldCsv(const World& world, const std::filesystem::path& path) {
  std::string text = "x1,y1,x2,y2,reflectivity\n";
  for (const Segment& s : world.segments) {
    for (const double v : {s.a.x(), s.a.y(), s.b.x(), s.b.y()}) {
      text += internal::FormatDouble(v) + ",";
    }
    text += internal::FormatDouble(s.reflectivity) + "\n";
  }
  internal::WriteTextFile(path, text);
}

TrajectoryScript::TrajectoryScript(std::vector<Waypoint> waypoints)
    : waypoints_(std::move(waypoints)) {
  if (waypoints_.empty()) {
    throw std::invalid_argument("trajectory script: no waypoints");
  }
  for (std::size_t i = 1; i < waypoints_.size(); ++i) {
    if (!(waypoints_[i].time > waypoints_[i - 1].time)) {
      throw std::invalid_argument(
          "trajectory script: times must be strictly increasing");
    }
  }
}

Pose2 TrajectoryScript::PoseAt(double time) const {
  if (time <= waypoints_.front().time) return waypoints_.front().pose;
  if (time >= waypoints_.back().time) return waypoints_.back().pose;
  const auto upper = std::upper_bound(
      waypoints_.begin(), waypoints_.end(), time,
      [](double t, const Waypoint& w) { return t < w.time; });
  const Waypoint& w1 = *upper;
  const Waypoint& w0 = *(upper - 1);
  const double s = (time - w0.time) / (w1.time - w0.time);
  const double dyaw = NormalizeAngle(w1.pose.yaw() - w0.pose.yaw());
  return Pose2(w0.pose.x() + s * (w1.pose.x() - w0.pose.x()),
               w0.pose.y() + s * (w1.pose.y() - w0.pose.y()),
               w0.pose.yaw() + s * dyaw);
}

TrajectoryScript ReadScriptCsv(const std::filesystem::path& path) {
  std::vector<Waypoint> waypoints;
  for (const auto& r : internal::ReadNumericCsv(path, 4, "script")) {
    waypoints.push_back(Waypoint{r[0], Pose2(r[1], r[2], r[3])});
  }
  return TrajectoryScript(std::move(waypoints));
}

void WriteScriptCsv(const TrajectoryScript& script,
                    const std::filesystem::path& path) {
  std::string text = "time,x,y,yaw\n";
  for (const Waypoint& w : script.waypoints()) {
    text += internal::FormatDouble(w.time) + "," +
            internal::FormatDouble(w.pose.x()) + "," +
            internal::FormatDouble(w.pose.y()) + "," +
            internal::FormatDouble(w.pose.yaw()) + "\n";
  }
  internal::WriteTextFile(path, text);
}

void ArtifactConfig::Validate() const {
  auto probability = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument(std::string("artifacts: ") + name +
                                  " must lie in [0, 1]");
    }
  };
  probability(speckle_prob, "speckle_prob");
  probability(ghost_prob, "ghost_prob");
  probability(saturation_prob, "saturation_prob");
  if (!(range_noise_std >= 0.0)) {
    throw std::invalid_argument("artifacts: range_noise_std must be >= 0");
  }
  if (!(speckle_intensity_min >= 0.0 &&
        speckle_intensity_min <= speckle_intensity_max &&
        speckle_intensity_max <= 1.0)) {
    throw std::invalid_argument("artifacts: bad speckle intensity range");
  }
  if (speckle_extent_bins < 1 || ghost_span_azimuths < 1 ||
      saturation_min_bins < 1 || saturation_max_bins < saturation_min_bins) {
    throw std::invalid_argument("artifacts: bad extent");
  }
}

RenderedScan RenderScan(const World& world, const PoseFunction& pose_at,
                        std::int64_t scan_index, double t_start,
                        const ScanParams& params,
                        const ArtifactConfig& artifacts) {
  RenderedScan out;
  out.scan = MakeEmptyScan(scan_index, params.azimuths, params.bins,
                           params.range_resolution, t_start,
                           params.rotation_period);
  out.labels.assign(out.scan.power.size(), CellLabel::kEmpty);
  Canvas canvas(&out.scan, &out.labels);
  const auto seed = artifacts.noise_seed;
  const auto scan_key = static_cast<std::uint64_t>(scan_index);
  const double max_range = params.bins * params.range_resolution;

  for (int a = 0; a < params.azimuths; ++a) {
    const Pose2 pose = pose_at(out.scan.azimuth_timestamps[a]);
    const World::Hit hit = world.CastRay(
        pose.translation(), pose.yaw() + out.scan.azimuth_angles[a]);
    double range = hit.range;
    if (artifacts.range_noise_std > 0.0 && std::isfinite(range)) {
      const double u1 =
          CounterUniform(seed, scan_key, a, 0, kRangeNoiseStream);
      const double u2 =
          CounterUniform(seed, scan_key, a, 0, kRangeNoiseAngleStream);
      range += artifacts.range_noise_std * std::sqrt(-2.0 * std::log1p(-u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }
    if (range > 0.0 && range < max_range) {
      canvas.Pulse(a, range / params.range_resolution - 0.5,
                   hit.reflectivity, params.pulse_sigma_bins,
                   CellLabel::kReturn);
      const auto block =
          static_cast<std::uint64_t>(a / artifacts.ghost_span_azimuths);
      if (artifacts.ghost_prob > 0.0 &&
          CounterUniform(seed, scan_key, block, 0, kGhostStream) <
              artifacts.ghost_prob &&
          2.0 * range < max_range) {
        canvas.Pulse(a, 2.0 * range / params.range_resolution - 0.5,
                     0.5 * hit.reflectivity, params.pulse_sigma_bins,
                     CellLabel::kGhost);
      }
    }
    if (artifacts.speckle_prob > 0.0) {
      for (int b = 0; b < params.bins; ++b) {
        if (CounterUniform(seed, scan_key, a, b, kSpeckleStream) >=
            artifacts.speckle_prob) {
          continue;
        }
        const double u =
            CounterUniform(seed, scan_key, a, b, kSpeckleValueStream);
        const auto value = static_cast<float>(
            artifacts.speckle_intensity_min +
            u * (artifacts.speckle_intensity_max -
                 artifacts.speckle_intensity_min));
        for (int e = 0; e < artifacts.speckle_extent_bins; ++e) {
          canvas.Deposit(a, b + e, value, CellLabel::kSpeckle);
        }
      }
    }
    if (artifacts.saturation_prob > 0.0 &&
        CounterUniform(seed, scan_key, a, 0, kSaturationStream) <
            artifacts.saturation_prob) {
      const int span =
          artifacts.saturation_max_bins - artifacts.saturation_min_bins + 1;
      const int length =
          artifacts.saturation_min_bins +
          std::min(span - 1,
                   static_cast<int>(CounterUniform(seed, scan_key, a, 0,
                                                   kSaturationLengthStream) *
                                    span));
      const int start = static_cast<int>(
          CounterUniform(seed, scan_key, a, 0, kSaturationStartStream) *
          std::max(1, params.bins - length));
      for (int b = start; b < start + length; ++b) {
        canvas.Deposit(a, b, 1.0f, CellLabel::kSaturation);
      }
    }
  }
  return out;
}

std::vector<Pose2> GroundTruthPoses(const TrajectoryScript& script,
                                    int num_scans, const ScanParams& params) {
  std::vector<Pose2> poses;
  poses.reserve(num_scans);
  for (int k = 0; k < num_scans; ++k) {
    poses.push_back(
        script.PoseAt(script.start_time() + k * params.rotation_period));
  }
  return poses;
}

SequenceFiles GenerateSequence(const World& world,
                               const TrajectoryScript& script, int num_scans,
                               const ScanParams& params,
                               const ArtifactConfig& artifacts,
                               const std::filesystem::path& out_dir) {
  if (num_scans <= 0) {
    throw std::invalid_argument("simulate: number of scans must be positive");
  }
  world.Validate();
  artifacts.Validate();
  const double t0 = script.start_time();
  const double needed = t0 + num_scans * params.rotation_period;
  if (script.end_time() + 1e-9 < needed -
                                     params.rotation_period / params.azimuths) {
    throw std::invalid_argument(
        "simulate: trajectory script ends before the last scan");
  }
  const auto scan_dir = out_dir / "scans";
  std::filesystem::create_directories(scan_dir);
  SequenceFiles files;
  const PoseFunction pose_at = [&script](double t) { return script.PoseAt(t); };
  std::string gt = "scan_index,x,y,yaw\n";
  char name[32];
  for (int k = 0; k < num_scans; ++k) {
    const double t_start = t0 + k * params.rotation_period;
    const RenderedScan rendered =
        RenderScan(world, pose_at, k, t_start, params, artifacts);
    std::snprintf(name, sizeof(name), "scan_%06d.rscan", k);
    files.scans.push_back(scan_dir / name);
    WriteScanBinary(rendered.scan, files.scans.back());
    const Pose2 p = script.PoseAt(t_start);
    gt += std::to_string(k) + "," + internal::FormatDouble(p.x()) + "," +
          internal::FormatDouble(p.y()) + "," +
          internal::FormatDouble(p.yaw()) + "\n";
  }
  files.ground_truth = out_dir / "ground_truth.csv";
  internal::WriteTextFile(files.ground_truth, gt);
  return files;
}

}  // namespace radar_slam
