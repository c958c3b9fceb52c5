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

#ifndef RADAR_SLAM_FEATURE_MAP_H_
#define RADAR_SLAM_FEATURE_MAP_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include "radar_slam/kdtree.h"
#include "radar_slam/pose2.h"
#include "radar_slam/scan.h"

namespace radar_slam {

// A world-frame map feature and its hit statistics.
//
//   rounds (R)       matching rounds, R = birth_rounds + rounds_since_birth;
//                    R(k0) = 1 on cold start
//   hits (H)         H = birth_hits + hits_since_birth; real-valued because
//                    births average the statistics of their matched neighbors
//   probability (P)  H / R
//
// The counters advance by integers, so R and H always equal their
// from-scratch sums exactly.
struct MapPoint {
  Point2 position;
  std::int64_t birth_scan = 0;
  double birth_rounds = 1.0;
  double birth_hits = 1.0;
  std::int64_t rounds_since_birth = 0;
  std::int64_t hits_since_birth = 0;
  double rounds = 1.0;
  double hits = 1.0;
  double probability = 1.0;
  bool permanent = false;
};

struct FilterConfig {
  double theta_p = 0.25;
  double r_min = 10.0;
  double h_max = 10.0;
  // Credit a map point once per source point that matches it, instead of at
  // most once per scan.
  bool count_repeated_hits = false;
  // A birth whose averaged H exceeds this has its (R, H) scaled down to it,
  // keeping P. Infinity keeps the plain average.
  double max_inherited_hits = 1.0;

  void Validate() const;
};

// How a scan's features are associated with the map when counting hits.
struct HitConfig {
  int correspondence_k = 5;
  double max_correspondence_dist = 3.0;
};

// Initial statistics for one source point of the scan being recorded.
struct BirthStatistics {
  double rounds = 1.0;
  double hits = 1.0;
  int matched_neighbors = 0;
};

// Eviction predicate of the probability filter, with the strict inequalities
// P < theta_p, R > R_min, H < H_max.
bool ShouldEvict(double probability, double rounds, double hits,
                 const FilterConfig& config);

class FeatureMap {
 public:
  FeatureMap() = default;

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<MapPoint>& points() const { return points_; }
  // Spatial index over positions; index i refers to points()[i].
  const KdTree2& index() const { return index_; }

  // Exact k nearest map points; ties resolve to the older insertion.
  std::vector<MapPoint> Knn(const Eigen::Vector2d& query, std::size_t k) const;

  // First half of a map update. For every point of `world_cloud` (the scan's
  // surface features already moved by the registered pose) finds its up to
  // k nearest map points within the correspondence radius and credits them
  // with a hit. Returns, per source point, the statistics it will be born
  // with: the average (R, H) of its neighbors as they stand after this
  // scan's round, or (1, 1) when fewer than k neighbors were found.
  std::vector<BirthStatistics> RecordHits(const FeatureCloud& world_cloud,
                                          const HitConfig& hit_config,
                                          const FilterConfig& filter_config);

  // Second half: advances every pre-existing point by one round, inserts the
  // scan's points with their birth statistics, recomputes P and applies the
  // eviction rule when `evict` is set. Rebuilds the spatial index.
  void Update(const FeatureCloud& world_cloud,
              const std::vector<BirthStatistics>& births,
              const FilterConfig& config, bool evict = true);

  // Inserts points as cold-start births without touching other points'
  // statistics.
  void Insert(const FeatureCloud& world_cloud);

  // Moves every point by correction(birth_scan) and rebuilds the index.
  void ApplyCorrection(const std::function<Pose2(std::int64_t)>& correction);

  // CSV with header "x,y,R,H,P,birth_scan".
  void WriteCsv(const std::filesystem::path& path) const;

  std::size_t evicted_last_update() const { return evicted_last_update_; }

 private:
  void RebuildIndex();

  std::vector<MapPoint> points_;
  KdTree2 index_;
  std::size_t evicted_last_update_ = 0;
};

}  // namespace radar_slam

#endif  // RADAR_SLAM_FEATURE_MAP_H_
