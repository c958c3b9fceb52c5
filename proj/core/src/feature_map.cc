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

#include "radar_slam/feature_map.h"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace radar_slam {

void FilterConfig::Validate() const {
  if (!(theta_p > 0.0 && theta_p < 1.0)) {
    throw std::invalid_argument("pfilter.theta_p must be in (0, 1)");
  }
  if (!(r_min > 0.0)) throw std::invalid_argument("pfilter.r_min must be > 0");
  if (!(h_max > 0.0)) throw std::invalid_argument("pfilter.h_max must be > 0");
  if (!(max_inherited_hits >= 1.0)) {
    throw std::invalid_argument("pfilter.max_inherited_hits must be >= 1");
  }
}

bool ShouldEvict(double probability, double rounds, double hits,
                 const FilterConfig& config) {
  return probability < config.theta_p && rounds > config.r_min &&
         hits < config.h_max;
}

std::vector<MapPoint> FeatureMap::Knn(const Eigen::Vector2d& query,
                                      std::size_t k) const {
  std::vector<MapPoint> out;
  for (const Neighbor& nb : index_.Knn(query, k)) {
    out.push_back(points_[nb.index]);
  }
  return out;
}

std::vector<BirthStatistics> FeatureMap::RecordHits(
    const FeatureCloud& world_cloud, const HitConfig& hit_config,
    const FilterConfig& filter_config) {
  const auto k = static_cast<std::size_t>(hit_config.correspondence_k);
  std::vector<BirthStatistics> births(world_cloud.size());
  std::vector<bool> hit_this_scan(points_.size(), false);
  for (std::size_t i = 0; i < world_cloud.size(); ++i) {
    const auto neighbors = index_.Knn(world_cloud.points[i].xy(), k,
                                      hit_config.max_correspondence_dist);
    double sum_rounds = 0.0;
    double sum_hits = 0.0;
    for (const Neighbor& nb : neighbors) {
      MapPoint& mp = points_[nb.index];
      if (filter_config.count_repeated_hits || !hit_this_scan[nb.index]) {
        ++mp.hits_since_birth;
        mp.hits = mp.birth_hits + static_cast<double>(mp.hits_since_birth);
        hit_this_scan[nb.index] = true;
      }
      // The round increment for this scan is applied in Update(); births
      // average the values the neighbors will hold after it.
      sum_rounds +=
          mp.birth_rounds + static_cast<double>(mp.rounds_since_birth + 1);
      sum_hits += mp.hits;
    }
    BirthStatistics& birth = births[i];
    birth.matched_neighbors = static_cast<int>(neighbors.size());
    if (neighbors.size() < k || k == 0) continue;  // cold start (1, 1)
    const double n = static_cast<double>(neighbors.size());
    birth.rounds = sum_rounds / n;
    birth.hits = sum_hits / n;
    if (birth.hits > filter_config.max_inherited_hits) {
      birth.rounds =
          filter_config.max_inherited_hits * (birth.rounds / birth.hits);
      birth.hits = filter_config.max_inherited_hits;
    }
  }
  return births;
}

void FeatureMap::Update(const FeatureCloud& world_cloud,
                        const std::vector<BirthStatistics>& births,
                        const FilterConfig& config, bool evict) {
  if (births.size() != world_cloud.size()) {
    throw std::invalid_argument("FeatureMap::Update: births/cloud size mismatch");
  }
  for (MapPoint& mp : points_) {
    ++mp.rounds_since_birth;
    mp.rounds = mp.birth_rounds + static_cast<double>(mp.rounds_since_birth);
  }
  points_.reserve(points_.size() + world_cloud.size());
  for (std::size_t i = 0; i < world_cloud.size(); ++i) {
    MapPoint mp;
    mp.position = world_cloud.points[i];
    mp.birth_scan = world_cloud.scan_index;
    mp.birth_rounds = births[i].rounds;
    mp.birth_hits = births[i].hits;
    mp.rounds = mp.birth_rounds;
    mp.hits = mp.birth_hits;
    points_.push_back(mp);
  }
  std::size_t kept = 0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    MapPoint& mp = points_[i];
    mp.probability = mp.hits / mp.rounds;
    mp.permanent = mp.hits >= config.h_max;
    if (evict && ShouldEvict(mp.probability, mp.rounds, mp.hits, config)) {
      continue;
    }
    if (kept != i) points_[kept] = mp;
    ++kept;
  }
  evicted_last_update_ = points_.size() - kept;
  points_.resize(kept);
  RebuildIndex();
}

void FeatureMap::Insert(const FeatureCloud& world_cloud) {
  for (const Point2& p : world_cloud.points) {
    MapPoint mp;
    mp.position = p;
    mp.birth_scan = world_cloud.scan_index;
    points_.push_back(mp);
  }
  evicted_last_update_ = 0;
  RebuildIndex();
}

void FeatureMap::ApplyCorrection(
    const std::function<Pose2(std::int64_t)>& correction) {
  for (MapPoint& mp : points_) {
    mp.position = TransformPoint(correction(mp.birth_scan), mp.position);
  }
  RebuildIndex();
}

void FeatureMap::WriteCsv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "x,y,R,H,P,birth_scan\n";
  char line[192];
  for (const MapPoint& mp : points_) {
    std::snprintf(line, sizeof(line), "%.9g,%.9g,%.9g,%.9g,%.9g,%lld\n",
                  mp.position.x, mp.position.y, mp.rounds, mp.hits,
                  mp.probability, static_cast<long long>(mp.birth_scan));
    out << line;
  }
}

void FeatureMap::RebuildIndex() {
  std::vector<Eigen::Vector2d> xy;
  xy.reserve(points_.size());
  for (const MapPoint& mp : points_) xy.push_back(mp.position.xy());
  index_ = KdTree2(std::move(xy));
}

}  // namespace radar_slam
