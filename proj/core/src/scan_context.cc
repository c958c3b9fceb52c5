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

#include "radar_slam/scan_context.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "radar_slam/pose2.h"

namespace radar_slam {

double DescriptorConfig::sector_width() const {
  return 2.0 * std::numbers::pi / num_sectors;
}

void DescriptorConfig::Validate() const {
  if (num_rings < 1 || num_sectors < 1 || !(max_range > 0.0)) {
    throw std::invalid_argument("loop descriptor dimensions must be positive");
  }
}

ScanDescriptor Describe(const FeatureCloud& cloud,
                        const DescriptorConfig& config) {
  config.Validate();
  ScanDescriptor d;
  d.scan_index = cloud.scan_index;
  d.max_range = config.max_range;
  d.cells = Eigen::MatrixXd::Zero(config.num_rings, config.num_sectors);
  const double ring_width = config.max_range / config.num_rings;
  const double sector_width = config.sector_width();
  for (const Point2& p : cloud.points) {
    const double range = std::hypot(p.x, p.y);
    if (!(range < config.max_range)) continue;
    double angle = std::atan2(p.y, p.x);
    if (angle < 0.0) angle += 2.0 * std::numbers::pi;
    const int ring =
        std::min(static_cast<int>(range / ring_width), config.num_rings - 1);
    const int sector = static_cast<int>(angle / sector_width) % config.num_sectors;
    const double value = std::clamp(p.intensity, 0.0, 1.0);
    d.cells(ring, sector) = std::max(d.cells(ring, sector), value);
  }
  return d;
}

DescriptorDistance CompareDescriptors(const ScanDescriptor& query,
                                      const ScanDescriptor& candidate) {
  const Eigen::MatrixXd& q = query.cells;
  const Eigen::MatrixXd& c = candidate.cells;
  if (q.rows() != c.rows() || q.cols() != c.cols()) {
    throw std::invalid_argument("descriptor dimensions differ");
  }
  const int sectors = static_cast<int>(q.cols());
  const Eigen::VectorXd q_norms = q.colwise().norm().transpose();
  const Eigen::VectorXd c_norms = c.colwise().norm().transpose();

  DescriptorDistance best;
  best.distance = std::numeric_limits<double>::infinity();
  for (int shift = 0; shift < sectors; ++shift) {
    double sum = 0.0;
    int counted = 0;
    for (int j = 0; j < sectors; ++j) {
      const int cj = (j + shift) % sectors;
      const double nq = q_norms[j];
      const double nc = c_norms[cj];
      if (nq == 0.0 && nc == 0.0) continue;
      ++counted;
      if (nq == 0.0 || nc == 0.0) {
        sum += 1.0;
        continue;
      }
      const double cosine = q.col(j).dot(c.col(cj)) / (nq * nc);
      sum += 1.0 - std::clamp(cosine, -1.0, 1.0);
    }
    const double distance = counted == 0 ? 1.0 : sum / counted;
    if (distance < best.distance) {
      best.distance = distance;
      best.shift = shift;
    }
  }
  return best;
}

std::vector<LoopCandidate> MatchDescriptor(
    const ScanDescriptor& query, const std::vector<ScanDescriptor>& database,
    const MatchConfig& match_config,
    const DescriptorConfig& descriptor_config) {
  std::vector<LoopCandidate> candidates;
  for (const ScanDescriptor& entry : database) {
    if (entry.scan_index >= query.scan_index - match_config.min_separation) {
      continue;
    }
    const DescriptorDistance d = CompareDescriptors(query, entry);
    if (!(d.distance < match_config.distance_threshold)) continue;
    candidates.push_back(
        {query.scan_index, entry.scan_index, d.distance,
         NormalizeAngle(d.shift * descriptor_config.sector_width())});
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const LoopCandidate& a, const LoopCandidate& b) {
                     if (a.descriptor_distance != b.descriptor_distance) {
                       return a.descriptor_distance < b.descriptor_distance;
                     }
                     return a.match_scan < b.match_scan;
                   });
  if (candidates.size() > static_cast<std::size_t>(match_config.max_candidates)) {
    candidates.resize(match_config.max_candidates);
  }
  return candidates;
}

}  // namespace radar_slam
