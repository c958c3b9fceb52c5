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

#ifndef RADAR_SLAM_TESTS_SUPPORT_TEST_UTIL_H_
#define RADAR_SLAM_TESTS_SUPPORT_TEST_UTIL_H_

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "Eigen/Core"
#include "radar_slam/scan.h"

namespace radar_slam {
namespace testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("radar_slam_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ignored;
    std::filesystem::remove_all(path_, ignored);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

inline std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void WriteFile(const std::filesystem::path& path,
                      const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline FeatureCloud MakeCloud(const std::vector<Eigen::Vector2d>& xy,
                              Frame frame = Frame::kSensor,
                              std::int64_t scan_index = 0) {
  FeatureCloud cloud;
  cloud.scan_index = scan_index;
  cloud.frame = frame;
  for (const auto& p : xy) cloud.points.push_back({p.x(), p.y(), 0.0, 1.0});
  return cloud;
}

inline std::vector<Eigen::Vector2d> Positions(const FeatureCloud& cloud) {
  std::vector<Eigen::Vector2d> out;
  for (const auto& p : cloud.points) out.push_back(p.xy());
  return out;
}

// Points every `spacing` meters along the segment [a, b], both ends included.
inline std::vector<Eigen::Vector2d> SampleSegment(const Eigen::Vector2d& a,
                                                  const Eigen::Vector2d& b,
                                                  double spacing) {
  const int n = static_cast<int>((b - a).norm() / spacing + 0.5);
  std::vector<Eigen::Vector2d> out;
  for (int i = 0; i <= n; ++i) out.push_back(a + (b - a) * (double(i) / n));
  return out;
}

}  // namespace testing
}  // namespace radar_slam

#endif  // RADAR_SLAM_TESTS_SUPPORT_TEST_UTIL_H_
