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

#ifndef RADAR_SLAM_POSE2_H_
#define RADAR_SLAM_POSE2_H_

#include <cmath>
#include <numbers>
#include <ostream>

#include "Eigen/Core"

namespace radar_slam {

// Wraps an angle into (-pi, pi].
inline double NormalizeAngle(double angle) {
  constexpr double kPi = std::numbers::pi;
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(angle, kTwoPi);
  if (wrapped <= -kPi) {
    wrapped += kTwoPi;
  } else if (wrapped > kPi) {
    wrapped -= kTwoPi;
  }
  return wrapped;
}

// A 2-D feature point. Coordinates are meters in whichever frame the owning
// cloud declares; `t` is the acquisition time in seconds.
struct Point2 {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
  double intensity = 0.0;

  Eigen::Vector2d xy() const { return {x, y}; }
  friend bool operator==(const Point2&, const Point2&) = default;
};

// Rigid transform in SE(2). The yaw is kept in (-pi, pi] by every operation
// that produces a new pose.
class Pose2 {
 public:
  constexpr Pose2() = default;
  Pose2(double x, double y, double yaw) : x_(x), y_(y), yaw_(NormalizeAngle(yaw)) {}

  static Pose2 Identity() { return Pose2(); }

  double x() const { return x_; }
  double y() const { return y_; }
  double yaw() const { return yaw_; }
  Eigen::Vector2d translation() const { return {x_, y_}; }

  Eigen::Matrix2d rotation() const {
    const double c = std::cos(yaw_);
    const double s = std::sin(yaw_);
    Eigen::Matrix2d r;
    r << c, -s, s, c;
    return r;
  }

  Pose2 inverse() const {
    const double c = std::cos(yaw_);
    const double s = std::sin(yaw_);
    return Pose2(-c * x_ - s * y_, s * x_ - c * y_, -yaw_);
  }

  // this ∘ other: apply `other` first, then this.
  Pose2 operator*(const Pose2& other) const {
    const double c = std::cos(yaw_);
    const double s = std::sin(yaw_);
    return Pose2(x_ + c * other.x_ - s * other.y_,
                 y_ + s * other.x_ + c * other.y_, yaw_ + other.yaw_);
  }

  Eigen::Vector2d operator*(const Eigen::Vector2d& p) const {
    const double c = std::cos(yaw_);
    const double s = std::sin(yaw_);
    return {x_ + c * p.x() - s * p.y(), y_ + s * p.x() + c * p.y()};
  }

  friend bool operator==(const Pose2&, const Pose2&) = default;

 private:
  double x_ = 0.0;
  double y_ = 0.0;
  double yaw_ = 0.0;
};

inline Pose2 Compose(const Pose2& a, const Pose2& b) { return a * b; }

// Rotates then translates; time and intensity pass through unchanged.
inline Point2 TransformPoint(const Pose2& pose, const Point2& p) {
  const Eigen::Vector2d q = pose * p.xy();
  return Point2{q.x(), q.y(), p.t, p.intensity};
}

// inverse(a) ∘ b, the pose of b expressed in a's frame.
inline Pose2 Between(const Pose2& a, const Pose2& b) { return a.inverse() * b; }

inline std::ostream& operator<<(std::ostream& os, const Pose2& p) {
  return os << "Pose2(" << p.x() << ", " << p.y() << ", " << p.yaw() << ")";
}

}  // namespace radar_slam

#endif  // RADAR_SLAM_POSE2_H_
