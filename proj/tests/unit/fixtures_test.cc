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

#include "radar_slam/fixtures.h"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

namespace radar_slam {
namespace {

TEST(FixturesTest, NamesAndSizes) {
  const std::vector<std::string> names = FixtureNames();
  ASSERT_EQ(4u, names.size());
  EXPECT_EQ(101, MakeFixture("stationary").num_scans);
  EXPECT_EQ(60, MakeFixture("straight").num_scans);
  EXPECT_EQ(300, MakeFixture("square_loop").num_scans);
  EXPECT_EQ(400, MakeFixture("noisy_loop").num_scans);
  for (const std::string& name : names) {
    const Fixture f = MakeFixture(name);
    EXPECT_EQ(name, f.name);
    EXPECT_NO_THROW(f.artifacts.Validate());
    EXPECT_FALSE(f.world.segments.empty());
    const double last_scan_end =
        f.num_scans * f.params.rotation_period + f.script.start_time();
    EXPECT_GE(f.script.end_time(), last_scan_end) << name;
  }
  EXPECT_THROW(MakeFixture("nope"), std::invalid_argument);
}

TEST(FixturesTest, NoisyLoopArtifacts) {
  const Fixture f = MakeFixture("noisy_loop", 7);
  EXPECT_EQ(0.002, f.artifacts.speckle_prob);
  EXPECT_EQ(0.05, f.artifacts.ghost_prob);
  EXPECT_EQ(7u, f.artifacts.noise_seed);
  EXPECT_EQ(400, f.params.azimuths);
  EXPECT_EQ(1000, f.params.bins);
}

TEST(FixturesTest, StraightSpacing) {
  const Fixture f = MakeFixture("straight");
  const auto gt = GroundTruthPoses(f.script, f.num_scans, f.params);
  for (std::size_t i = 1; i < gt.size(); ++i) {
    EXPECT_NEAR(0.25, Between(gt[i - 1], gt[i]).translation().norm(), 1e-12);
    EXPECT_NEAR(0.0, gt[i].yaw(), 1e-15);
  }
}

TEST(FixturesTest, StationaryDoesNotMove) {
  const Fixture f = MakeFixture("stationary");
  const auto gt = GroundTruthPoses(f.script, f.num_scans, f.params);
  for (const Pose2& p : gt) EXPECT_EQ(gt.front(), p);
}

TEST(FixturesTest, SquareLoopRevisitsItsStart) {
  const Fixture f = MakeFixture("square_loop");
  const auto gt = GroundTruthPoses(f.script, f.num_scans, f.params);
  double closest = 1e9;
  for (std::size_t i = gt.size() / 2; i < gt.size(); ++i) {
    closest = std::min(closest, (gt[i].translation() - gt[0].translation()).norm());
  }
  EXPECT_LT(closest, 0.5);
}

TEST(MakeLoopScriptTest, ConstantSpeedAndSmoothHeading) {
  const std::vector<Eigen::Vector2d> corners = {
      {0.0, 0.0}, {20.0, 0.0}, {20.0, 10.0}, {0.0, 10.0}};
  const double speed = 1.5;
  const TrajectoryScript script =
      MakeLoopScript(corners, 3.0, 2.0, speed, 100.0);
  const auto& w = script.waypoints();
  ASSERT_GT(w.size(), 100u);
  EXPECT_EQ(Eigen::Vector2d(10.0, 0.0), w.front().pose.translation());
  double travelled = 0.0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    const double d = (w[i].pose.translation() - w[i - 1].pose.translation()).norm();
    const double dt = w[i].time - w[i - 1].time;
    ASSERT_GT(dt, 0.0);
    // Chords of a curved path are slightly shorter than the arc.
    EXPECT_LE(d / dt, speed + 1e-9);
    EXPECT_GT(d / dt, 0.99 * speed);
    EXPECT_LT(std::abs(NormalizeAngle(w[i].pose.yaw() - w[i - 1].pose.yaw())),
              0.2);
    travelled += d;
  }
  EXPECT_GE(travelled, 0.99 * 100.0);
  // The path stays inside the corner polygon's bounding box.
  for (const Waypoint& p : w) {
    EXPECT_GE(p.pose.x(), -1e-9);
    EXPECT_LE(p.pose.x(), 20.0 + 1e-9);
    EXPECT_GE(p.pose.y(), -1e-9);
    EXPECT_LE(p.pose.y(), 10.0 + 1e-9);
  }
}

TEST(MakeLoopScriptTest, RejectsBadArguments) {
  const std::vector<Eigen::Vector2d> two = {{0.0, 0.0}, {1.0, 0.0}};
  EXPECT_THROW(MakeLoopScript(two, 1.0, 0.0, 1.0, 10.0), std::invalid_argument);
  const std::vector<Eigen::Vector2d> square = {
      {0.0, 0.0}, {10.0, 0.0}, {10.0, 10.0}, {0.0, 10.0}};
  EXPECT_THROW(MakeLoopScript(square, 1.0, 0.0, 0.0, 10.0),
               std::invalid_argument);
}

}  // namespace
}  // namespace radar_slam
