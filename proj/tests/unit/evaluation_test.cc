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

#include "radar_slam/evaluation.h"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "support/metric_oracles.h"
#include "support/test_util.h"

namespace radar_slam {
namespace {

using testing::BruteForceAte;
using testing::StraightPath;
using testing::TempDir;

constexpr double kPi = std::numbers::pi;

std::vector<Pose2> Transformed(const Pose2& t, const std::vector<Pose2>& poses) {
  std::vector<Pose2> out;
  for (const Pose2& p : poses) out.push_back(t * p);
  return out;
}

// A wiggly path of about 600 m with turns. The step is not a divisor of the
// segment lengths, so no segment end sits exactly on a pose.
std::vector<Pose2> CurvyPath() {
  std::vector<Pose2> poses;
  Pose2 pose;
  for (int i = 0; i < 2400; ++i) {
    poses.push_back(pose);
    pose = pose * Pose2(0.2537, 0.0, 0.01 * std::sin(0.01 * i));
  }
  return poses;
}

std::vector<Pose2> Noisy(const std::vector<Pose2>& poses, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Pose2> out;
  Pose2 drift;
  for (std::size_t i = 0; i < poses.size(); ++i) {
    if (i > 0) {
      const Pose2 step = Between(poses[i - 1], poses[i]);
      drift = drift * step *
              Pose2(0.002 * n(rng), 0.002 * n(rng), 0.0005 * n(rng)) *
              step.inverse();
    }
    out.push_back(poses[i] * Pose2(0.05 * n(rng), 0.05 * n(rng), 0.0));
  }
  return out;
}

TEST(KittiDriftTest, IdenticalTrajectoriesGiveZero) {
  const auto gt = CurvyPath();
  const DriftResult d = KittiDrift(gt, gt);
  EXPECT_NEAR(0.0, d.translation_percent, 1e-12);
  EXPECT_NEAR(0.0, d.rotation_deg_per_100m, 1e-12);
  EXPECT_GT(d.segments, 0);
}

TEST(KittiDriftTest, OnePercentScaleOnStraightPath) {
  const auto gt = StraightPath(1000.0, 0.25);
  std::vector<Pose2> est;
  for (const Pose2& p : gt) est.emplace_back(1.01 * p.x(), 0.0, 0.0);
  const DriftResult d = KittiDrift(est, gt);
  EXPECT_NEAR(1.0, d.translation_percent, 1e-6);
  EXPECT_NEAR(0.0, d.rotation_deg_per_100m, 1e-12);
}

TEST(KittiDriftTest, YawRateBiasOnStraightPath) {
  const auto gt = StraightPath(1000.0, 0.25);
  const double bias = 0.01 * kPi / 180.0;  // rad per meter
  std::vector<Pose2> est;
  for (const Pose2& p : gt) est.emplace_back(p.x(), p.y(), bias * p.x());
  const DriftResult d = KittiDrift(est, gt);
  EXPECT_NEAR(1.0, d.rotation_deg_per_100m, 1e-3);
}

TEST(KittiDriftTest, ShortGroundTruthAsksForAte) {
  const auto gt = StraightPath(99.0, 0.25);
  try {
    KittiDrift(gt, gt);
    FAIL() << "expected std::invalid_argument";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string::npos, std::string(e.what()).find("use ATE"));
  }
}

TEST(KittiDriftTest, RejectsSizeMismatch) {
  const auto gt = StraightPath(200.0, 0.25);
  const std::vector<Pose2> est(gt.begin(), gt.end() - 1);
  EXPECT_THROW(KittiDrift(est, gt), std::invalid_argument);
}

TEST(KittiDriftTest, InvariantToGlobalRigidTransform) {
  const auto gt = CurvyPath();
  const auto est = Noisy(gt, 3);
  const DriftResult base = KittiDrift(est, gt);
  const Pose2 t(40.0, -25.0, 2.1);
  const DriftResult moved = KittiDrift(Transformed(t, est), Transformed(t, gt));
  EXPECT_NEAR(base.translation_percent, moved.translation_percent, 1e-9);
  EXPECT_NEAR(base.rotation_deg_per_100m, moved.rotation_deg_per_100m, 1e-9);
  // Moving only the estimate does not change relative poses either.
  const DriftResult est_only = KittiDrift(Transformed(t, est), gt);
  EXPECT_NEAR(base.translation_percent, est_only.translation_percent, 1e-9);
}

TEST(AteRmseTest, IdenticalTrajectoriesGiveZero) {
  const auto gt = CurvyPath();
  EXPECT_NEAR(0.0, AteRmse(gt, gt), 1e-12);
}

TEST(AteRmseTest, RigidDisplacementIsAbsorbed) {
  const auto gt = CurvyPath();
  EXPECT_NEAR(0.0, AteRmse(Transformed(Pose2(5.0, -3.0, 0.4), gt), gt), 1e-9);
}

TEST(AteRmseTest, OnePerturbedPoseMatchesBruteForce) {
  std::vector<Pose2> gt;
  for (int i = 0; i < 100; ++i) {
    gt.emplace_back(10.0 * std::cos(0.05 * i), 6.0 * std::sin(0.05 * i), 0.0);
  }
  std::vector<Pose2> est = gt;
  est[37] = Pose2(est[37].x() + 1.0, est[37].y(), 0.0);
  const double ate = AteRmse(est, gt);
  EXPECT_NEAR(BruteForceAte(est, gt), ate, 1e-9);
  // Without rotation the centroid shift alone gives sqrt((1 - 1/N) / N).
  EXPECT_LE(ate, std::sqrt(0.99 / 100.0) + 1e-12);
  EXPECT_GT(ate, 0.09);
}

TEST(AteRmseTest, MatchesBruteForceOnNoisyTrajectories) {
  const auto gt = CurvyPath();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto est = Transformed(Pose2(3.0, 1.0, 0.7 * seed), Noisy(gt, seed));
    EXPECT_NEAR(BruteForceAte(est, gt), AteRmse(est, gt), 1e-9);
  }
}

TEST(AteRmseTest, SymmetricAndRigidInvariant) {
  const auto gt = CurvyPath();
  const auto est = Noisy(gt, 11);
  EXPECT_NEAR(AteRmse(est, gt), AteRmse(gt, est), 1e-9);
  const Pose2 t(-7.0, 12.0, -1.3);
  EXPECT_NEAR(AteRmse(est, gt), AteRmse(Transformed(t, est), Transformed(t, gt)),
              1e-9);
}

TEST(AteRmseTest, NeedsTwoPairs) {
  const std::vector<Pose2> one = {Pose2()};
  EXPECT_THROW(AteRmse(one, one), std::invalid_argument);
}

TEST(AlignRigidTest, RecoversAppliedTransform) {
  const auto gt = CurvyPath();
  const Pose2 t(5.0, -3.0, 0.4);
  const Pose2 align = AlignRigid(Transformed(t, gt), gt);
  const Pose2 expected = t.inverse();
  EXPECT_NEAR(expected.x(), align.x(), 1e-9);
  EXPECT_NEAR(expected.y(), align.y(), 1e-9);
  EXPECT_NEAR(expected.yaw(), align.yaw(), 1e-12);
}

TEST(TrajectoryCsvTest, RoundTripAndAssociation) {
  TempDir dir("evaluation");
  const Trajectory est = {{0, Pose2(0.0, 0.0, 0.0)},
                          {2, Pose2(1.0, 0.5, 0.25)},
                          {3, Pose2(2.0, 1.0, -0.125)}};
  WriteTrajectoryCsv(est, dir / "t.csv");
  const Trajectory back = ReadTrajectoryCsv(dir / "t.csv");
  ASSERT_EQ(3u, back.size());
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(est[i].scan_index, back[i].scan_index);
    EXPECT_EQ(est[i].pose, back[i].pose);
  }
  const Trajectory gt = {{3, Pose2(9.0, 0.0, 0.0)}, {1, Pose2()}, {0, Pose2()}};
  std::vector<Pose2> me, mg;
  AssociateByIndex(est, gt, &me, &mg);
  ASSERT_EQ(2u, me.size());
  EXPECT_EQ(est[2].pose, me[1]);
  EXPECT_EQ(Pose2(9.0, 0.0, 0.0), mg[1]);
  EXPECT_THROW(AssociateByIndex(est, {{7, Pose2()}}, &me, &mg),
               std::invalid_argument);
}

}  // namespace
}  // namespace radar_slam
