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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "radar_slam/evaluation.h"
#include "radar_slam/feature_map.h"
#include "radar_slam/fixtures.h"
#include "radar_slam/geometry_filter.h"
#include "radar_slam/pipeline.h"
#include "radar_slam/registration.h"
#include "radar_slam/simulator.h"
#include "support/filter_oracle.h"
#include "support/geometry_oracle.h"
#include "support/metric_oracles.h"
#include "support/process.h"
#include "support/test_util.h"
#include "support/two_wall.h"

namespace radar_slam {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Format(const char* fmt, double a) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, a);
  return buf;
}

int failures = 0;

void Report(int number, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", number,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

// 1. Geometry filter against the brute-force kNN and closed-form eigen oracle.
void GeometryFilterOracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  int mismatched = 0;
  std::size_t points = 0;
  const GeometryConfig config;
  for (int trial = 0; trial < 50; ++trial) {
    const auto xy = testing::RandomSurfaceCloud(rng);
    points += xy.size();
    if (testing::OracleMask(xy, config) !=
        SurfaceMask(testing::MakeCloud(xy), config)) {
      ++mismatched;
    }
  }
  const double seconds = SecondsSince(start);
  Report(1, "geometry filter matches brute-force oracle",
         mismatched == 0 && seconds < 5.0,
         std::to_string(mismatched) + " of 50 clouds differ, " +
             std::to_string(points) + " points, " +
             Format("%.3f s (limit 5 s)", seconds));
}

// 2. Eviction conjunction, recursive vs direct form, transient eviction.
void ProbabilityFilterLaw() {
  const FilterConfig config = testing::StandardFilter();
  int wrong_cases = 0;
  for (int mask = 0; mask < 8; ++mask) {
    const bool low_p = mask & 1, old = mask & 2, few = mask & 4;
    const bool evicted = ShouldEvict(low_p ? 0.1 : 0.5, old ? 20.0 : 5.0,
                                     few ? 2.0 : 12.0, config);
    if (evicted != (low_p && old && few)) ++wrong_cases;
  }

  const auto log = testing::ReplayLog(77);
  FeatureMap map;
  testing::DirectFormModel model(config);
  int disagreements = 0;
  for (int k = 0; k < static_cast<int>(log.size()); ++k) {
    testing::ApplyFilterScan(log[k], k, config, &map);
    model.Apply(log[k], k);
    if (model.records().size() != map.size()) {
      ++disagreements;
      continue;
    }
    for (std::size_t i = 0; i < map.size(); ++i) {
      const MapPoint& mp = map.points()[i];
      const auto& r = model.records()[i];
      if (r.position != mp.position.xy() || model.Rounds(r, k) != mp.rounds ||
          model.Hits(r) != mp.hits) {
        ++disagreements;
      }
    }
  }

  const int lifetime = testing::TransientLifetime(config);
  const int limit = static_cast<int>(config.r_min) + 1;
  Report(2, "probability filter law",
         wrong_cases == 0 && disagreements == 0 && lifetime >= 0 &&
             lifetime <= limit,
         std::to_string(8 - wrong_cases) + "/8 conjunction cases, " +
             std::to_string(disagreements) +
             " recursive/direct mismatches over 50 scans, transient evicted "
             "after " +
             std::to_string(lifetime) + " scans (limit " +
             std::to_string(limit) + ")");
}

// 3. Two-wall registration recovery and equivariance.
void RegistrationRecovery() {
  const auto start = Clock::now();
  const Pose2 truth(0.3, -0.2, 0.05);
  const auto base = testing::MakeTwoWallProblem(truth);
  const RegistrationResult result =
      Register(base.source, base.map, Pose2::Identity(), RegistrationConfig{});
  const double trans_error =
      (result.pose.translation() - truth.translation()).norm();
  const double rot_error = std::abs(NormalizeAngle(result.pose.yaw() - truth.yaw()));

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double equivariance = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Pose2 world(100.0 * u(rng), 100.0 * u(rng),
                      std::numbers::pi * u(rng));
    const auto moved = testing::MakeTwoWallProblem(truth, world);
    const Pose2 pose =
        Register(moved.source, moved.map, world, RegistrationConfig{}).pose;
    const Pose2 expected = world * result.pose;
    equivariance = std::max(
        {equivariance, (pose.translation() - expected.translation()).norm(),
         std::abs(NormalizeAngle(pose.yaw() - expected.yaw()))});
  }
  const double seconds = SecondsSince(start);
  Report(3, "two-wall registration recovery",
         result.converged && trans_error < 1e-3 && rot_error < 1e-4 &&
             equivariance < 1e-6 && seconds < 2.0,
         Format("error %.2e m", trans_error) + Format(" / %.2e rad", rot_error) +
             " (limit 1e-3 m / 1e-4 rad), " +
             Format("equivariance %.2e (limit 1e-6), ", equivariance) +
             Format("%.3f s (limit 2 s)", seconds));
}

struct RunOutput {
  Trajectory odometry;
  Trajectory corrected;
  Trajectory ground_truth;
  std::size_t loop_edges = 0;
  double pipeline_seconds = 0.0;
  std::vector<double> scan_seconds;
};

// Renders each scan just before processing it, so long sequences need not
// sit in memory. Only pipeline time is counted in `pipeline_seconds`.
RunOutput RunFixture(const Fixture& fixture, const PipelineConfig& config,
                     bool single_thread = true) {
  RunOutput out;
  Pipeline pipeline(config, single_thread);
  const PoseFunction pose_at = [&fixture](double t) {
    return fixture.script.PoseAt(t);
  };
  for (int k = 0; k < fixture.num_scans; ++k) {
    const double t =
        fixture.script.start_time() + k * fixture.params.rotation_period;
    const PolarScan scan =
        RenderScan(fixture.world, pose_at, k, t, fixture.params,
                   fixture.artifacts)
            .scan;
    out.ground_truth.push_back({k, fixture.script.PoseAt(t)});
    const auto start = Clock::now();
    pipeline.ProcessScan(scan);
    out.scan_seconds.push_back(SecondsSince(start));
  }
  const auto start = Clock::now();
  pipeline.Finish();
  out.scan_seconds.back() += SecondsSince(start);
  for (double s : out.scan_seconds) out.pipeline_seconds += s;
  out.odometry = pipeline.odometry();
  out.corrected = pipeline.corrected();
  out.loop_edges = pipeline.graph().loop_edge_count();
  return out;
}

double TranslationDrift(const Trajectory& estimate, const Trajectory& truth) {
  std::vector<Pose2> est, gt;
  AssociateByIndex(estimate, truth, &est, &gt);
  return KittiDrift(est, gt).translation_percent;
}

double Ate(const Trajectory& estimate, const Trajectory& truth) {
  std::vector<Pose2> est, gt;
  AssociateByIndex(estimate, truth, &est, &gt);
  return AteRmse(est, gt);
}

// 4. Ablation drift ordering on the noisy loop.
void DriftOrdering() {
  const auto start = Clock::now();
  const Fixture fixture = MakeFixture("noisy_loop", 0);
  PipelineConfig base;
  base.loop_enabled = false;
  PipelineConfig no_pf = base;
  no_pf.probability_filter_enabled = false;
  PipelineConfig no_geo = base;
  no_geo.geometry_filter_enabled = false;
  PipelineConfig frames = base;
  frames.matching = MatchingMode::kScanToFrames;
  frames.frames = 9;

  const RunOutput full_run = RunFixture(fixture, base);
  const double full = TranslationDrift(full_run.odometry, full_run.ground_truth);
  const double pf = TranslationDrift(RunFixture(fixture, no_pf).odometry,
                                     full_run.ground_truth);
  const double geo = TranslationDrift(RunFixture(fixture, no_geo).odometry,
                                      full_run.ground_truth);
  const double f9 = TranslationDrift(RunFixture(fixture, frames).odometry,
                                     full_run.ground_truth);
  const double seconds = SecondsSince(start);
  Report(4, "drift ordering on the noisy loop",
         full < pf && pf < geo && full < f9 && seconds < 180.0,
         Format("full %.3f%%", full) + Format(" < no_probability_filter %.3f%%", pf) +
             Format(" < no_geometry_filter %.3f%%", geo) +
             Format("; scan_to_map %.3f%%", full) +
             Format(" < scan_to_frames(9) %.3f%%", f9) +
             Format("; %.1f s (limit 180 s)", seconds));
}

// 5. Loop closure reduces ATE on the square loop.
void LoopClosureBenefit() {
  const auto start = Clock::now();
  const RunOutput run = RunFixture(MakeFixture("square_loop", 0), PipelineConfig{});
  const double odom = Ate(run.odometry, run.ground_truth);
  const double corrected = Ate(run.corrected, run.ground_truth);
  const double seconds = SecondsSince(start);
  Report(5, "loop closure benefit on the square loop",
         run.loop_edges >= 1 && corrected <= 0.8 * odom && seconds < 120.0,
         std::to_string(run.loop_edges) + " verified loop edges, " +
             Format("ATE corrected %.4f m", corrected) +
             Format(" vs odometry %.4f m", odom) +
             Format(" (ratio %.3f, limit 0.8), ", corrected / odom) +
             Format("%.1f s (limit 120 s)", seconds));
}

// 6. Metric closed forms, invariance and the brute-force ATE oracle.
void MetricCorrectness() {
  const auto straight = testing::StraightPath(1000.0, 0.25);
  std::vector<Pose2> scaled, biased;
  const double bias = 0.01 * std::numbers::pi / 180.0;
  for (const Pose2& p : straight) {
    scaled.emplace_back(1.01 * p.x(), 0.0, 0.0);
    biased.emplace_back(p.x(), p.y(), bias * p.x());
  }
  const double scale_error =
      std::abs(KittiDrift(scaled, straight).translation_percent - 1.0);
  const double bias_error =
      std::abs(KittiDrift(biased, straight).rotation_deg_per_100m - 1.0);

  std::vector<Pose2> gt;
  for (int i = 0; i < 400; ++i) {
    gt.emplace_back(20.0 * std::cos(0.02 * i) + 0.01 * i,
                    12.0 * std::sin(0.03 * i), 0.0);
  }
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 0.2);
  double invariance = 0.0;
  double oracle_error = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Pose2> est;
    const Pose2 offset(3.0 * trial, -2.0, 0.5 * trial - 1.0);
    for (const Pose2& p : gt) est.push_back(offset * Pose2(p.x() + n(rng), p.y() + n(rng), 0.0));
    const Pose2 rigid(-4.0, 7.0, 1.1 * trial);
    std::vector<Pose2> moved_est, moved_gt;
    for (const Pose2& p : est) moved_est.push_back(rigid * p);
    for (const Pose2& p : gt) moved_gt.push_back(rigid * p);
    const double ate = AteRmse(est, gt);
    invariance = std::max(invariance, std::abs(AteRmse(moved_est, moved_gt) - ate));
    std::vector<Pose2> rigid_copy;
    for (const Pose2& p : gt) rigid_copy.push_back(offset * p);
    invariance = std::max(invariance, AteRmse(rigid_copy, gt));
    oracle_error =
        std::max(oracle_error, std::abs(testing::BruteForceAte(est, gt) - ate));
  }
  Report(6, "metric correctness",
         scale_error < 1e-6 && bias_error < 1e-3 && invariance < 1e-9 &&
             oracle_error < 1e-9,
         Format("1%% scale error %.2e (limit 1e-6)", scale_error) +
             Format(", 0.01 deg/m bias error %.2e (limit 1e-3)", bias_error) +
             Format(", ATE rigid invariance %.2e (limit 1e-9)", invariance) +
             Format(", brute-force oracle gap %.2e (limit 1e-9)", oracle_error));
}

// 7. Byte-identical outputs through the command line tool.
void Determinism() {
  testing::TempDir dir("acceptance_determinism");
  const std::string cli = RADAR_SLAM_CLI_PATH;
  const std::string data = (dir / "data").string();
  const auto sim = testing::RunCommand(
      {cli, "--seed", "0", "simulate", "--fixture", "square_loop", "--out",
       data},
      dir.path());
  std::vector<std::string> runs = {"a", "b", "c"};
  bool ok = sim.exit_code == 0;
  for (const std::string& r : runs) {
    std::vector<std::string> args = {cli};
    if (r != "c") args.push_back("--single-thread");
    for (const char* a : {"run", "--input"}) args.push_back(a);
    args.push_back(data);
    args.push_back("--output");
    args.push_back((dir / r).string());
    ok = ok && testing::RunCommand(args, dir.path()).exit_code == 0;
  }
  int compared = 0;
  std::string differing;
  for (const char* name : {"odometry.csv", "corrected.csv", "map.csv",
                           "scan_log.csv", "loops.csv", "config.ini"}) {
    const std::string a = testing::ReadFile(dir / "a" / name);
    if (a.empty()) {
      differing += std::string(" ") + name + "(missing)";
      continue;
    }
    ++compared;
    if (a != testing::ReadFile(dir / "b" / name)) {
      differing += std::string(" ") + name + "(single-thread)";
    }
    if (a != testing::ReadFile(dir / "c" / name)) {
      differing += std::string(" ") + name + "(concurrent)";
    }
  }
  const std::string loops = testing::ReadFile(dir / "a" / "loops.csv");
  Report(7, "deterministic outputs",
         ok && differing.empty(),
         std::to_string(compared) +
             " files compared across two single-thread runs and one "
             "concurrent run" +
             (ok ? "" : ", a command failed") +
             (differing.empty() ? "" : ", differing:" + differing));
}

// 8. Throughput on the 400 x 1000 noisy loop.
void Throughput() {
  const Fixture fixture = MakeFixture("noisy_loop", 0);
  const RunOutput run = RunFixture(fixture, PipelineConfig{});
  const double rate = run.scan_seconds.size() / run.pipeline_seconds;
  constexpr std::size_t kWindow = 40;  // ten seconds of sensor time
  double worst = 1e300;
  for (std::size_t i = 0; i + kWindow <= run.scan_seconds.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = i; j < i + kWindow; ++j) s += run.scan_seconds[j];
    worst = std::min(worst, kWindow / s);
  }
  Report(8, "throughput",
         rate >= 4.0 && worst >= 4.0,
         std::to_string(fixture.params.azimuths) + " x " +
             std::to_string(fixture.params.bins) + ", " +
             std::to_string(run.scan_seconds.size()) + " scans, " +
             Format("%.1f scans/s overall", rate) +
             Format(", slowest 40-scan window %.1f scans/s (limit 4)", worst));
}

}  // namespace
}  // namespace radar_slam

int main() {
  using namespace radar_slam;
  GeometryFilterOracle();
  ProbabilityFilterLaw();
  RegistrationRecovery();
  DriftOrdering();
  LoopClosureBenefit();
  MetricCorrectness();
  Determinism();
  Throughput();
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
