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

// Command line front end: simulate, run, evaluate, ablate.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "radar_slam/ablation.h"
#include "radar_slam/config.h"
#include "radar_slam/evaluation.h"
#include "radar_slam/fixtures.h"
#include "radar_slam/pipeline.h"
#include "radar_slam/scan_io.h"
#include "radar_slam/simulator.h"

namespace radar_slam {
namespace {

struct GlobalOptions {
  std::uint64_t seed = 0;
  bool single_thread = false;
};

PipelineConfig BuildConfig(const std::string& path,
                           const std::vector<std::string>& overrides) {
  PipelineConfig config = path.empty() ? PipelineConfig{} : LoadConfig(path);
  for (const std::string& entry : overrides) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("--set expects key=value, got '" + entry + "'");
    }
    SetConfigValue(entry.substr(0, eq), entry.substr(eq + 1), &config);
  }
  config.Validate();
  return config;
}

struct SimulateOptions {
  std::string fixture;
  std::string world;
  std::string script;
  int scans = 0;
  std::string out;
  std::optional<double> speckle;
  std::optional<double> ghost;
  std::optional<double> saturation;
  std::optional<double> range_noise;
};

// Returns the directory holding the rendered scans.
std::filesystem::path Simulate(const SimulateOptions& o,
                               const GlobalOptions& g) {
  Fixture f;
  if (!o.fixture.empty()) {
    f = MakeFixture(o.fixture, g.seed);
  } else {
    if (o.world.empty() || o.script.empty() || o.scans <= 0) {
      throw std::invalid_argument(
          "simulate needs --fixture, or --world, --script and --scans");
    }
    f.name = "custom";
    f.world = ReadWorldCsv(o.world);
    f.script = ReadScriptCsv(o.script);
    f.artifacts.noise_seed = g.seed;
  }
  if (o.scans > 0) f.num_scans = o.scans;
  if (o.speckle) f.artifacts.speckle_prob = *o.speckle;
  if (o.ghost) f.artifacts.ghost_prob = *o.ghost;
  if (o.saturation) f.artifacts.saturation_prob = *o.saturation;
  if (o.range_noise) f.artifacts.range_noise_std = *o.range_noise;
  const std::filesystem::path out(o.out);
  std::filesystem::create_directories(out);
  const SequenceFiles files = GenerateSequence(
      f.world, f.script, f.num_scans, f.params, f.artifacts, out);
  WriteWorldCsv(f.world, out / "world.csv");
  WriteScriptCsv(f.script, out / "script.csv");
  std::cerr << "simulated " << files.scans.size() << " scans ("
            << f.name << ", seed " << g.seed << ") into " << out << "\n";
  return out / "scans";
}

void PrintMetrics(const Trajectory& estimate, const Trajectory& ground_truth,
                  std::ostream& out) {
  const TrajectoryScore score = ScoreTrajectory(estimate, ground_truth);
  out << "metric,value\n";
  out << "ate_rmse," << score.ate_rmse << "\n";
  if (score.drift) {
    out << "kitti_trans_pct," << score.drift->translation_percent << "\n";
    out << "kitti_rot_deg_per_100m," << score.drift->rotation_deg_per_100m
        << "\n";
    out << "kitti_segments," << score.drift->segments << "\n";
  }
}

std::vector<int> ParseFrames(const std::string& text) {
  std::vector<int> frames;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) frames.push_back(std::stoi(item));
  }
  return frames;
}

int Main(int argc, char** argv) {
  CLI::App app{"Radar odometry and mapping pipeline"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--seed", g.seed, "Seed for simulated artifacts");
  app.add_flag("--single-thread", g.single_thread,
               "Run the loop back end inline instead of on a worker thread");

  std::string config_path;
  std::vector<std::string> overrides;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "INI config file")
        ->check(CLI::ExistingFile);
    sub->add_option("--set", overrides, "Override one key, e.g. icp.huber_delta=0.5");
  };

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Render a synthetic sequence");
  simulate->add_option("--fixture", sim.fixture, "Built-in fixture")
      ->check(CLI::IsMember(FixtureNames()));
  simulate->add_option("--world", sim.world, "World CSV (x1,y1,x2,y2,reflectivity)");
  simulate->add_option("--script", sim.script, "Waypoint CSV (time,x,y,yaw)");
  simulate->add_option("--scans", sim.scans, "Number of scans");
  simulate->add_option("--out", sim.out, "Output directory")->required();
  simulate->add_option("--speckle", sim.speckle, "Per-cell speckle probability");
  simulate->add_option("--ghost", sim.ghost, "Per-return ghost probability");
  simulate->add_option("--saturation", sim.saturation,
                       "Per-azimuth saturation probability");
  simulate->add_option("--range-noise", sim.range_noise,
                       "Range noise standard deviation (m)");

  std::string input;
  std::string output;
  auto* run = app.add_subcommand("run", "Run the pipeline over a scan directory");
  run->add_option("--input", input, "Directory of scan files")->required();
  run->add_option("--output", output, "Output directory")->required();
  add_config(run);

  std::string estimate_path;
  std::string truth_path;
  std::string metrics_path;
  auto* evaluate = app.add_subcommand("evaluate", "Score a trajectory");
  evaluate->add_option("--estimate", estimate_path, "Trajectory CSV")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--ground-truth", truth_path, "Trajectory CSV")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--output", metrics_path, "Metrics CSV (default stdout)");

  std::string frames_text = "5,7,9";
  std::string ablate_fixture;
  auto* ablate = app.add_subcommand("ablate", "Run the ablation variants");
  ablate->add_option("--input", input, "Directory of scan files");
  ablate->add_option("--ground-truth", truth_path, "Trajectory CSV");
  ablate->add_option("--fixture", ablate_fixture,
                     "Simulate this fixture first (into OUTPUT/data)")
      ->check(CLI::IsMember(FixtureNames()));
  ablate->add_option("--output", output, "Output directory")->required();
  ablate->add_option("--frames", frames_text,
                     "Comma-separated n for scan_to_frames(n)");
  add_config(ablate);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      Simulate(sim, g);
    } else if (run->parsed()) {
      const PipelineConfig config = BuildConfig(config_path, overrides);
      const RunSummary s =
          RunPipeline(config, input, output, RunOptions{g.single_thread});
      std::cerr << "processed " << s.scans << " scans, " << s.loop_edges
                << " loop edges, " << s.fallbacks << " fallbacks, map "
                << s.map_size << " points\n";
    } else if (evaluate->parsed()) {
      const Trajectory estimate = ReadTrajectoryCsv(estimate_path);
      const Trajectory truth = ReadTrajectoryCsv(truth_path);
      if (metrics_path.empty()) {
        PrintMetrics(estimate, truth, std::cout);
      } else {
        std::ostringstream text;
        PrintMetrics(estimate, truth, text);
        std::ofstream(metrics_path) << text.str();
      }
    } else if (ablate->parsed()) {
      const PipelineConfig config = BuildConfig(config_path, overrides);
      std::filesystem::path scan_dir = input;
      std::filesystem::path gt_path = truth_path;
      if (!ablate_fixture.empty()) {
        SimulateOptions o;
        o.fixture = ablate_fixture;
        o.out = (std::filesystem::path(output) / "data").string();
        scan_dir = Simulate(o, g);
        gt_path = std::filesystem::path(o.out) / "ground_truth.csv";
      }
      if (scan_dir.empty() || gt_path.empty()) {
        throw std::invalid_argument(
            "ablate needs --fixture, or --input and --ground-truth");
      }
      const auto files = ListScanFiles(scan_dir);
      if (files.empty()) {
        throw std::runtime_error("no scans found in " + scan_dir.string());
      }
      const auto rows =
          RunAblation(StandardAblation(config, ParseFrames(frames_text)), files,
                      ReadTrajectoryCsv(gt_path), g.single_thread);
      std::filesystem::create_directories(output);
      WriteAblationCsv(rows, std::filesystem::path(output) / "ablation.csv");
      for (const AblationRow& r : rows) {
        std::cerr << r.variant << " " << r.trajectory << ": ate "
                  << r.score.ate_rmse;
        if (r.score.drift) {
          std::cerr << " m, drift " << r.score.drift->translation_percent
                    << " %, " << r.score.drift->rotation_deg_per_100m
                    << " deg/100m";
        }
        std::cerr << "\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace radar_slam

int main(int argc, char** argv) { return radar_slam::Main(argc, argv); }
