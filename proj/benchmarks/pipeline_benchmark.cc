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

#include <vector>

#include "benchmark/benchmark.h"
#include "radar_slam/feature_detector.h"
#include "radar_slam/fixtures.h"
#include "radar_slam/geometry_filter.h"
#include "radar_slam/pipeline.h"
#include "radar_slam/simulator.h"

namespace radar_slam {
namespace {

std::vector<PolarScan> RenderScans(const Fixture& f, int count) {
  const PoseFunction pose_at = [&f](double t) { return f.script.PoseAt(t); };
  std::vector<PolarScan> scans;
  for (int k = 0; k < count; ++k) {
    const double t = f.script.start_time() + k * f.params.rotation_period;
    scans.push_back(
        RenderScan(f.world, pose_at, k, t, f.params, f.artifacts).scan);
  }
  return scans;
}

const std::vector<PolarScan>& NoisyScans() {
  static const std::vector<PolarScan> scans =
      RenderScans(MakeFixture("noisy_loop", 0), 40);
  return scans;
}

void BM_RenderScan(benchmark::State& state) {
  const Fixture f = MakeFixture("noisy_loop", 0);
  const PoseFunction pose_at = [&f](double t) { return f.script.PoseAt(t); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        RenderScan(f.world, pose_at, 0, 0.0, f.params, f.artifacts));
  }
}
BENCHMARK(BM_RenderScan)->Unit(benchmark::kMillisecond);

void BM_DetectFeatures(benchmark::State& state) {
  const PolarScan& scan = NoisyScans().front();
  const DetectorConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(DetectFeatures(scan, config));
}
BENCHMARK(BM_DetectFeatures)->Unit(benchmark::kMicrosecond);

void BM_FilterSurface(benchmark::State& state) {
  const FeatureCloud raw = DetectFeatures(NoisyScans().front(), DetectorConfig{});
  const GeometryConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(FilterSurface(raw, config));
  state.SetItemsProcessed(state.iterations() * raw.size());
}
BENCHMARK(BM_FilterSurface)->Unit(benchmark::kMicrosecond);

// Full tracking plus loop back end over 40 noisy scans; items are scans.
void BM_PipelineScans(benchmark::State& state) {
  const auto& scans = NoisyScans();
  for (auto _ : state) {
    Pipeline pipeline(PipelineConfig{}, /*single_thread=*/true);
    for (const PolarScan& scan : scans) pipeline.ProcessScan(scan);
    pipeline.Finish();
    benchmark::DoNotOptimize(pipeline.pose());
  }
  state.SetItemsProcessed(state.iterations() * scans.size());
}
BENCHMARK(BM_PipelineScans)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace radar_slam

BENCHMARK_MAIN();
