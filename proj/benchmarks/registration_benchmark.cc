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

#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "radar_slam/kdtree.h"
#include "radar_slam/registration.h"
#include "support/two_wall.h"

namespace radar_slam {
namespace {

std::vector<Eigen::Vector2d> RandomPoints(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  std::vector<Eigen::Vector2d> points;
  for (int i = 0; i < n; ++i) points.emplace_back(u(rng), u(rng));
  return points;
}

void BM_KdTreeBuild(benchmark::State& state) {
  const auto points = RandomPoints(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    KdTree2 tree(points);
    benchmark::DoNotOptimize(tree);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KdTreeBuild)->Arg(1000)->Arg(10000)->Arg(50000);

void BM_KdTreeKnn(benchmark::State& state) {
  const KdTree2 tree(RandomPoints(static_cast<int>(state.range(0)), 2));
  const auto queries = RandomPoints(1000, 3);
  for (auto _ : state) {
    for (const auto& q : queries) benchmark::DoNotOptimize(tree.Knn(q, 5));
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_KdTreeKnn)->Arg(1000)->Arg(10000)->Arg(50000);

void BM_RegisterTwoWall(benchmark::State& state) {
  const auto problem = testing::MakeTwoWallProblem(Pose2(0.3, -0.2, 0.05));
  const RegistrationConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        Register(problem.source, problem.map, Pose2::Identity(), config));
  }
}
BENCHMARK(BM_RegisterTwoWall)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace radar_slam
