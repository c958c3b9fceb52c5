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
#include <stdexcept>

#include "Eigen/Geometry"

namespace radar_slam {
namespace {

constexpr std::uint64_t kLayoutSeed = 0x5EED;
constexpr double kSampleStep = 0.1;

struct PathSample {
  Eigen::Vector2d position;
  double heading;
};

Eigen::Vector2d Perp(const Eigen::Vector2d& v) { return {-v.y(), v.x()}; }

double Heading(const Eigen::Vector2d& v) { return std::atan2(v.y(), v.x()); }

void AppendLine(const Eigen::Vector2d& from, const Eigen::Vector2d& to,
                std::vector<PathSample>* out) {
  const Eigen::Vector2d d = to - from;
  const double length = d.norm();
  const int steps = std::max(1, static_cast<int>(std::ceil(length / kSampleStep)));
  const double heading = Heading(d);
  for (int i = 0; i < steps; ++i) {
    out->push_back({from + d * (static_cast<double>(i) / steps), heading});
  }
}

// Corner of signed turn `sweep` in a frame whose entry is the origin with
// heading 0: a clothoid of length `transition` ramping curvature up to
// 1/radius, a circular arc, and the mirrored clothoid. Samples are spaced
// kSampleStep apart; `exit` receives the end point.
std::vector<PathSample> SampleCorner(double sweep, double radius,
                                     double transition,
                                     Eigen::Vector2d* exit) {
  constexpr int kSubsteps = 100;
  const double sign = sweep >= 0.0 ? 1.0 : -1.0;
  const double arc = radius * std::abs(sweep) - transition;
  const double length = 2.0 * transition + arc;
  const auto curvature = [&](double s) {
    double k = 1.0 / radius;
    if (s < transition) k *= s / transition;
    if (s > transition + arc) k *= (length - s) / transition;
    return sign * k;
  };
  const int steps =
      std::max(1, static_cast<int>(std::ceil(length / kSampleStep)));
  const double h = length / (steps * kSubsteps);
  std::vector<PathSample> out;
  Eigen::Vector2d p = Eigen::Vector2d::Zero();
  double heading = 0.0;
  for (int i = 0; i < steps; ++i) {
    out.push_back({p, heading});
    for (int j = 0; j < kSubsteps; ++j) {
      const double s = (i * kSubsteps + j) * h;
      const double mid = heading + 0.5 * h * curvature(s + 0.25 * h);
      p += h * Eigen::Vector2d(std::cos(mid), std::sin(mid));
      heading += 0.5 * h * (curvature(s) + curvature(s + h));
    }
  }
  *exit = p;
  return out;
}

// One closed lap starting at the middle of edge 0.
std::vector<PathSample> SampleLap(const std::vector<Eigen::Vector2d>& corners,
                                  double radius, double transition) {
  const std::size_t n = corners.size();
  struct Turn {
    Eigen::Vector2d entry, exit;
    double start_heading;
    std::vector<PathSample> local;
  };
  std::vector<Turn> turns(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& prev = corners[(i + n - 1) % n];
    const Eigen::Vector2d& c = corners[i];
    const Eigen::Vector2d& next = corners[(i + 1) % n];
    const Eigen::Vector2d din = (c - prev).normalized();
    const Eigen::Vector2d dout = (next - c).normalized();
    const double sweep = NormalizeAngle(Heading(dout) - Heading(din));
    Turn& t = turns[i];
    Eigen::Vector2d chord;
    t.local = SampleCorner(sweep, radius, transition, &chord);
    // The corner is symmetric, so its chord bisects din and dout.
    const double tangent = chord.norm() / (din + dout).norm();
    t.entry = c - tangent * din;
    t.exit = c + tangent * dout;
    t.start_heading = Heading(din);
  }
  std::vector<PathSample> lap;
  const Eigen::Vector2d start = 0.5 * (corners[0] + corners[1 % n]);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = (k + 1) % n;
    const Eigen::Vector2d from = k == 0 ? start : turns[k].exit;
    AppendLine(from, turns[i].entry, &lap);
    const Turn& t = turns[i];
    const Eigen::Matrix2d rotation =
        Eigen::Rotation2Dd(t.start_heading).toRotationMatrix();
    for (const PathSample& s : t.local) {
      lap.push_back({t.entry + rotation * s.position,
                     t.start_heading + s.heading});
    }
  }
  AppendLine(turns[0].exit, start, &lap);
  return lap;
}

// Pillars on both sides of every route edge, away from the fillets.
void AddPillars(const std::vector<Eigen::Vector2d>& corners, double margin,
                World* world) {
  const std::size_t n = corners.size();
  const std::size_t edges = n == 2 ? 1 : n;
  for (std::size_t e = 0; e < edges; ++e) {
    const Eigen::Vector2d p = corners[e];
    const Eigen::Vector2d q = corners[(e + 1) % n];
    const double length = (q - p).norm();
    const Eigen::Vector2d along = (q - p) / length;
    const Eigen::Vector2d left = Perp(along);
    double s = margin;
    for (std::uint64_t k = 0; s < length - margin; ++k) {
      const double u1 = CounterUniform(kLayoutSeed, e, k, 0, 0);
      const double u2 = CounterUniform(kLayoutSeed, e, k, 0, 1);
      const double u3 = CounterUniform(kLayoutSeed, e, k, 0, 2);
      const double side = u2 < 0.5 ? 1.0 : -1.0;
      const double offset = 2.6 + 0.4 * u3;
      const double half = 0.25 + 0.25 * u1;
      const Eigen::Vector2d c = p + s * along + side * offset * left;
      AddBox(c - Eigen::Vector2d(half, half), c + Eigen::Vector2d(half, half),
             0.9, world);
      s += 4.5 + 4.0 * u1;
    }
  }
}

// Closed wall through `corners` whose edges are broken into 4-7 m pieces
// with random lateral offsets of up to `amplitude`.
void AddJaggedLoop(const std::vector<Eigen::Vector2d>& corners,
                   double amplitude, double reflectivity, std::uint64_t key,
                   World* world) {
  const std::size_t n = corners.size();
  const std::size_t edges = n == 2 ? 1 : n;
  for (std::size_t e = 0; e < edges; ++e) {
    const Eigen::Vector2d p = corners[e];
    const Eigen::Vector2d q = corners[(e + 1) % n];
    const double length = (q - p).norm();
    const Eigen::Vector2d along = (q - p) / length;
    const Eigen::Vector2d left = Perp(along);
    Eigen::Vector2d last = p;
    double s = 0.0;
    for (std::uint64_t k = 0;; ++k) {
      s += 4.0 + 3.0 * CounterUniform(kLayoutSeed, key, e, k, 3);
      if (s > length - 3.0) break;
      const double offset =
          amplitude * (2.0 * CounterUniform(kLayoutSeed, key, e, k, 4) - 1.0);
      const Eigen::Vector2d v = p + s * along + offset * left;
      world->segments.push_back({last, v, reflectivity});
      last = v;
    }
    world->segments.push_back({last, q, reflectivity});
  }
}

std::vector<Eigen::Vector2d> Rectangle(double x0, double y0, double x1,
                                       double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

// Route rectangle [0, w] x [0, h] inside a corridor of half-width 5 m.
Fixture LoopFixture(std::string name, double w, double h, double distance) {
  Fixture f;
  f.name = std::move(name);
  const std::vector<Eigen::Vector2d> corners = {
      {0.0, 0.0}, {w, 0.0}, {w, h}, {0.0, h}};
  AddJaggedLoop(Rectangle(-5.0, -5.0, w + 5.0, h + 5.0), 1.2, 0.95, 1,
                &f.world);
  AddJaggedLoop(Rectangle(5.0, 5.0, w - 5.0, h - 5.0), 1.2, 0.85, 2,
                &f.world);
  AddPillars(corners, 8.0, &f.world);
  const double speed = 2.0;
  f.script =
      MakeLoopScript(corners, 5.0, 5.0, speed, distance + 2.0 * speed);
  f.num_scans = static_cast<int>(std::lround(
      distance / speed / f.params.rotation_period));
  return f;
}

}  // namespace

void AddBox(const Eigen::Vector2d& min_corner,
            const Eigen::Vector2d& max_corner, double reflectivity,
            World* world) {
  const Eigen::Vector2d a = min_corner;
  const Eigen::Vector2d b(max_corner.x(), min_corner.y());
  const Eigen::Vector2d c = max_corner;
  const Eigen::Vector2d d(min_corner.x(), max_corner.y());
  world->segments.push_back({a, b, reflectivity});
  world->segments.push_back({b, c, reflectivity});
  world->segments.push_back({c, d, reflectivity});
  world->segments.push_back({d, a, reflectivity});
}

TrajectoryScript MakeLoopScript(const std::vector<Eigen::Vector2d>& corners,
                                double corner_radius, double transition_length,
                                double speed, double distance,
                                double start_time) {
  if (corners.size() < 3 || !(speed > 0.0) || !(distance > 0.0) ||
      !(corner_radius > 0.0) || !(transition_length >= 0.0)) {
    throw std::invalid_argument("loop script: bad arguments");
  }
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const std::size_t n = corners.size();
    const double sweep = NormalizeAngle(
        Heading(corners[(i + 1) % n] - corners[i]) -
        Heading(corners[i] - corners[(i + n - 1) % n]));
    if (corner_radius * std::abs(sweep) < transition_length) {
      throw std::invalid_argument(
          "loop script: transition longer than a corner allows");
    }
  }
  const std::vector<PathSample> lap =
      SampleLap(corners, corner_radius, transition_length);
  std::vector<Waypoint> waypoints;
  double travelled = 0.0;
  Eigen::Vector2d last = lap.front().position;
  double last_heading = lap.front().heading;
  waypoints.push_back({start_time, Pose2(last.x(), last.y(), last_heading)});
  for (std::size_t i = 1; travelled < distance; ++i) {
    const PathSample& s = lap[i % lap.size()];
    travelled += (s.position - last).norm();
    last = s.position;
    waypoints.push_back({start_time + travelled / speed,
                         Pose2(s.position.x(), s.position.y(), s.heading)});
  }
  return TrajectoryScript(std::move(waypoints));
}

std::vector<std::string> FixtureNames() {
  return {"stationary", "straight", "square_loop", "noisy_loop"};
}

Fixture MakeFixture(std::string_view name, std::uint64_t seed) {
  Fixture f;
  if (name == "stationary") {
    f.name = "stationary";
    AddBox({-10.0, -10.0}, {10.0, 10.0}, 0.95, &f.world);
    AddBox({2.0, 3.0}, {3.0, 4.5}, 0.9, &f.world);
    AddBox({-6.0, -2.0}, {-5.0, 0.0}, 0.9, &f.world);
    AddBox({4.0, -6.0}, {6.0, -5.2}, 0.9, &f.world);
    f.num_scans = 101;
    const Pose2 rest(1.0, 0.5, 0.3);
    f.script = TrajectoryScript(
        {{0.0, rest}, {f.num_scans * f.params.rotation_period + 1.0, rest}});
    f.artifacts.range_noise_std = 0.03;
  } else if (name == "straight") {
    f.name = "straight";
    const double length = 200.0;
    AddJaggedLoop({{-10.0, -5.0}, {length, -5.0}}, 1.2, 0.95, 1, &f.world);
    AddJaggedLoop({{-10.0, 5.0}, {length, 5.0}}, 1.2, 0.85, 2, &f.world);
    f.world.segments.push_back({{-10.0, -5.0}, {-10.0, 5.0}, 0.95});
    f.num_scans = 60;
    const double duration = f.num_scans * f.params.rotation_period + 1.0;
    f.script = TrajectoryScript({{0.0, Pose2(0.0, 0.0, 0.0)},
                                 {duration, Pose2(duration, 0.0, 0.0)}});
  } else if (name == "square_loop") {
    f = LoopFixture("square_loop", 30.0, 30.0, 1.25 * 120.0);
    f.artifacts.range_noise_std = 0.03;
  } else if (name == "noisy_loop") {
    f = LoopFixture("noisy_loop", 50.0, 30.0, 200.0);
    f.artifacts.speckle_prob = 0.002;
    f.artifacts.ghost_prob = 0.05;
    f.artifacts.saturation_prob = 0.01;
    f.artifacts.range_noise_std = 0.03;
  } else {
    throw std::invalid_argument("unknown fixture: " + std::string(name));
  }
  f.artifacts.noise_seed = seed;
  return f;
}

}  // namespace radar_slam
