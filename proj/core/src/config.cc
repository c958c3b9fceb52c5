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

#include "radar_slam/config.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <system_error>

#include "boost/property_tree/ini_parser.hpp"
#include "boost/property_tree/ptree.hpp"
#include "csv_table.h"

namespace radar_slam {
namespace {

struct Binding {
  std::string key;
  std::function<void(std::string_view)> set;
  std::function<std::string()> get;
};

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void BadValue(const std::string& key, std::string_view value) {
  throw ConfigError("invalid value for " + key + ": '" + std::string(value) +
                    "'");
}

template <typename T>
T ParseNumber(const std::string& key, std::string_view text) {
  text = Trim(text);
  T value{};
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    BadValue(key, text);
  }
  return value;
}

bool ParseBool(const std::string& key, std::string_view text) {
  text = Trim(text);
  if (text == "true" || text == "1" || text == "on" || text == "yes") {
    return true;
  }
  if (text == "false" || text == "0" || text == "off" || text == "no") {
    return false;
  }
  BadValue(key, text);
}

Binding Bind(std::string key, double* field) {
  return {key, [key, field](std::string_view v) {
            *field = ParseNumber<double>(key, v);
          },
          [field] { return internal::FormatDouble(*field); }};
}

Binding Bind(std::string key, int* field) {
  return {key,
          [key, field](std::string_view v) { *field = ParseNumber<int>(key, v); },
          [field] { return std::to_string(*field); }};
}

Binding Bind(std::string key, bool* field) {
  return {key, [key, field](std::string_view v) { *field = ParseBool(key, v); },
          [field] { return std::string(*field ? "true" : "false"); }};
}

std::vector<Binding> Bindings(PipelineConfig* c) {
  std::vector<Binding> b;
  b.push_back({"pipeline.matching",
               [c](std::string_view v) {
                 v = Trim(v);
                 if (v == "scan_to_map") {
                   c->matching = MatchingMode::kScanToMap;
                   return;
                 }
                 constexpr std::string_view kPrefix = "scan_to_frames(";
                 if (v.starts_with(kPrefix) && v.ends_with(")")) {
                   c->matching = MatchingMode::kScanToFrames;
                   c->frames = ParseNumber<int>(
                       "pipeline.matching",
                       v.substr(kPrefix.size(), v.size() - kPrefix.size() - 1));
                   return;
                 }
                 BadValue("pipeline.matching", v);
               },
               [c] { return MatchingName(*c); }});
  b.push_back(Bind("pipeline.geometry_filter", &c->geometry_filter_enabled));
  b.push_back(
      Bind("pipeline.probability_filter", &c->probability_filter_enabled));
  b.push_back(Bind("pipeline.loop", &c->loop_enabled));
  b.push_back(Bind("pipeline.velocity_window", &c->velocity_window));

  b.push_back(Bind("detector.intensity_threshold",
                   &c->detector.intensity_threshold));
  b.push_back(Bind("detector.gradient_threshold",
                   &c->detector.gradient_threshold));
  b.push_back(Bind("detector.min_run_bins", &c->detector.min_run_bins));
  b.push_back(Bind("detector.max_features_per_azimuth",
                   &c->detector.max_features_per_azimuth));

  b.push_back(Bind("geometry.m", &c->geometry.m));
  b.push_back(Bind("geometry.d_max", &c->geometry.d_max));
  b.push_back(Bind("geometry.theta_min", &c->geometry.theta_min));

  b.push_back(Bind("icp.max_iterations", &c->icp.max_iterations));
  b.push_back(Bind("icp.correspondence_k", &c->icp.correspondence_k));
  b.push_back(Bind("icp.max_correspondence_dist",
                   &c->icp.max_correspondence_dist));
  b.push_back(Bind("icp.linearity_gate", &c->icp.linearity_gate));
  b.push_back(Bind("icp.eps_trans", &c->icp.convergence_eps_trans));
  b.push_back(Bind("icp.eps_rot", &c->icp.convergence_eps_rot));
  b.push_back(Bind("icp.huber_delta", &c->icp.huber_delta));

  b.push_back(Bind("pfilter.theta_p", &c->pfilter.theta_p));
  b.push_back(Bind("pfilter.r_min", &c->pfilter.r_min));
  b.push_back(Bind("pfilter.h_max", &c->pfilter.h_max));
  b.push_back(Bind("pfilter.count_repeated_hits",
                   &c->pfilter.count_repeated_hits));
  b.push_back(Bind("pfilter.max_inherited_hits",
                   &c->pfilter.max_inherited_hits));

  LoopClosureConfig& l = c->loop;
  b.push_back(Bind("loop.num_rings", &l.descriptor.num_rings));
  b.push_back(Bind("loop.num_sectors", &l.descriptor.num_sectors));
  b.push_back(Bind("loop.max_range", &l.descriptor.max_range));
  b.push_back(Bind("loop.distance_threshold", &l.match.distance_threshold));
  b.push_back(Bind("loop.min_separation", &l.match.min_separation));
  b.push_back(Bind("loop.max_candidates", &l.match.max_candidates));
  b.push_back(Bind("loop.cost_gate", &l.cost_gate));
  b.push_back(Bind("loop.inlier_gate", &l.inlier_gate));
  b.push_back(Bind("loop.loop_sigma_xy", &l.loop_sigma_xy));
  b.push_back(Bind("loop.loop_sigma_yaw", &l.loop_sigma_yaw));
  b.push_back(Bind("loop.odometry_sigma_xy", &l.odometry_sigma_xy));
  b.push_back(Bind("loop.odometry_sigma_yaw", &l.odometry_sigma_yaw));
  b.push_back(Bind("loop.max_stored_scans", &l.max_stored_scans));
  b.push_back(Bind("loop.adoption_delay", &l.adoption_delay));
  b.push_back(Bind("loop.verify_max_iterations", &l.icp.max_iterations));
  b.push_back(Bind("loop.verify_max_correspondence_dist",
                   &l.icp.max_correspondence_dist));
  b.push_back(Bind("loop.verify_huber_delta", &l.icp.huber_delta));
  b.push_back(Bind("loop.optimizer_max_iterations",
                   &c->optimizer.max_iterations));
  b.push_back(Bind("loop.optimizer_step_tolerance",
                   &c->optimizer.step_tolerance));
  return b;
}

template <typename Fn>
void Check(Fn&& fn, const char* module) {
  try {
    fn();
  } catch (const std::exception& e) {
    throw ConfigError(std::string(module) + ": " + e.what());
  }
}

}  // namespace

std::string MatchingName(const PipelineConfig& config) {
  if (config.matching == MatchingMode::kScanToMap) return "scan_to_map";
  return "scan_to_frames(" + std::to_string(config.frames) + ")";
}

void PipelineConfig::Validate() const {
  Check([this] { detector.Validate(); }, "detector");
  Check([this] { geometry.Validate(); }, "geometry");
  Check([this] { icp.Validate(); }, "icp");
  Check([this] { pfilter.Validate(); }, "pfilter");
  Check([this] { loop.Validate(); }, "loop");
  if (matching == MatchingMode::kScanToFrames && frames < 1) {
    throw ConfigError("pipeline: scan_to_frames needs n >= 1");
  }
  if (velocity_window < 1) {
    throw ConfigError("pipeline: velocity_window must be >= 1");
  }
  if (optimizer.max_iterations < 1 || !(optimizer.step_tolerance > 0.0)) {
    throw ConfigError("loop: bad optimizer settings");
  }
}

void SetConfigValue(std::string_view key, std::string_view value,
                    PipelineConfig* config) {
  for (const Binding& b : Bindings(config)) {
    if (b.key == key) {
      b.set(value);
      return;
    }
  }
  throw ConfigError("unknown config key: " + std::string(key));
}

PipelineConfig ParseConfig(std::string_view text) {
  boost::property_tree::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(e.what());
  }
  PipelineConfig config;
  for (const auto& [section, entries] : tree) {
    if (entries.empty()) {
      throw ConfigError("config key outside a section: " + section);
    }
    for (const auto& [name, value] : entries) {
      SetConfigValue(section + "." + name, value.data(), &config);
    }
  }
  config.Validate();
  return config;
}

PipelineConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str());
}

std::string FormatConfig(const PipelineConfig& config) {
  PipelineConfig copy = config;
  std::string out;
  std::string section;
  for (const Binding& b : Bindings(&copy)) {
    const auto dot = b.key.find('.');
    const std::string s = b.key.substr(0, dot);
    if (s != section) {
      if (!section.empty()) out += "\n";
      out += "[" + s + "]\n";
      section = s;
    }
    out += b.key.substr(dot + 1) + " = " + b.get() + "\n";
  }
  return out;
}

std::vector<std::string> ConfigKeys() {
  PipelineConfig config;
  std::vector<std::string> keys;
  for (const Binding& b : Bindings(&config)) keys.push_back(b.key);
  return keys;
}

}  // namespace radar_slam
