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

#ifndef RADAR_SLAM_TESTS_SUPPORT_PROCESS_H_
#define RADAR_SLAM_TESTS_SUPPORT_PROCESS_H_

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "support/test_util.h"

namespace radar_slam {
namespace testing {

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr, interleaved
};

inline std::string ShellQuote(const std::string& arg) {
  std::string out = "'";
  for (char c : arg) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

// Runs `args` through the shell, capturing output into `scratch`/cmd.log.
inline CommandResult RunCommand(const std::vector<std::string>& args,
                                const std::filesystem::path& scratch) {
  std::string command;
  for (const std::string& a : args) command += ShellQuote(a) + " ";
  const auto log = scratch / "cmd.log";
  command += "> " + ShellQuote(log.string()) + " 2>&1";
  const int status = std::system(command.c_str());
  CommandResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.output = ReadFile(log);
  return result;
}

}  // namespace testing
}  // namespace radar_slam

#endif  // RADAR_SLAM_TESTS_SUPPORT_PROCESS_H_
