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

#ifndef RADAR_SLAM_SRC_CSV_TABLE_H_
#define RADAR_SLAM_SRC_CSV_TABLE_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace radar_slam::internal {

// Rows of a numeric CSV file. Blank lines are skipped and a first line that
// does not parse as numbers is treated as a header. Every row must have
// `columns` fields; violations throw std::runtime_error naming `what`.
std::vector<std::vector<double>> ReadNumericCsv(
    const std::filesystem::path& path, std::size_t columns,
    std::string_view what);

// Shortest decimal text that parses back to the same double.
std::string FormatDouble(double value);

void WriteTextFile(const std::filesystem::path& path, const std::string& text);

}  // namespace radar_slam::internal

#endif  // RADAR_SLAM_SRC_CSV_TABLE_H_
