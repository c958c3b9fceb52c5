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

#ifndef RADAR_SLAM_SCAN_IO_H_
#define RADAR_SLAM_SCAN_IO_H_

#include <filesystem>
#include <vector>

#include "radar_slam/scan.h"

namespace radar_slam {

// Binary container layout (all little-endian):
//
//   offset  size      field
//   0       4         magic "RSCN"
//   4       4         uint32 version (= 1)
//   8       8         int64 scan_index
//   16      4         uint32 azimuths (A)
//   20      4         uint32 bins (B)
//   24      8         float64 range_resolution
//   32      8*A       float64 azimuth_angles
//   ...     8*A       float64 azimuth_timestamps
//   ...     4*A*B     float32 power, row-major by azimuth
//
// The file must end exactly after the power grid.
inline constexpr char kScanMagic[4] = {'R', 'S', 'C', 'N'};
inline constexpr std::uint32_t kScanFormatVersion = 1;
inline constexpr const char* kBinaryScanExtension = ".rscan";
inline constexpr const char* kCsvScanExtension = ".csv";

void WriteScanBinary(const PolarScan& scan, const std::filesystem::path& path);
PolarScan ReadScanBinary(const std::filesystem::path& path);

// CSV layout: a header line "A,B,range_resolution,scan_index" followed by A
// lines "angle,timestamp,p_0,...,p_{B-1}". Numbers are printed with enough
// digits to round-trip exactly. The scan_index field is optional on read and
// defaults to 0.
void WriteScanCsv(const PolarScan& scan, const std::filesystem::path& path);
PolarScan ReadScanCsv(const std::filesystem::path& path);

// Dispatch on extension: ".csv" reads/writes CSV, anything else binary.
void WriteScan(const PolarScan& scan, const std::filesystem::path& path);
PolarScan ReadScan(const std::filesystem::path& path);

// Scan files in `dir`, sorted by filename: every ".rscan" file plus ".csv"
// files whose stem starts with "scan".
std::vector<std::filesystem::path> ListScanFiles(
    const std::filesystem::path& dir);

}  // namespace radar_slam

#endif  // RADAR_SLAM_SCAN_IO_H_
