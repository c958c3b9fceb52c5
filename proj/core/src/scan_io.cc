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

#include "radar_slam/scan_io.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>

namespace radar_slam {
namespace {

template <typename UInt>
void PutLittleEndian(UInt value, std::string* out) {
  for (std::size_t i = 0; i < sizeof(UInt); ++i) {
    out->push_back(static_cast<char>((value >> (8 * i)) & 0xFF));
  }
}

class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  template <typename UInt>
  UInt Get(const char* field) {
    if (bytes_.size() - offset_ < sizeof(UInt)) {
      throw ScanFormatError(field, "truncated file");
    }
    UInt value = 0;
    for (std::size_t i = 0; i < sizeof(UInt); ++i) {
      value |= static_cast<UInt>(static_cast<unsigned char>(bytes_[offset_ + i]))
               << (8 * i);
    }
    offset_ += sizeof(UInt);
    return value;
  }

  double GetDouble(const char* field) {
    return std::bit_cast<double>(Get<std::uint64_t>(field));
  }
  float GetFloat(const char* field) {
    return std::bit_cast<float>(Get<std::uint32_t>(field));
  }
  std::size_t remaining() const { return bytes_.size() - offset_; }

 private:
  std::string_view bytes_;
  std::size_t offset_ = 0;
};

std::string ReadWholeFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ScanFormatError("file", "cannot open " + path.string());
  }
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void WriteWholeFile(const std::filesystem::path& path,
                    const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw std::runtime_error("failed writing " + path.string());
  }
}

template <typename T>
void AppendNumber(T value, std::string* out) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  out->append(buffer, result.ptr);
}

template <typename T>
T ParseNumber(std::string_view text, const char* field) {
  T value{};
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    throw ScanFormatError(field, "cannot parse '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

void WriteScanBinary(const PolarScan& scan, const std::filesystem::path& path) {
  ValidateScan(scan);
  std::string bytes;
  bytes.reserve(32 + 16 * scan.azimuth_angles.size() + 4 * scan.power.size());
  bytes.append(kScanMagic, sizeof(kScanMagic));
  PutLittleEndian<std::uint32_t>(kScanFormatVersion, &bytes);
  PutLittleEndian<std::uint64_t>(static_cast<std::uint64_t>(scan.scan_index),
                                 &bytes);
  PutLittleEndian<std::uint32_t>(static_cast<std::uint32_t>(scan.azimuths),
                                 &bytes);
  PutLittleEndian<std::uint32_t>(static_cast<std::uint32_t>(scan.bins), &bytes);
  PutLittleEndian(std::bit_cast<std::uint64_t>(scan.range_resolution), &bytes);
  for (double angle : scan.azimuth_angles) {
    PutLittleEndian(std::bit_cast<std::uint64_t>(angle), &bytes);
  }
  for (double stamp : scan.azimuth_timestamps) {
    PutLittleEndian(std::bit_cast<std::uint64_t>(stamp), &bytes);
  }
  for (float v : scan.power) {
    PutLittleEndian(std::bit_cast<std::uint32_t>(v), &bytes);
  }
  WriteWholeFile(path, bytes);
}

PolarScan ReadScanBinary(const std::filesystem::path& path) {
  const std::string bytes = ReadWholeFile(path);
  if (bytes.size() < sizeof(kScanMagic) ||
      std::memcmp(bytes.data(), kScanMagic, sizeof(kScanMagic)) != 0) {
    throw ScanFormatError("magic", "not a scan container");
  }
  ByteReader reader(std::string_view(bytes).substr(sizeof(kScanMagic)));
  const auto version = reader.Get<std::uint32_t>("version");
  if (version != kScanFormatVersion) {
    throw ScanFormatError("version",
                          "unsupported version " + std::to_string(version));
  }
  PolarScan scan;
  scan.scan_index =
      static_cast<std::int64_t>(reader.Get<std::uint64_t>("scan_index"));
  const auto azimuths = reader.Get<std::uint32_t>("azimuths");
  const auto bins = reader.Get<std::uint32_t>("bins");
  if (azimuths < kMinAzimuths || azimuths > (1u << 20)) {
    throw ScanFormatError("azimuths", "value " + std::to_string(azimuths) +
                                          " out of range");
  }
  if (bins < kMinBins || bins > (1u << 24)) {
    throw ScanFormatError("bins",
                          "value " + std::to_string(bins) + " out of range");
  }
  scan.azimuths = static_cast<int>(azimuths);
  scan.bins = static_cast<int>(bins);
  scan.range_resolution = reader.GetDouble("range_resolution");

  const std::size_t expected =
      16u * azimuths + 4u * static_cast<std::size_t>(azimuths) * bins;
  if (reader.remaining() != expected) {
    throw ScanFormatError("power", "dimension mismatch: expected " +
                                       std::to_string(expected) +
                                       " payload bytes, found " +
                                       std::to_string(reader.remaining()));
  }
  scan.azimuth_angles.resize(azimuths);
  for (auto& angle : scan.azimuth_angles) {
    angle = reader.GetDouble("azimuth_angles");
  }
  scan.azimuth_timestamps.resize(azimuths);
  for (auto& stamp : scan.azimuth_timestamps) {
    stamp = reader.GetDouble("azimuth_timestamps");
  }
  scan.power.resize(static_cast<std::size_t>(azimuths) * bins);
  for (auto& v : scan.power) {
    v = reader.GetFloat("power");
  }
  ValidateScan(scan);
  return scan;
}

void WriteScanCsv(const PolarScan& scan, const std::filesystem::path& path) {
  ValidateScan(scan);
  std::string text;
  AppendNumber(scan.azimuths, &text);
  text += ',';
  AppendNumber(scan.bins, &text);
  text += ',';
  AppendNumber(scan.range_resolution, &text);
  text += ',';
  AppendNumber(scan.scan_index, &text);
  text += '\n';
  for (int a = 0; a < scan.azimuths; ++a) {
    AppendNumber(scan.azimuth_angles[a], &text);
    text += ',';
    AppendNumber(scan.azimuth_timestamps[a], &text);
    for (float v : scan.row(a)) {
      text += ',';
      AppendNumber(v, &text);
    }
    text += '\n';
  }
  WriteWholeFile(path, text);
}

PolarScan ReadScanCsv(const std::filesystem::path& path) {
  const std::string text = ReadWholeFile(path);
  std::vector<std::string_view> lines;
  {
    std::string_view rest(text);
    while (!rest.empty()) {
      const std::size_t nl = rest.find('\n');
      std::string_view line = rest.substr(0, nl);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!line.empty()) lines.push_back(line);
      if (nl == std::string_view::npos) break;
      rest.remove_prefix(nl + 1);
    }
  }
  if (lines.empty()) {
    throw ScanFormatError("header", "empty file");
  }
  const auto header = SplitCommas(lines.front());
  if (header.size() != 3 && header.size() != 4) {
    throw ScanFormatError("header",
                          "expected A,B,range_resolution[,scan_index]");
  }
  PolarScan scan;
  scan.azimuths = ParseNumber<int>(header[0], "azimuths");
  scan.bins = ParseNumber<int>(header[1], "bins");
  scan.range_resolution = ParseNumber<double>(header[2], "range_resolution");
  if (header.size() == 4) {
    scan.scan_index = ParseNumber<std::int64_t>(header[3], "scan_index");
  }
  if (scan.azimuths < kMinAzimuths) {
    throw ScanFormatError("azimuths", "need at least " +
                                          std::to_string(kMinAzimuths) +
                                          ", got " +
                                          std::to_string(scan.azimuths));
  }
  if (scan.bins < kMinBins) {
    throw ScanFormatError("bins", "need at least " + std::to_string(kMinBins) +
                                      ", got " + std::to_string(scan.bins));
  }
  if (lines.size() - 1 != static_cast<std::size_t>(scan.azimuths)) {
    throw ScanFormatError("azimuths", "header says " +
                                          std::to_string(scan.azimuths) +
                                          " rows, file has " +
                                          std::to_string(lines.size() - 1));
  }
  scan.azimuth_angles.reserve(scan.azimuths);
  scan.azimuth_timestamps.reserve(scan.azimuths);
  scan.power.reserve(static_cast<std::size_t>(scan.azimuths) * scan.bins);
  for (int a = 0; a < scan.azimuths; ++a) {
    const auto fields = SplitCommas(lines[a + 1]);
    if (fields.size() != static_cast<std::size_t>(scan.bins) + 2) {
      throw ScanFormatError("bins", "row " + std::to_string(a) + " has " +
                                        std::to_string(fields.size() - 2) +
                                        " power values, expected " +
                                        std::to_string(scan.bins));
    }
    scan.azimuth_angles.push_back(ParseNumber<double>(fields[0], "azimuth_angles"));
    scan.azimuth_timestamps.push_back(
        ParseNumber<double>(fields[1], "azimuth_timestamps"));
    for (std::size_t b = 2; b < fields.size(); ++b) {
      scan.power.push_back(ParseNumber<float>(fields[b], "power"));
    }
  }
  ValidateScan(scan);
  return scan;
}

void WriteScan(const PolarScan& scan, const std::filesystem::path& path) {
  if (path.extension() == kCsvScanExtension) {
    WriteScanCsv(scan, path);
  } else {
    WriteScanBinary(scan, path);
  }
}

PolarScan ReadScan(const std::filesystem::path& path) {
  if (path.extension() == kCsvScanExtension) {
    return ReadScanCsv(path);
  }
  return ReadScanBinary(path);
}

std::vector<std::filesystem::path> ListScanFiles(
    const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  if (!std::filesystem::is_directory(dir)) {
    return files;
  }
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension();
    const bool csv_scan = ext == kCsvScanExtension &&
                          entry.path().stem().string().starts_with("scan");
    if (ext == kBinaryScanExtension || csv_scan) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace radar_slam
