/*
 * Copyright 2026 The hybridphy Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hybridphy/pipeline.hpp"
#include "hybridphy/stream.hpp"
#include "hybridphy/timing.hpp"

namespace hphy {

// ---------------------------------------------------------------------------
// IQ sample files. Little-endian on every host. Layout (see README):
//   0  char[4]  magic "HPIQ"
//   4  u16      version (1)
//   6  u16      format (1 = complex float32, 2 = complex int16)
//   8  u64      sample_rate_hz
//  16  u32      preset_id (0 = none)
//  20  u32      reserved (0)
//  24  u64      item_count
//  32  payload  item_count * 2 * (4 or 2) bytes, I then Q per sample
// ---------------------------------------------------------------------------

enum class IqFormat : uint16_t { cf32le = 1, ci16le = 2 };

const char* to_string(IqFormat f);
IqFormat iq_format_from_string(const std::string& name);

struct IqFileHeader {
  uint16_t version = 1;
  IqFormat format = IqFormat::cf32le;
  uint64_t sample_rate = 0;
  uint32_t preset_id = 0;
  uint64_t item_count = 0;
};

struct IqFile {
  IqFileHeader header;
  IQStream samples;
};

// int16 scaling: symmetric +/-32767, round half away from zero.
int16_t quantize_i16(double v);
IQStream quantize_stream_i16(const IQStream& in);

void write_iq(const std::string& path, const IQStream& samples, IqFormat format,
              uint64_t sample_rate, uint32_t preset_id);
IqFile read_iq(const std::string& path);  // throws on bad magic/format/count

// Digest over the file's payload bytes, as recorded in the golden manifest.
uint64_t iq_payload_digest(const std::string& path);

// ---------------------------------------------------------------------------
// Plain-text inputs.
// ---------------------------------------------------------------------------

// One real per line, exactly 41 lines.
std::vector<double> load_taps(const std::string& path);
void write_taps(const std::string& path, const std::vector<double>& taps);

// One row of 0/1 characters per symbol, c0 leftmost.
ChipTable load_chip_table(const std::string& path);
void write_chip_table(const std::string& path, const ChipTable& table);

// `key = value` lines, '#' comments, blank lines ignored.
std::map<std::string, std::string> load_kv(const std::string& path);

CostModel load_cost_model(const std::string& path);
void write_cost_model(const std::string& path, const CostModel& cost);

// Pipeline/preset definitions: `[preset N]` / `[pipeline NAME]` sections in
// the same key-value syntax (see data/presets.cfg). Chip tables and taps may
// be named built-ins or file paths relative to the config file.
std::vector<PipelineConfig> load_pipeline_file(const std::string& path);
PipelineConfig load_pipeline_config(const std::string& path,
                                    const std::string& name);

std::vector<uint8_t> read_packet(const std::string& path);
void write_packet(const std::string& path, const std::vector<uint8_t>& bytes);

// (rate, size) CSV with a header row; used for fit inputs.
std::vector<std::pair<double, double>> load_points_csv(const std::string& path);

// ---------------------------------------------------------------------------
// Golden-vector corpus.
// ---------------------------------------------------------------------------

struct GoldenVector {
  std::string name;
  std::string packet_file;  // relative to the manifest
  int preset_id = 0;
  std::string iq_file;
  double tolerance = 0.0;  // max-abs-error; 0 means exact
  uint64_t payload_digest = 0;
};

std::vector<GoldenVector> load_golden_manifest(const std::string& path);

struct GoldenCheck {
  std::string name;
  bool pass = false;
  bool digest_ok = false;
  double max_abs_error = 0.0;
  std::string message;
};

// Modulates the vector's packet with its preset (or a caller-substituted
// config) and compares against the stored IQ file within tolerance.
GoldenCheck verify_golden(const GoldenVector& vec, const std::string& data_dir,
                          const PipelineConfig* override_cfg = nullptr);

// ---------------------------------------------------------------------------
// Run artifacts.
// ---------------------------------------------------------------------------

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

void write_run_report(const std::string& path, const RunReport& report);

// Reproducibility manifest: resolved configuration as sorted key=value lines;
// the wall-clock timestamp is isolated to the single `timestamp =` field.
void write_manifest(const std::string& path,
                    const std::map<std::string, std::string>& resolved);

std::string default_data_dir();  // compile-time default, overridable by flag

}  // namespace hphy
