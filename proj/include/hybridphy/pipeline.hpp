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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hybridphy/blocks.hpp"
#include "hybridphy/stream.hpp"

namespace hphy {

enum class Modulation : uint8_t { oqpsk, bpsk, gfsk };

const char* to_string(Modulation m);

// One row of the supported-standards table: six IEEE 802.15.4 PHY variants.
struct StandardPreset {
  int id = 0;  // 1..6
  std::string band;
  Modulation modulation = Modulation::oqpsk;
  uint64_t data_rate = 0;    // bytes/s into the pipeline
  uint64_t symbol_rate = 0;  // symbols/s after the splitter
  uint64_t sample_rate = 0;  // complex samples/s at the DAC

  friend bool operator==(const StandardPreset&, const StandardPreset&) = default;
};

const std::array<StandardPreset, 6>& standard_presets();
const StandardPreset& preset_info(int id);  // throws on unknown id

// The unified pipeline: nine fixed slots (Splitter, PN9, Clock, Diffenc,
// Chip, Mapper, FIR, Zpad, Offset), each enabled or disabled.
struct PipelineConfig {
  std::array<BlockConfig, kNumSlots> stages;
  std::string name;
  std::optional<StandardPreset> preset;

  PipelineConfig();

  void validate() const;                 // slot order + per-block params
  std::vector<int> enabled_slots() const;  // 1-based slot indices
  bool slot_enabled(int slot) const;       // slot in 1..9
  BlockConfig& stage(int slot) { return stages[size_t(slot - 1)]; }
  const BlockConfig& stage(int slot) const { return stages[size_t(slot - 1)]; }
};

// Optional substitutions for the data-file-backed preset parameters.
struct PresetOverrides {
  std::optional<std::vector<double>> fir_taps;
  std::optional<ChipTable> chip_table;
};

PipelineConfig build_preset(int id);
PipelineConfig build_preset(int id, const PresetOverrides& overrides);

// Feeds a packet through every enabled stage. The result is an IQStream for
// all six presets; degenerate configs (e.g. everything disabled) re-emit the
// input symbols unchanged.
Stream run_pipeline(const PipelineConfig& cfg,
                    const std::vector<uint8_t>& packet);

// Items/s and item width at each of the ten inter-stage boundaries.
// Boundary 0 is the packet-buffer output (bytes), boundary 9 feeds the DAC.
struct RateBoundary {
  uint64_t items_per_s = 0;
  uint32_t item_bits = 8;

  friend bool operator==(const RateBoundary&, const RateBoundary&) = default;
};

struct RateProfile {
  std::array<RateBoundary, kNumSlots + 1> boundaries;

  uint64_t bit_rate(int boundary) const {
    const RateBoundary& b = boundaries[size_t(boundary)];
    return b.items_per_s * b.item_bits;
  }
};

RateProfile rate_profile(const PipelineConfig& cfg,
                         const StandardPreset& preset);

}  // namespace hphy
