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

#include "hybridphy/pipeline.hpp"

#include <stdexcept>

namespace hphy {

const char* to_string(Modulation m) {
  switch (m) {
    case Modulation::oqpsk: return "OQPSK";
    case Modulation::bpsk: return "BPSK";
    case Modulation::gfsk: return "GFSK";
  }
  return "?";
}

const std::array<StandardPreset, 6>& standard_presets() {
  static const std::array<StandardPreset, 6> presets = {{
      {1, "2450 MHz", Modulation::oqpsk, 31250, 62500, 4000000},
      {2, "915 MHz", Modulation::oqpsk, 31250, 62500, 2000000},
      {3, "780 MHz", Modulation::oqpsk, 31250, 62500, 2000000},
      {4, "868 MHz", Modulation::bpsk, 2500, 20000, 1200000},
      {5, "915 MHz", Modulation::bpsk, 5000, 40000, 2400000},
      {6, "920.8-928 MHz", Modulation::gfsk, 12500, 100000, 400000},
  }};
  return presets;
}

const StandardPreset& preset_info(int id) {
  if (id < 1 || id > 6) throw std::invalid_argument("unknown preset id");
  return standard_presets()[size_t(id - 1)];
}

PipelineConfig::PipelineConfig() {
  for (int k = 0; k < kNumSlots; ++k)
    stages[size_t(k)] = disabled_block(BlockKind(k));
}

void PipelineConfig::validate() const {
  for (int k = 0; k < kNumSlots; ++k) {
    if (stages[size_t(k)].kind != BlockKind(k))
      throw std::invalid_argument("pipeline: stage out of unified order");
    stages[size_t(k)].validate();
  }
}

std::vector<int> PipelineConfig::enabled_slots() const {
  std::vector<int> slots;
  for (int k = 0; k < kNumSlots; ++k)
    if (stages[size_t(k)].enabled) slots.push_back(k + 1);
  return slots;
}

bool PipelineConfig::slot_enabled(int slot) const {
  if (slot < 1 || slot > kNumSlots) return false;
  return stages[size_t(slot - 1)].enabled;
}

PipelineConfig build_preset(int id) { return build_preset(id, PresetOverrides{}); }

PipelineConfig build_preset(int id, const PresetOverrides& overrides) {
  const StandardPreset& info = preset_info(id);
  PipelineConfig cfg;
  cfg.preset = info;

  auto enable = [&cfg](BlockKind kind, BlockParams params) {
    BlockConfig& stage = cfg.stages[size_t(kind)];
    stage.enabled = true;
    stage.params = std::move(params);
  };

  switch (info.modulation) {
    case Modulation::oqpsk: {
      // splitter, chip, mapper, fir, zpad, offset
      // 31250 B/s ->x2 62500 sym/s ->x32 2 Mchip/s ->x1/2 1 Msps ->zpad-> DAC
      const unsigned upsample = unsigned(info.sample_rate / 1000000);  // 4 or 2
      enable(BlockKind::splitter, SplitterParams{SplitMode::nibbles});
      enable(BlockKind::chip,
             ChipParams{overrides.chip_table.value_or(oqpsk_chip_table())});
      enable(BlockKind::mapper,
             MapperParams{Constellation::oqpsk_interleave, 1});
      enable(BlockKind::fir,
             FirParams{overrides.fir_taps.value_or(oqpsk_halfsine_taps()), false});
      enable(BlockKind::zpad, ZpadParams{upsample - 1, 1});
      // Q delayed by one chip period: samples-per-chip at the DAC rate
      enable(BlockKind::offset, OffsetParams{upsample / 2});
      cfg.name = id == 1 ? "oqpsk-2450" : (id == 2 ? "oqpsk-915" : "oqpsk-780");
      break;
    }
    case Modulation::bpsk: {
      // splitter, diffenc, chip, mapper, fir
      // bits ->x15 chips -> bipolar, 4 samples per chip -> fir
      enable(BlockKind::splitter, SplitterParams{SplitMode::bits});
      enable(BlockKind::diffenc, DiffencParams{});
      enable(BlockKind::chip,
             ChipParams{overrides.chip_table.value_or(bpsk_chip_table())});
      enable(BlockKind::mapper, MapperParams{Constellation::bipolar, 4});
      enable(BlockKind::fir,
             FirParams{overrides.fir_taps.value_or(bpsk_rc_taps()), false});
      cfg.name = id == 4 ? "bpsk-868" : "bpsk-915";
      break;
    }
    case Modulation::gfsk: {
      // splitter, pn9, clock, mapper; 4 samples per symbol via mapper hold
      enable(BlockKind::splitter, SplitterParams{SplitMode::bits});
      enable(BlockKind::pn9, Pn9Params{kPn9DefaultSeed});
      enable(BlockKind::clock, ClockParams{0});
      enable(BlockKind::mapper, MapperParams{Constellation::quadrant, 4});
      cfg.name = "gfsk-920";
      break;
    }
  }

  cfg.validate();
  return cfg;
}

Stream run_pipeline(const PipelineConfig& cfg,
                    const std::vector<uint8_t>& packet) {
  cfg.validate();
  if (packet.empty()) throw std::invalid_argument("run_pipeline: empty packet");

  Stream s = make_bytes(packet);
  for (const BlockConfig& stage : cfg.stages) {
    if (!stage.enabled) continue;
    auto engine = make_engine(stage);
    Stream out = engine->process(s);
    stream_append(out, engine->finish());
    s = std::move(out);
  }
  return s;
}

RateProfile rate_profile(const PipelineConfig& cfg,
                         const StandardPreset& preset) {
  cfg.validate();
  if (cfg.preset && cfg.preset->id != preset.id)
    throw std::invalid_argument("rate_profile: config built for another preset");

  RateProfile profile;
  uint64_t rate = preset.data_rate;
  uint32_t bits = 8;
  profile.boundaries[0] = {rate, bits};
  for (int k = 0; k < kNumSlots; ++k) {
    const BlockConfig& stage = cfg.stages[size_t(k)];
    const Ratio r = stage.rate_ratio();
    const uint64_t scaled = rate * r.num;
    if (scaled % r.den != 0)
      throw std::invalid_argument("rate_profile: non-integral boundary rate");
    rate = scaled / r.den;
    bits = stage.output_bits(bits);
    profile.boundaries[size_t(k + 1)] = {rate, bits};
  }
  return profile;
}

}  // namespace hphy
