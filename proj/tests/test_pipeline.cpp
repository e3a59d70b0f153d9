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

#include <set>

#include <stdexcept>

#include "doctest.h"
#include "hybridphy/pipeline.hpp"
#include "hybridphy/util.hpp"

using namespace hphy;

namespace {

std::set<BlockKind> enabled_kinds(const PipelineConfig& cfg) {
  std::set<BlockKind> kinds;
  for (int slot : cfg.enabled_slots()) kinds.insert(BlockKind(slot - 1));
  return kinds;
}

}  // namespace

TEST_CASE("standard presets carry the published rate table") {
  const auto& presets = standard_presets();
  REQUIRE(presets.size() == 6);

  CHECK(presets[0].band == "2450 MHz");
  CHECK(presets[0].modulation == Modulation::oqpsk);
  CHECK(presets[0].data_rate == 31250);
  CHECK(presets[0].symbol_rate == 62500);
  CHECK(presets[0].sample_rate == 4000000);

  CHECK(presets[1].band == "915 MHz");
  CHECK(presets[1].sample_rate == 2000000);
  CHECK(presets[2].band == "780 MHz");
  CHECK(presets[2].sample_rate == 2000000);

  CHECK(presets[3].band == "868 MHz");
  CHECK(presets[3].modulation == Modulation::bpsk);
  CHECK(presets[3].data_rate == 2500);
  CHECK(presets[3].symbol_rate == 20000);
  CHECK(presets[3].sample_rate == 1200000);

  CHECK(presets[4].data_rate == 5000);
  CHECK(presets[4].symbol_rate == 40000);
  CHECK(presets[4].sample_rate == 2400000);

  CHECK(presets[5].modulation == Modulation::gfsk);
  CHECK(presets[5].data_rate == 12500);
  CHECK(presets[5].symbol_rate == 100000);
  CHECK(presets[5].sample_rate == 400000);

  CHECK_THROWS_AS(preset_info(0), std::invalid_argument);
  CHECK_THROWS_AS(preset_info(7), std::invalid_argument);
}

TEST_CASE("preset block usage matches the per-modulation table") {
  CHECK(enabled_kinds(build_preset(1)) ==
        std::set<BlockKind>{BlockKind::splitter, BlockKind::chip,
                            BlockKind::mapper, BlockKind::fir, BlockKind::zpad,
                            BlockKind::offset});
  CHECK(enabled_kinds(build_preset(2)) == enabled_kinds(build_preset(1)));
  CHECK(enabled_kinds(build_preset(3)) == enabled_kinds(build_preset(1)));
  CHECK(enabled_kinds(build_preset(4)) ==
        std::set<BlockKind>{BlockKind::splitter, BlockKind::diffenc,
                            BlockKind::chip, BlockKind::mapper, BlockKind::fir});
  CHECK(enabled_kinds(build_preset(5)) == enabled_kinds(build_preset(4)));
  CHECK(enabled_kinds(build_preset(6)) ==
        std::set<BlockKind>{BlockKind::splitter, BlockKind::pn9,
                            BlockKind::clock, BlockKind::mapper});
}

TEST_CASE("rate profile endpoints equal the preset table exactly") {
  for (const StandardPreset& preset : standard_presets()) {
    const PipelineConfig cfg = build_preset(preset.id);
    const RateProfile profile = rate_profile(cfg, preset);
    CHECK(profile.boundaries[0].items_per_s == preset.data_rate);
    CHECK(profile.boundaries[0].item_bits == 8);
    CHECK(profile.boundaries[9].items_per_s == preset.sample_rate);
    // boundary after the splitter carries the symbol rate
    CHECK(profile.boundaries[1].items_per_s == preset.symbol_rate);
  }
}

TEST_CASE("rate profile bit rate is monotone non-decreasing") {
  for (const StandardPreset& preset : standard_presets()) {
    const RateProfile profile = rate_profile(build_preset(preset.id), preset);
    for (int b = 0; b < 9; ++b) {
      CHECK(profile.bit_rate(b) <= profile.bit_rate(b + 1));
    }
  }
}

TEST_CASE("rate profile rejects a mismatched preset") {
  const PipelineConfig cfg = build_preset(1);
  CHECK_THROWS_AS(rate_profile(cfg, preset_info(4)), std::invalid_argument);
}

TEST_CASE("run_pipeline output lengths follow the configured multipliers") {
  SplitMix64 rng(0x9a9e);
  const std::vector<uint8_t> packet = random_packet(23, rng.next());

  // 2450 OQPSK: 2 nibbles x 32 chips / 2 x 4 = 128 samples per byte, plus the
  // offset tail (2 samples at 4 MHz)
  const Stream p1 = run_pipeline(build_preset(1), packet);
  CHECK(stream_size(p1) == packet.size() * 128 + 2);

  const Stream p2 = run_pipeline(build_preset(2), packet);
  CHECK(stream_size(p2) == packet.size() * 64 + 1);

  // BPSK: 8 bits x 15 chips x 4 samples = 480 samples per byte, no tail
  const Stream p4 = run_pipeline(build_preset(4), packet);
  CHECK(stream_size(p4) == packet.size() * 480);

  // GFSK: 8 bits x 4 samples = 32 samples per byte
  const Stream p6 = run_pipeline(build_preset(6), packet);
  CHECK(stream_size(p6) == packet.size() * 32);

  SUBCASE("preset outputs are IQ and amplitude-bounded") {
    for (const Stream* s : {&p1, &p2, &p4, &p6}) {
      const IQStream& iq = std::get<IQStream>(*s);
      for (const Sample& x : iq) {
        CHECK(std::abs(x.i) <= 1.0);
        CHECK(std::abs(x.q) <= 1.0);
      }
    }
  }
}

TEST_CASE("run_pipeline: degenerate and error cases") {
  PipelineConfig all_off;
  const std::vector<uint8_t> packet = {1, 2, 3, 250};
  const Stream out = run_pipeline(all_off, packet);
  CHECK(std::get<SymbolStream>(out).items == packet);
  CHECK(std::get<SymbolStream>(out).width == 8);

  CHECK_THROWS_AS(run_pipeline(build_preset(1), {}), std::invalid_argument);
}

TEST_CASE("run_pipeline is deterministic") {
  const std::vector<uint8_t> packet = random_packet(40, 7);
  const Stream a = run_pipeline(build_preset(1), packet);
  const Stream b = run_pipeline(build_preset(1), packet);
  CHECK(stream_digest(a) == stream_digest(b));
}
