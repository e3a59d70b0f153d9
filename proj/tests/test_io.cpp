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

#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "hybridphy/io.hpp"
#include "hybridphy/util.hpp"

using namespace hphy;
namespace fs = std::filesystem;

namespace {

std::string tmp_path(const char* name) {
  return (fs::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("iq files: int16 scaling convention") {
  CHECK(quantize_i16(1.0) == 32767);
  CHECK(quantize_i16(-1.0) == -32767);
  CHECK(quantize_i16(0.0) == 0);
  CHECK(quantize_i16(2.0) == 32767);  // clamped

  const std::string path = tmp_path("hphy_iq_i16.iq");
  const IQStream s = {{1.0, -1.0}, {0.5, 0.25}};
  write_iq(path, s, IqFormat::ci16le, 4000000, 1);
  const IqFile back = read_iq(path);
  CHECK(back.header.format == IqFormat::ci16le);
  CHECK(back.header.sample_rate == 4000000);
  CHECK(back.header.preset_id == 1);
  REQUIRE(back.samples.size() == 2);
  CHECK(back.samples[0].i == 1.0);
  CHECK(back.samples[0].q == -1.0);
  fs::remove(path);
}

TEST_CASE("iq files: quantized streams round-trip exactly") {
  SplitMix64 rng(0x101a);
  IQStream s;
  for (int k = 0; k < 500; ++k)
    s.push_back({rng.next_unit() * 2 - 1, rng.next_unit() * 2 - 1});
  const IQStream q = quantize_stream_i16(s);

  const std::string path = tmp_path("hphy_iq_rt.iq");
  write_iq(path, q, IqFormat::ci16le, 2000000, 0);
  const IqFile back = read_iq(path);
  REQUIRE(back.samples.size() == q.size());
  for (size_t n = 0; n < q.size(); ++n) {
    CHECK(back.samples[n].i == q[n].i);
    CHECK(back.samples[n].q == q[n].q);
  }
  fs::remove(path);
}

TEST_CASE("iq files: float32 round-trips within 1 ulp") {
  SplitMix64 rng(0xf32);
  IQStream s;
  for (int k = 0; k < 500; ++k)
    s.push_back({rng.next_unit() * 2 - 1, rng.next_unit() * 2 - 1});

  const std::string path = tmp_path("hphy_iq_f32.iq");
  write_iq(path, s, IqFormat::cf32le, 400000, 6);
  const IqFile back = read_iq(path);
  REQUIRE(back.samples.size() == s.size());
  for (size_t n = 0; n < s.size(); ++n) {
    // one float32 rounding step
    CHECK(back.samples[n].i == double(float(s[n].i)));
    CHECK(std::abs(back.samples[n].i - s[n].i) <= std::ldexp(1.0, -24));
    CHECK(std::abs(back.samples[n].q - s[n].q) <= std::ldexp(1.0, -24));
  }
  fs::remove(path);
}

TEST_CASE("iq files: empty stream round-trips") {
  const std::string path = tmp_path("hphy_iq_empty.iq");
  write_iq(path, {}, IqFormat::cf32le, 1000, 0);
  CHECK(read_iq(path).samples.empty());
  fs::remove(path);
}

TEST_CASE("iq files: corruption is detected") {
  const std::string path = tmp_path("hphy_iq_bad.iq");
  write_iq(path, IQStream(8, {0.5, 0.5}), IqFormat::cf32le, 1000, 0);

  SUBCASE("bad magic") {
    std::fstream f(path, std::ios::binary | std::ios::in | std::ios::out);
    f.seekp(0);
    f.write("XXXX", 4);
    f.close();
    CHECK_THROWS_WITH_AS(read_iq(path), doctest::Contains("magic"),
                         std::runtime_error);
  }
  SUBCASE("count mismatch") {
    fs::resize_file(path, fs::file_size(path) - 8);
    CHECK_THROWS_WITH_AS(read_iq(path), doctest::Contains("count"),
                         std::runtime_error);
  }
  SUBCASE("truncated header") {
    fs::resize_file(path, 10);
    CHECK_THROWS_WITH_AS(read_iq(path), doctest::Contains("truncated"),
                         std::runtime_error);
  }
  fs::remove(path);
}

TEST_CASE("tap and chip-table files") {
  const std::string path = tmp_path("hphy_taps.txt");
  write_taps(path, oqpsk_halfsine_taps());
  const std::vector<double> back = load_taps(path);
  REQUIRE(back.size() == kFirTaps);
  for (size_t k = 0; k < back.size(); ++k)
    CHECK(back[k] == oqpsk_halfsine_taps()[k]);  // %.17g round-trips exactly
  fs::remove(path);

  const std::string cpath = tmp_path("hphy_chips.txt");
  write_chip_table(cpath, bpsk_chip_table());
  CHECK(load_chip_table(cpath) == bpsk_chip_table());
  fs::remove(cpath);
}

TEST_CASE("shipped data files equal the built-in defaults") {
  const std::string dir = default_data_dir();
  CHECK(load_taps(dir + "/taps/oqpsk_halfsine_41.txt") == oqpsk_halfsine_taps());
  CHECK(load_taps(dir + "/taps/bpsk_rc_41.txt") == bpsk_rc_taps());
  CHECK(load_chip_table(dir + "/chips/oqpsk_16x32.txt") == oqpsk_chip_table());
  CHECK(load_chip_table(dir + "/chips/bpsk_2x15.txt") == bpsk_chip_table());

  const CostModel shipped = load_cost_model(dir + "/costs/default.cfg");
  const CostModel builtin = default_cost_model();
  CHECK(shipped.cpu_hz == builtin.cpu_hz);
  CHECK(shipped.irq_latency_cycles == builtin.irq_latency_cycles);
  CHECK(shipped.cache_op_cycles == builtin.cache_op_cycles);
  CHECK(shipped.dma_setup_cycles == builtin.dma_setup_cycles);
  CHECK(shipped.loop_cycles == builtin.loop_cycles);
  CHECK(shipped.init_cycles == builtin.init_cycles);
  CHECK(shipped.end_cycles == builtin.end_cycles);
  CHECK(shipped.copy_cycles_per_byte == builtin.copy_cycles_per_byte);
  CHECK(shipped.dsp_cycles_per_item == builtin.dsp_cycles_per_item);
}

TEST_CASE("shipped preset file mirrors the built-in presets") {
  const std::vector<PipelineConfig> configs =
      load_pipeline_file(default_data_dir() + "/presets.cfg");
  REQUIRE(configs.size() == 6);
  const std::vector<uint8_t> packet = random_packet(16, 0x99);
  for (int id = 1; id <= 6; ++id) {
    const PipelineConfig& loaded = configs[size_t(id - 1)];
    REQUIRE(loaded.preset.has_value());
    CHECK(loaded.preset->id == id);
    const PipelineConfig builtin = build_preset(id);
    CHECK(loaded.enabled_slots() == builtin.enabled_slots());
    CHECK(stream_equal(run_pipeline(loaded, packet),
                       run_pipeline(builtin, packet)));
    CHECK(rate_profile(loaded, *loaded.preset).boundaries ==
          rate_profile(builtin, *builtin.preset).boundaries);
  }
}

TEST_CASE("cost model file round-trips") {
  CostModel cm = default_cost_model();
  cm.cpu_hz = 1500000000;
  cm.dsp_cycles_per_item[BlockKind::fir] = 999;
  const std::string path = tmp_path("hphy_cost.cfg");
  write_cost_model(path, cm);
  const CostModel back = load_cost_model(path);
  CHECK(back.cpu_hz == cm.cpu_hz);
  CHECK(back.dsp_cost(BlockKind::fir) == 999);
  CHECK(back.dsp_cost(BlockKind::chip) == cm.dsp_cost(BlockKind::chip));
  fs::remove(path);
}

TEST_CASE("golden corpus: pristine vectors verify, perturbed tables fail") {
  const std::string dir = default_data_dir();
  const auto vectors = load_golden_manifest(dir + "/golden/manifest.cfg");
  REQUIRE(vectors.size() >= 3);

  for (const GoldenVector& vec : vectors) {
    const GoldenCheck check = verify_golden(vec, dir);
    CHECK(check.pass);
    CHECK(check.digest_ok);
  }

  SUBCASE("float tolerance zero still passes on fixed-point vectors") {
    for (const GoldenVector& vec : vectors) {
      if (vec.tolerance != 0.0) continue;
      GoldenCheck check = verify_golden(vec, dir);
      CHECK(check.pass);
      CHECK(check.max_abs_error == 0.0);
    }
  }

  SUBCASE("one flipped chip-table bit breaks at least one vector") {
    ChipTable tweaked = oqpsk_chip_table();
    tweaked.rows[3][17] ^= 1;
    PresetOverrides overrides;
    overrides.chip_table = tweaked;
    const PipelineConfig bad = build_preset(1, overrides);
    bool any_fail = false;
    for (const GoldenVector& vec : vectors) {
      if (vec.preset_id != 1) continue;
      const GoldenCheck check = verify_golden(vec, dir, &bad);
      any_fail = any_fail || !check.pass;
    }
    CHECK(any_fail);
  }
}

TEST_CASE("csv writer is deterministic and shape-checked") {
  const std::string path = tmp_path("hphy_test.csv");
  write_csv(path, {"a", "b"}, {{"1", "2"}, {"3", "4"}});
  std::ifstream f(path);
  std::string content((std::istreambuf_iterator<char>(f)),
                      std::istreambuf_iterator<char>());
  CHECK(content == "a,b\n1,2\n3,4\n");
  CHECK_THROWS_AS(write_csv(path, {"a", "b"}, {{"1"}}), std::invalid_argument);
  fs::remove(path);
}

TEST_CASE("manifest isolates the timestamp to one field") {
  const std::string path = tmp_path("hphy_manifest.txt");
  write_manifest(path, {{"command", "simulate"}, {"preset", "1"}});
  const auto kv = load_kv(path);
  CHECK(kv.at("command") == "simulate");
  CHECK(kv.at("preset") == "1");
  CHECK(kv.count("timestamp") == 1);
  fs::remove(path);
}
