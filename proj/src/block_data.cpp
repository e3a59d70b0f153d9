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

// Built-in chip tables and default pulse shapes. The tap arrays are exact
// duplicates of data/taps/*.txt (generated once by tools/gen_taps.py and
// pinned by a unit test); hexfloat keeps them bit-identical everywhere.

#include <string>

#include "hybridphy/blocks.hpp"

namespace hphy {

namespace {

std::vector<uint8_t> chips_from_string(const std::string& s) {
  std::vector<uint8_t> row;
  row.reserve(s.size());
  for (char c : s) {
    if (c == ' ') continue;
    row.push_back(c == '1' ? 1 : 0);
  }
  return row;
}

ChipTable build_oqpsk_table() {
  // 2450-band O-QPSK spreading: symbol 0's 32-chip sequence; symbols 1..7 are
  // successive right-rotations by 4 chips; symbols 8..15 invert the
  // odd-indexed chips of 0..7.
  ChipTable t;
  t.rows.resize(16);
  t.rows[0] = chips_from_string("1101 1001 1100 0011 0101 0010 0010 1110");
  for (int s = 1; s < 8; ++s) {
    const auto& prev = t.rows[size_t(s - 1)];
    std::vector<uint8_t> row(32);
    for (int c = 0; c < 32; ++c) row[size_t(c)] = prev[size_t((c + 28) % 32)];
    t.rows[size_t(s)] = std::move(row);
  }
  for (int s = 8; s < 16; ++s) {
    std::vector<uint8_t> row = t.rows[size_t(s - 8)];
    for (size_t c = 1; c < row.size(); c += 2) row[c] ^= 1;
    t.rows[size_t(s)] = std::move(row);
  }
  return t;
}

ChipTable build_bpsk_table() {
  // 868/915-band BPSK spreading: 15-chip sequence and its inverse.
  ChipTable t;
  t.rows.resize(2);
  t.rows[0] = chips_from_string("1111 0101 1001 000");
  t.rows[1] = t.rows[0];
  for (auto& c : t.rows[1]) c ^= 1;
  return t;
}

}  // namespace

const ChipTable& oqpsk_chip_table() {
  static const ChipTable table = build_oqpsk_table();
  return table;
}

const ChipTable& bpsk_chip_table() {
  static const ChipTable table = build_bpsk_table();
  return table;
}

const std::vector<double>& oqpsk_halfsine_taps() {
  static const std::vector<double> taps = {
      0x0.0p+0,
      0x1.940d1d99f50e4p-9,
      0x1.92ce40e6e8150p-8,
      0x1.2c8d186fae2a5p-7,
      0x1.8dd8b25b6d11dp-7,
      0x1.ecb05debb1d32p-7,
      0x1.243f34f4e8c98p-6,
      0x1.5058f83b658f2p-6,
      0x1.7a5fdddebba24p-6,
      0x1.a21190d54f874p-6,
      0x1.c72f6aa81705dp-6,
      0x1.e97ed65482b76p-6,
      0x1.0464d66153347p-5,
      0x1.126f451ed88d0p-5,
      0x1.1ec88e33e70f4p-5,
      0x1.295d3417333fcp-5,
      0x1.321c83a82cc9fp-5,
      0x1.38f8ae8a88eafp-5,
      0x1.3de6e0f0a12aep-5,
      0x1.40df52b241e96p-5,
      0x1.41dd5394efdfep-5,
      0x1.40df52b241e96p-5,
      0x1.3de6e0f0a12aep-5,
      0x1.38f8ae8a88eafp-5,
      0x1.321c83a82cca0p-5,
      0x1.295d3417333fcp-5,
      0x1.1ec88e33e70f5p-5,
      0x1.126f451ed88d1p-5,
      0x1.0464d66153347p-5,
      0x1.e97ed65482b78p-6,
      0x1.c72f6aa81705ep-6,
      0x1.a21190d54f875p-6,
      0x1.7a5fdddebba25p-6,
      0x1.5058f83b658f3p-6,
      0x1.243f34f4e8c99p-6,
      0x1.ecb05debb1d34p-7,
      0x1.8dd8b25b6d120p-7,
      0x1.2c8d186fae2a8p-7,
      0x1.92ce40e6e8155p-8,
      0x1.940d1d99f50f0p-9,
      0x1.6309818299a2ap-58,
  };
  return taps;
}

const std::vector<double>& bpsk_rc_taps() {
  static const std::vector<double> taps = {
      0x1.c37275d94063ep-64,
      0x1.7e4bbe3457edcp-14,
      -0x1.175538eb39710p-63,
      -0x1.0b9b6b8b0a599p-13,
      0x1.62b55c986972fp-63,
      0x1.871e3ab78547ep-13,
      -0x1.d18e09880a66ep-63,
      -0x1.2e3a44a51588fp-12,
      0x1.3f3cd355f8811p-62,
      0x1.f7b672687939bp-12,
      -0x1.d18e09880a66ep-62,
      -0x1.d3bbb36102da2p-11,
      0x1.7471a139a1ebfp-61,
      0x1.0140d5dbc1919p-9,
      -0x1.5d2a872607cd3p-60,
      -0x1.81e140c9a25a6p-8,
      0x1.d18e09880a66ep-59,
      0x1.51a518b06e0f1p-5,
      0x1.f13921a95fd70p-4,
      0x1.a60e5edc8992cp-3,
      0x1.f13921a95fd70p-3,
      0x1.a60e5edc8992cp-3,
      0x1.f13921a95fd70p-4,
      0x1.51a518b06e0f1p-5,
      0x1.d18e09880a66ep-59,
      -0x1.81e140c9a25a6p-8,
      -0x1.5d2a872607cd3p-60,
      0x1.0140d5dbc1919p-9,
      0x1.7471a139a1ebfp-61,
      -0x1.d3bbb36102da2p-11,
      -0x1.d18e09880a66ep-62,
      0x1.f7b672687939bp-12,
      0x1.3f3cd355f8811p-62,
      -0x1.2e3a44a51588fp-12,
      -0x1.d18e09880a66ep-63,
      0x1.871e3ab78547ep-13,
      0x1.62b55c986972fp-63,
      -0x1.0b9b6b8b0a599p-13,
      -0x1.175538eb39710p-63,
      0x1.7e4bbe3457edcp-14,
      0x1.c37275d94063ep-64,
  };
  return taps;
}

}  // namespace hphy
