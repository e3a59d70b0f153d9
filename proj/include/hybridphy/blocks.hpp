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
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "hybridphy/stream.hpp"

namespace hphy {

// The nine unified accelerator blocks, in fixed pipeline order.
enum class BlockKind : uint8_t {
  splitter = 0,
  pn9,
  clock,
  diffenc,
  chip,
  mapper,
  fir,
  zpad,
  offset,
};

inline constexpr int kNumSlots = 9;

const char* to_string(BlockKind kind);
BlockKind block_kind_from_string(const std::string& name);

enum class SplitMode : uint8_t { bits, nibbles };
enum class Constellation : uint8_t { bipolar, oqpsk_interleave, quadrant };

const char* to_string(SplitMode m);
const char* to_string(Constellation c);

// Chip spreading table: one row of 0/1 chips per symbol value, c0 first.
struct ChipTable {
  std::vector<std::vector<uint8_t>> rows;

  size_t row_len() const { return rows.empty() ? 0 : rows[0].size(); }
  void validate() const;  // non-empty, rectangular, chips in {0,1}

  friend bool operator==(const ChipTable&, const ChipTable&) = default;
};

// IEEE 802.15.4 tables: 2450-band O-QPSK (16 symbols x 32 chips) and the
// 868/915-band BPSK spreading sequence (2 symbols x 15 chips).
const ChipTable& oqpsk_chip_table();
const ChipTable& bpsk_chip_table();

inline constexpr uint16_t kPn9DefaultSeed = 0x1ff;  // all-ones

inline constexpr size_t kFirTaps = 41;

// Default 41-tap pulse shapes, normalized to sum(|h|) = 1. Exact duplicates
// of the shipped data/taps/*.txt files (pinned by a unit test).
const std::vector<double>& oqpsk_halfsine_taps();
const std::vector<double>& bpsk_rc_taps();

struct SplitterParams {
  SplitMode mode = SplitMode::bits;
  friend bool operator==(const SplitterParams&, const SplitterParams&) = default;
};
struct Pn9Params {
  uint16_t seed = kPn9DefaultSeed;  // 9-bit, nonzero
  friend bool operator==(const Pn9Params&, const Pn9Params&) = default;
};
struct ClockParams {
  uint8_t start = 0;  // s_{-1}, a quadrant index
  friend bool operator==(const ClockParams&, const ClockParams&) = default;
};
struct DiffencParams {
  friend bool operator==(const DiffencParams&, const DiffencParams&) = default;
};
struct ChipParams {
  ChipTable table;
  friend bool operator==(const ChipParams&, const ChipParams&) = default;
};
struct MapperParams {
  Constellation constellation = Constellation::bipolar;
  unsigned hold = 1;  // each mapped sample is emitted `hold` times
  friend bool operator==(const MapperParams&, const MapperParams&) = default;
};
struct FirParams {
  std::vector<double> taps;  // exactly 41
  bool flush_tail = false;
  friend bool operator==(const FirParams&, const FirParams&) = default;
};
struct ZpadParams {
  unsigned n_zeros = 0;
  unsigned every_m = 1;
  friend bool operator==(const ZpadParams&, const ZpadParams&) = default;
};
struct OffsetParams {
  unsigned delay = 0;
  friend bool operator==(const OffsetParams&, const OffsetParams&) = default;
};

using BlockParams =
    std::variant<SplitterParams, Pn9Params, ClockParams, DiffencParams,
                 ChipParams, MapperParams, FirParams, ZpadParams, OffsetParams>;

// Exact items-out / items-in ratio of an enabled block.
struct Ratio {
  uint64_t num = 1;
  uint64_t den = 1;
};

struct BlockConfig {
  BlockKind kind = BlockKind::splitter;
  bool enabled = false;
  BlockParams params = SplitterParams{};

  // Throws std::invalid_argument when params mismatch kind or are invalid
  // (zero PN9 seed, tap count != 41, every_m == 0, empty chip table, ...).
  void validate() const;

  Ratio rate_ratio() const;  // identity when disabled
  uint32_t output_bits(uint32_t input_bits) const;
};

BlockConfig disabled_block(BlockKind kind);

// Streaming form of a block: process() may be called with arbitrary chunking
// and carries state across calls; finish() drains any tail. Output is
// invariant under chunking.
class BlockEngine {
 public:
  virtual ~BlockEngine() = default;
  virtual Stream process(const Stream& in) = 0;
  virtual Stream finish() { return SymbolStream{{}, 1}; }
};

std::unique_ptr<BlockEngine> make_engine(const BlockConfig& cfg);

// Whole-stream operations (single-call convenience over the engines).
SymbolStream splitter(const SymbolStream& bytes, SplitMode mode);
SymbolStream pn9(const SymbolStream& bits, uint16_t seed = kPn9DefaultSeed);
SymbolStream clock_walk(const SymbolStream& bits, uint8_t start = 0);
SymbolStream diffenc(const SymbolStream& bits);
SymbolStream chip_map(const SymbolStream& symbols, const ChipTable& table);
IQStream mapper(const SymbolStream& symbols, Constellation constellation,
                unsigned hold = 1);
IQStream fir41(const IQStream& in, const std::vector<double>& taps,
               bool flush_tail = false);
IQStream zpad(const IQStream& in, unsigned n_zeros, unsigned every_m);
IQStream offset_q(const IQStream& in, unsigned delay);

}  // namespace hphy
