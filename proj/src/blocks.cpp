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

#include "hybridphy/blocks.hpp"

#include <deque>
#include <stdexcept>

namespace hphy {

const char* to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::splitter: return "splitter";
    case BlockKind::pn9: return "pn9";
    case BlockKind::clock: return "clock";
    case BlockKind::diffenc: return "diffenc";
    case BlockKind::chip: return "chip";
    case BlockKind::mapper: return "mapper";
    case BlockKind::fir: return "fir";
    case BlockKind::zpad: return "zpad";
    case BlockKind::offset: return "offset";
  }
  return "?";
}

BlockKind block_kind_from_string(const std::string& name) {
  for (int k = 0; k < kNumSlots; ++k) {
    BlockKind kind = BlockKind(k);
    if (name == to_string(kind)) return kind;
  }
  throw std::invalid_argument("unknown block kind: " + name);
}

const char* to_string(SplitMode m) {
  return m == SplitMode::bits ? "bits" : "nibbles";
}

const char* to_string(Constellation c) {
  switch (c) {
    case Constellation::bipolar: return "bipolar";
    case Constellation::oqpsk_interleave: return "oqpsk_interleave";
    case Constellation::quadrant: return "quadrant";
  }
  return "?";
}

void ChipTable::validate() const {
  if (rows.empty()) throw std::invalid_argument("chip table: no rows");
  const size_t len = rows[0].size();
  if (len == 0) throw std::invalid_argument("chip table: empty row");
  for (const auto& row : rows) {
    if (row.size() != len)
      throw std::invalid_argument("chip table: ragged rows");
    for (uint8_t c : row)
      if (c > 1) throw std::invalid_argument("chip table: chip not 0/1");
  }
}

// ---------------------------------------------------------------------------
// BlockConfig
// ---------------------------------------------------------------------------

namespace {

template <typename P>
const P& params_as(const BlockConfig& cfg, const char* what) {
  const P* p = std::get_if<P>(&cfg.params);
  if (!p)
    throw std::invalid_argument(std::string("block params mismatch for ") + what);
  return *p;
}

}  // namespace

void BlockConfig::validate() const {
  switch (kind) {
    case BlockKind::splitter:
      params_as<SplitterParams>(*this, "splitter");
      break;
    case BlockKind::pn9: {
      const auto& p = params_as<Pn9Params>(*this, "pn9");
      if (p.seed == 0) throw std::invalid_argument("pn9: zero seed locks up the LFSR");
      if (p.seed > 0x1ff) throw std::invalid_argument("pn9: seed wider than 9 bits");
      break;
    }
    case BlockKind::clock: {
      const auto& p = params_as<ClockParams>(*this, "clock");
      if (p.start > 3) throw std::invalid_argument("clock: start symbol not 2-bit");
      break;
    }
    case BlockKind::diffenc:
      params_as<DiffencParams>(*this, "diffenc");
      break;
    case BlockKind::chip:
      params_as<ChipParams>(*this, "chip").table.validate();
      break;
    case BlockKind::mapper: {
      const auto& p = params_as<MapperParams>(*this, "mapper");
      if (p.hold == 0) throw std::invalid_argument("mapper: hold must be >= 1");
      break;
    }
    case BlockKind::fir: {
      const auto& p = params_as<FirParams>(*this, "fir");
      if (p.taps.size() != kFirTaps)
        throw std::invalid_argument("fir: requires exactly 41 taps");
      break;
    }
    case BlockKind::zpad: {
      const auto& p = params_as<ZpadParams>(*this, "zpad");
      if (p.every_m == 0) throw std::invalid_argument("zpad: every_m must be >= 1");
      break;
    }
    case BlockKind::offset:
      params_as<OffsetParams>(*this, "offset");
      break;
  }
}

Ratio BlockConfig::rate_ratio() const {
  if (!enabled) return {1, 1};
  switch (kind) {
    case BlockKind::splitter:
      return {std::get<SplitterParams>(params).mode == SplitMode::bits ? 8u : 2u, 1};
    case BlockKind::pn9:
    case BlockKind::clock:
    case BlockKind::diffenc:
    case BlockKind::fir:
    case BlockKind::offset:
      return {1, 1};
    case BlockKind::chip:
      return {std::get<ChipParams>(params).table.row_len(), 1};
    case BlockKind::mapper: {
      const auto& p = std::get<MapperParams>(params);
      if (p.constellation == Constellation::oqpsk_interleave)
        return {p.hold, 2};  // one sample per chip pair, held `hold` times
      return {p.hold, 1};
    }
    case BlockKind::zpad: {
      const auto& p = std::get<ZpadParams>(params);
      return {uint64_t(p.every_m) + p.n_zeros, p.every_m};
    }
  }
  return {1, 1};
}

uint32_t BlockConfig::output_bits(uint32_t input_bits) const {
  if (!enabled) return input_bits;
  switch (kind) {
    case BlockKind::splitter:
      return std::get<SplitterParams>(params).mode == SplitMode::bits ? 1 : 4;
    case BlockKind::pn9:
    case BlockKind::diffenc:
      return 1;
    case BlockKind::clock:
      return 2;
    case BlockKind::chip:
      return 1;
    case BlockKind::mapper:
    case BlockKind::fir:
    case BlockKind::zpad:
    case BlockKind::offset:
      return 32;
  }
  return input_bits;
}

BlockConfig disabled_block(BlockKind kind) {
  BlockConfig cfg;
  cfg.kind = kind;
  cfg.enabled = false;
  switch (kind) {
    case BlockKind::splitter: cfg.params = SplitterParams{}; break;
    case BlockKind::pn9: cfg.params = Pn9Params{}; break;
    case BlockKind::clock: cfg.params = ClockParams{}; break;
    case BlockKind::diffenc: cfg.params = DiffencParams{}; break;
    case BlockKind::chip: cfg.params = ChipParams{ChipTable{{{0}, {1}}}}; break;
    case BlockKind::mapper: cfg.params = MapperParams{}; break;
    case BlockKind::fir:
      cfg.params = FirParams{std::vector<double>(kFirTaps, 0.0), false};
      break;
    case BlockKind::zpad: cfg.params = ZpadParams{}; break;
    case BlockKind::offset: cfg.params = OffsetParams{}; break;
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Engines
// ---------------------------------------------------------------------------

namespace {

const SymbolStream& expect_symbols(const Stream& in, uint8_t width,
                                   const char* who) {
  const SymbolStream* sym = std::get_if<SymbolStream>(&in);
  if (!sym)
    throw std::invalid_argument(std::string(who) + ": expected a symbol stream");
  if (width != 0 && sym->width != width)
    throw std::invalid_argument(std::string(who) + ": wrong symbol width");
  return *sym;
}

const IQStream& expect_iq(const Stream& in, const char* who) {
  const IQStream* iq = std::get_if<IQStream>(&in);
  if (!iq)
    throw std::invalid_argument(std::string(who) + ": expected an IQ stream");
  return *iq;
}

class IdentityEngine final : public BlockEngine {
 public:
  Stream process(const Stream& in) override { return in; }
};

class SplitterEngine final : public BlockEngine {
 public:
  explicit SplitterEngine(SplitMode mode) : mode_(mode) {}

  Stream process(const Stream& in) override {
    const SymbolStream& bytes = expect_symbols(in, 8, "splitter");
    SymbolStream out;
    if (mode_ == SplitMode::bits) {
      out.width = 1;
      out.items.reserve(bytes.items.size() * 8);
      for (uint8_t b : bytes.items)
        for (int k = 0; k < 8; ++k)  // least-significant bit first
          out.items.push_back((b >> k) & 1);
    } else {
      out.width = 4;
      out.items.reserve(bytes.items.size() * 2);
      for (uint8_t b : bytes.items) {  // least-significant nibble first
        out.items.push_back(b & 0x0f);
        out.items.push_back(uint8_t(b >> 4));
      }
    }
    return out;
  }

 private:
  SplitMode mode_;
};

class Pn9Engine final : public BlockEngine {
 public:
  explicit Pn9Engine(uint16_t seed) : lfsr_(seed) {}

  Stream process(const Stream& in) override {
    const SymbolStream& bits = expect_symbols(in, 1, "pn9");
    SymbolStream out;
    out.width = 1;
    out.items.reserve(bits.items.size());
    for (uint8_t b : bits.items) {
      out.items.push_back(uint8_t(b ^ (lfsr_ & 1)));
      // x^9 + x^5 + 1: feedback = bit0 ^ bit5, shifted in at the top
      uint16_t fb = uint16_t((lfsr_ ^ (lfsr_ >> 5)) & 1);
      lfsr_ = uint16_t((lfsr_ >> 1) | (fb << 8));
    }
    return out;
  }

 private:
  uint16_t lfsr_;
};

class ClockEngine final : public BlockEngine {
 public:
  explicit ClockEngine(uint8_t start) : state_(start) {}

  Stream process(const Stream& in) override {
    const SymbolStream& bits = expect_symbols(in, 1, "clock");
    SymbolStream out;
    out.width = 2;
    out.items.reserve(bits.items.size());
    for (uint8_t b : bits.items) {
      state_ = uint8_t((state_ + (b ? 1 : 3)) & 3);  // +1 ccw, -1 cw
      out.items.push_back(state_);
    }
    return out;
  }

 private:
  uint8_t state_;
};

class DiffencEngine final : public BlockEngine {
 public:
  Stream process(const Stream& in) override {
    const SymbolStream& bits = expect_symbols(in, 1, "diffenc");
    SymbolStream out;
    out.width = 1;
    out.items.reserve(bits.items.size());
    for (uint8_t b : bits.items) {
      prev_ = uint8_t(b ^ prev_);
      out.items.push_back(prev_);
    }
    return out;
  }

 private:
  uint8_t prev_ = 0;
};

class ChipEngine final : public BlockEngine {
 public:
  explicit ChipEngine(ChipTable table) : table_(std::move(table)) {}

  Stream process(const Stream& in) override {
    const SymbolStream& symbols = expect_symbols(in, 0, "chip");
    SymbolStream out;
    out.width = 1;
    out.items.reserve(symbols.items.size() * table_.row_len());
    for (uint8_t s : symbols.items) {
      if (s >= table_.rows.size())
        throw std::invalid_argument("chip: symbol outside table domain");
      const auto& row = table_.rows[s];
      out.items.insert(out.items.end(), row.begin(), row.end());
    }
    return out;
  }

 private:
  ChipTable table_;
};

double bipolar_level(uint8_t chip) { return chip ? 1.0 : -1.0; }

class MapperEngine final : public BlockEngine {
 public:
  MapperEngine(Constellation c, unsigned hold) : constellation_(c), hold_(hold) {}

  Stream process(const Stream& in) override {
    IQStream out;
    switch (constellation_) {
      case Constellation::bipolar: {
        const SymbolStream& bits = expect_symbols(in, 1, "mapper[bipolar]");
        out.reserve(bits.items.size() * hold_);
        for (uint8_t b : bits.items) emit(out, {bipolar_level(b), 0.0});
        break;
      }
      case Constellation::oqpsk_interleave: {
        const SymbolStream& chips = expect_symbols(in, 1, "mapper[oqpsk]");
        out.reserve(chips.items.size() / 2 * hold_ + hold_);
        for (uint8_t c : chips.items) {
          if (!have_even_) {
            even_chip_ = c;
            have_even_ = true;
          } else {
            emit(out, {bipolar_level(even_chip_), bipolar_level(c)});
            have_even_ = false;
          }
        }
        break;
      }
      case Constellation::quadrant: {
        const SymbolStream& sym = expect_symbols(in, 2, "mapper[quadrant]");
        static constexpr Sample kQuadrants[4] = {
            {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
        out.reserve(sym.items.size() * hold_);
        for (uint8_t s : sym.items) emit(out, kQuadrants[s & 3]);
        break;
      }
    }
    return out;
  }

  Stream finish() override {
    if (have_even_)
      throw std::invalid_argument("mapper[oqpsk]: odd chip count, unpaired chip");
    return BlockEngine::finish();
  }

 private:
  void emit(IQStream& out, Sample s) {
    for (unsigned k = 0; k < hold_; ++k) out.push_back(s);
  }

  Constellation constellation_;
  unsigned hold_;
  bool have_even_ = false;
  uint8_t even_chip_ = 0;
};

class FirEngine final : public BlockEngine {
 public:
  FirEngine(std::vector<double> taps, bool flush_tail)
      : taps_(std::move(taps)), flush_tail_(flush_tail), hist_(taps_.size()) {}

  Stream process(const Stream& in) override {
    const IQStream& iq = expect_iq(in, "fir");
    IQStream out;
    out.reserve(iq.size());
    for (const Sample& x : iq) out.push_back(step(x));
    return out;
  }

  Stream finish() override {
    if (!flush_tail_) return BlockEngine::finish();
    IQStream tail;
    tail.reserve(taps_.size() - 1);
    for (size_t k = 0; k + 1 < taps_.size(); ++k) tail.push_back(step({0.0, 0.0}));
    return tail;
  }

 private:
  Sample step(Sample x) {
    head_ = (head_ + 1) % hist_.size();
    hist_[head_] = x;
    double acc_i = 0.0, acc_q = 0.0;
    // fixed accumulation order: oldest-independent, tap index ascending
    for (size_t k = 0; k < taps_.size(); ++k) {
      const Sample& h = hist_[(head_ + hist_.size() - k) % hist_.size()];
      acc_i += taps_[k] * h.i;
      acc_q += taps_[k] * h.q;
    }
    return {acc_i, acc_q};
  }

  std::vector<double> taps_;
  bool flush_tail_;
  std::vector<Sample> hist_;  // zero initial history
  size_t head_ = 0;
};

class ZpadEngine final : public BlockEngine {
 public:
  ZpadEngine(unsigned n_zeros, unsigned every_m)
      : n_zeros_(n_zeros), every_m_(every_m) {}

  Stream process(const Stream& in) override {
    const IQStream& iq = expect_iq(in, "zpad");
    IQStream out;
    out.reserve(iq.size() + iq.size() / every_m_ * n_zeros_ + n_zeros_);
    for (const Sample& x : iq) {
      out.push_back(x);
      if (++phase_ == every_m_) {
        out.insert(out.end(), n_zeros_, Sample{0.0, 0.0});
        phase_ = 0;
      }
    }
    return out;
  }

 private:
  unsigned n_zeros_;
  unsigned every_m_;
  unsigned phase_ = 0;
};

class OffsetEngine final : public BlockEngine {
 public:
  explicit OffsetEngine(unsigned delay) : qline_(delay, 0.0) {}

  Stream process(const Stream& in) override {
    const IQStream& iq = expect_iq(in, "offset");
    IQStream out;
    out.reserve(iq.size());
    for (const Sample& x : iq) {
      if (qline_.empty()) {
        out.push_back(x);  // delay 0 is the identity
      } else {
        out.push_back({x.i, qline_.front()});
        qline_.pop_front();
        qline_.push_back(x.q);
      }
    }
    return out;
  }

  Stream finish() override {
    // delayed Q tail, with a silent I rail
    IQStream tail;
    tail.reserve(qline_.size());
    for (double q : qline_) tail.push_back({0.0, q});
    qline_.clear();
    return tail;
  }

 private:
  std::deque<double> qline_;
};

}  // namespace

std::unique_ptr<BlockEngine> make_engine(const BlockConfig& cfg) {
  cfg.validate();
  if (!cfg.enabled) return std::make_unique<IdentityEngine>();
  switch (cfg.kind) {
    case BlockKind::splitter:
      return std::make_unique<SplitterEngine>(
          std::get<SplitterParams>(cfg.params).mode);
    case BlockKind::pn9:
      return std::make_unique<Pn9Engine>(std::get<Pn9Params>(cfg.params).seed);
    case BlockKind::clock:
      return std::make_unique<ClockEngine>(std::get<ClockParams>(cfg.params).start);
    case BlockKind::diffenc:
      return std::make_unique<DiffencEngine>();
    case BlockKind::chip:
      return std::make_unique<ChipEngine>(std::get<ChipParams>(cfg.params).table);
    case BlockKind::mapper: {
      const auto& p = std::get<MapperParams>(cfg.params);
      return std::make_unique<MapperEngine>(p.constellation, p.hold);
    }
    case BlockKind::fir: {
      const auto& p = std::get<FirParams>(cfg.params);
      return std::make_unique<FirEngine>(p.taps, p.flush_tail);
    }
    case BlockKind::zpad: {
      const auto& p = std::get<ZpadParams>(cfg.params);
      return std::make_unique<ZpadEngine>(p.n_zeros, p.every_m);
    }
    case BlockKind::offset:
      return std::make_unique<OffsetEngine>(std::get<OffsetParams>(cfg.params).delay);
  }
  throw std::logic_error("make_engine: unreachable");
}

// ---------------------------------------------------------------------------
// Whole-stream operations
// ---------------------------------------------------------------------------

namespace {

BlockConfig enabled_block(BlockKind kind, BlockParams params) {
  BlockConfig cfg;
  cfg.kind = kind;
  cfg.enabled = true;
  cfg.params = std::move(params);
  return cfg;
}

Stream run_one(const BlockConfig& cfg, const Stream& in) {
  auto engine = make_engine(cfg);
  Stream out = engine->process(in);
  stream_append(out, engine->finish());
  return out;
}

}  // namespace

SymbolStream splitter(const SymbolStream& bytes, SplitMode mode) {
  return std::get<SymbolStream>(
      run_one(enabled_block(BlockKind::splitter, SplitterParams{mode}), bytes));
}

SymbolStream pn9(const SymbolStream& bits, uint16_t seed) {
  return std::get<SymbolStream>(
      run_one(enabled_block(BlockKind::pn9, Pn9Params{seed}), bits));
}

SymbolStream clock_walk(const SymbolStream& bits, uint8_t start) {
  return std::get<SymbolStream>(
      run_one(enabled_block(BlockKind::clock, ClockParams{start}), bits));
}

SymbolStream diffenc(const SymbolStream& bits) {
  return std::get<SymbolStream>(
      run_one(enabled_block(BlockKind::diffenc, DiffencParams{}), bits));
}

SymbolStream chip_map(const SymbolStream& symbols, const ChipTable& table) {
  return std::get<SymbolStream>(
      run_one(enabled_block(BlockKind::chip, ChipParams{table}), symbols));
}

IQStream mapper(const SymbolStream& symbols, Constellation constellation,
                unsigned hold) {
  return std::get<IQStream>(run_one(
      enabled_block(BlockKind::mapper, MapperParams{constellation, hold}),
      symbols));
}

IQStream fir41(const IQStream& in, const std::vector<double>& taps,
               bool flush_tail) {
  return std::get<IQStream>(
      run_one(enabled_block(BlockKind::fir, FirParams{taps, flush_tail}), in));
}

IQStream zpad(const IQStream& in, unsigned n_zeros, unsigned every_m) {
  return std::get<IQStream>(
      run_one(enabled_block(BlockKind::zpad, ZpadParams{n_zeros, every_m}), in));
}

IQStream offset_q(const IQStream& in, unsigned delay) {
  return std::get<IQStream>(
      run_one(enabled_block(BlockKind::offset, OffsetParams{delay}), in));
}

}  // namespace hphy
