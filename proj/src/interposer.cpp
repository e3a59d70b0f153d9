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

#include "hybridphy/interposer.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hphy {

void SplitPlan::validate(const PipelineConfig& cfg) const {
  if (is_none()) return;
  if (sw_first < 1 || sw_last > kNumSlots || sw_first > sw_last)
    throw std::invalid_argument("split plan: bad slot range");
  if (!cfg.slot_enabled(sw_first) || !cfg.slot_enabled(sw_last))
    throw std::invalid_argument("split plan: segment endpoint is a disabled stage");
  if (buffer_items == 0)
    throw std::invalid_argument("split plan: buffer_items must be >= 1");
}

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::irq: return "irq";
    case EventKind::dma_start: return "dma_start";
    case EventKind::dma_done: return "dma_done";
    case EventKind::cache_flush: return "cache_flush";
    case EventKind::cache_invalidate: return "cache_invalidate";
  }
  return "?";
}

const char* to_string(Direction d) {
  return d == Direction::to_cpu ? "to_cpu" : "from_cpu";
}

const char* to_string(CpuAction a) {
  switch (a) {
    case CpuAction::poll: return "poll";
    case CpuAction::accept_read: return "accept_read";
    case CpuAction::accept_write: return "accept_write";
    case CpuAction::process: return "process";
    case CpuAction::finish: return "finish";
  }
  return "?";
}

std::string format_event(const TransferEvent& ev) {
  std::ostringstream os;
  os << ev.timestamp << ' ' << to_string(ev.kind) << ' '
     << to_string(ev.direction) << ' ' << ev.size_items << ' ' << ev.buffer
     << ' ' << (ev.last ? 1 : 0);
  return os.str();
}

TransferEvent parse_event(const std::string& line) {
  std::istringstream is(line);
  TransferEvent ev;
  std::string kind, dir;
  int last = 0;
  if (!(is >> ev.timestamp >> kind >> dir >> ev.size_items >> ev.buffer >> last))
    throw std::invalid_argument("event log: malformed line: " + line);
  bool found = false;
  for (EventKind k :
       {EventKind::irq, EventKind::dma_start, EventKind::dma_done,
        EventKind::cache_flush, EventKind::cache_invalidate}) {
    if (kind == to_string(k)) {
      ev.kind = k;
      found = true;
      break;
    }
  }
  if (!found) throw std::invalid_argument("event log: unknown kind: " + kind);
  if (dir == "to_cpu")
    ev.direction = Direction::to_cpu;
  else if (dir == "from_cpu")
    ev.direction = Direction::from_cpu;
  else
    throw std::invalid_argument("event log: unknown direction: " + dir);
  ev.last = last != 0;
  return ev;
}

void write_event_log(const std::string& path,
                     const std::vector<TransferEvent>& events) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  for (const auto& ev : events) f << format_event(ev) << '\n';
}

std::vector<TransferEvent> read_event_log(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::vector<TransferEvent> events;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    events.push_back(parse_event(line));
  }
  return events;
}

// ---------------------------------------------------------------------------
// InterposerProtocol
// ---------------------------------------------------------------------------

namespace {

struct BoundaryScale {
  uint64_t num = 1;  // DAC ticks per `den` boundary items
  uint64_t den = 1;
};

BoundaryScale boundary_scale(const PipelineConfig& cfg, int boundary_after_slot) {
  if (!cfg.preset) return {1, 1};
  const RateProfile profile = rate_profile(cfg, *cfg.preset);
  const uint64_t rate = profile.boundaries[size_t(boundary_after_slot)].items_per_s;
  if (rate == 0) return {1, 1};
  return {cfg.preset->sample_rate, rate};
}

uint64_t scale_ticks(uint64_t items, const BoundaryScale& s) {
  return uint64_t((__int128(items) * s.num) / s.den);
}

}  // namespace

InterposerProtocol::InterposerProtocol(const PipelineConfig& cfg,
                                       const SplitPlan& plan,
                                       const std::vector<uint8_t>& packet)
    : plan_(plan) {
  cfg.validate();
  plan.validate(cfg);
  if (plan.is_none())
    throw std::invalid_argument("interposer protocol: plan has no software segment");
  if (packet.empty())
    throw std::invalid_argument("interposer protocol: empty packet");

  // Upstream hardware section: everything before the software segment.
  Stream s = make_bytes(packet);
  uint32_t bits = 8;
  for (int slot = 1; slot < plan.sw_first; ++slot) {
    const BlockConfig& stage = cfg.stage(slot);
    if (!stage.enabled) continue;
    auto engine = make_engine(stage);
    Stream out = engine->process(s);
    stream_append(out, engine->finish());
    s = std::move(out);
    bits = stage.output_bits(bits);
  }
  boundary_stream_ = std::move(s);
  total_in_items_ = stream_size(boundary_stream_);
  in_bits_ = bits;

  for (int slot = plan.sw_first; slot <= plan.sw_last; ++slot) {
    const BlockConfig& stage = cfg.stage(slot);
    if (!stage.enabled) continue;
    sw_engines_.push_back(make_engine(stage));
    sw_kinds_.push_back(stage.kind);
    bits = stage.output_bits(bits);
  }
  out_bits_ = bits;

  for (int slot = plan.sw_last + 1; slot <= kNumSlots; ++slot) {
    const BlockConfig& stage = cfg.stage(slot);
    if (!stage.enabled) continue;
    down_engines_.push_back(make_engine(stage));
  }

  const BoundaryScale in_scale = boundary_scale(cfg, plan.sw_first - 1);
  in_tick_num_ = in_scale.num;
  in_tick_den_ = in_scale.den;
  const BoundaryScale out_scale = boundary_scale(cfg, plan.sw_last);
  out_tick_num_ = out_scale.num;
  out_tick_den_ = out_scale.den;

  hw_fill_out_buffers(true);
}

uint64_t InterposerProtocol::ticks_at_in_boundary() const {
  return scale_ticks(in_consumed_, {in_tick_num_, in_tick_den_});
}

uint64_t InterposerProtocol::ticks_at_out_boundary() const {
  return scale_ticks(out_written_, {out_tick_num_, out_tick_den_});
}

void InterposerProtocol::emit(EventKind kind, Direction dir, uint64_t size,
                              int buffer, bool last) {
  const uint64_t ts =
      dir == Direction::to_cpu ? ticks_at_in_boundary() : ticks_at_out_boundary();
  events_.push_back(TransferEvent{ts, kind, dir, size, buffer, last});
}

void InterposerProtocol::hw_fill_out_buffers(bool) {
  // Upstream blocks run far faster than any stream rate: a freed buffer
  // refills as long as boundary items remain.
  for (int b = 0; b < 2; ++b) {
    BufferSlot& slot = state_.out_buffers[size_t(b)];
    if (slot.full || slot.cpu_owned) continue;
    const uint64_t remaining = total_in_items_ - upstream_pos_;
    if (remaining == 0) break;
    const uint64_t n = std::min<uint64_t>(plan_.buffer_items, remaining);
    slot.items = n;
    slot.full = true;
    slot.last = (upstream_pos_ + n == total_in_items_);
    upstream_pos_ += n;
    state_.pending_irq = PendingIrq::read_ready;
    emit(EventKind::irq, Direction::to_cpu, n, b, slot.last);
  }
}

CpuAction InterposerProtocol::next_action() const {
  if (state_.done) throw std::logic_error("protocol already finished");
  if (read_in_hand_) return CpuAction::process;
  if (!pending_writes_.empty()) return CpuAction::accept_write;
  for (const BufferSlot& slot : state_.out_buffers)
    if (slot.full) return CpuAction::accept_read;
  if (last_processed_) return CpuAction::finish;
  throw std::logic_error("protocol stalled: no legal action");
}

std::vector<TransferEvent> InterposerProtocol::step(CpuAction action) {
  const size_t events_before = events_.size();
  switch (action) {
    case CpuAction::poll:
      if (state_.done) throw std::logic_error("poll after finish");
      break;

    case CpuAction::accept_read: {
      if (state_.done) throw std::logic_error("accept_read after finish");
      if (!pending_writes_.empty())
        throw std::logic_error(
            "accept_read rejected: CPU has pending data to write");
      if (read_in_hand_)
        throw std::logic_error("accept_read rejected: unprocessed read in hand");
      // oldest filled buffer, round-robin fill order
      int chosen = -1;
      for (int b = 0; b < 2; ++b) {
        const int idx = (read_rr_ + b) % 2;
        if (state_.out_buffers[size_t(idx)].full) {
          chosen = idx;
          break;
        }
      }
      if (chosen < 0)
        throw std::logic_error("accept_read rejected: no filled buffer");
      BufferSlot& slot = state_.out_buffers[size_t(chosen)];
      slot.cpu_owned = true;
      const uint64_t n = slot.items;
      const bool last = slot.last;
      read_in_hand_ = stream_slice(boundary_stream_, in_consumed_, n);
      read_in_hand_last_ = last;
      in_consumed_ += n;
      emit(EventKind::dma_start, Direction::to_cpu, n, chosen, last);
      emit(EventKind::dma_done, Direction::to_cpu, n, chosen, last);
      emit(EventKind::cache_invalidate, Direction::to_cpu, n, chosen, last);
      // ownership returns to the pipeline at dma_done; refill immediately
      slot.full = false;
      slot.cpu_owned = false;
      slot.items = 0;
      slot.last = false;
      read_rr_ = (chosen + 1) % 2;
      chunks_.push_back(ChunkWork{n, last, {}, {}, {}});
      if (!std::any_of(state_.out_buffers.begin(), state_.out_buffers.end(),
                       [](const BufferSlot& s) { return s.full; }))
        state_.pending_irq = PendingIrq::none;
      hw_fill_out_buffers(false);
      if (last) state_.last_flag = true;
      break;
    }

    case CpuAction::process: {
      if (!read_in_hand_)
        throw std::logic_error("process rejected: nothing read");
      ChunkWork& work = chunks_.back();
      Stream cur = std::move(*read_in_hand_);
      read_in_hand_.reset();
      for (size_t i = 0; i < sw_engines_.size(); ++i) {
        work.dsp_items.emplace_back(sw_kinds_[i], stream_size(cur));
        cur = sw_engines_[i]->process(cur);
      }
      if (read_in_hand_last_) {
        // close the software chain: each tail flows through the later blocks
        for (size_t i = 0; i < sw_engines_.size(); ++i) {
          Stream tail = sw_engines_[i]->finish();
          for (size_t j = i + 1; j < sw_engines_.size(); ++j) {
            if (stream_empty(tail)) break;
            // tail items are ordinary inputs to the downstream software blocks
            for (auto& [kind, count] : work.dsp_items)
              if (kind == sw_kinds_[j]) count += stream_size(tail);
            tail = sw_engines_[j]->process(tail);
          }
          stream_append(cur, tail);
        }
        last_processed_ = true;
      }
      // chunk the processed output for write-back
      uint64_t pos = 0;
      const uint64_t total = stream_size(cur);
      while (pos < total) {
        const uint64_t n = std::min<uint64_t>(plan_.buffer_items, total - pos);
        pending_writes_.push_back(stream_slice(cur, pos, n));
        pos += n;
      }
      break;
    }

    case CpuAction::accept_write: {
      if (pending_writes_.empty())
        throw std::logic_error("accept_write rejected: nothing pending");
      Stream chunk = std::move(pending_writes_.front());
      pending_writes_.pop_front();
      const uint64_t n = stream_size(chunk);
      const int b = write_rr_;
      write_rr_ = (write_rr_ + 1) % 2;
      BufferSlot& slot = state_.in_buffers[size_t(b)];
      slot.cpu_owned = true;
      slot.items = n;
      emit(EventKind::cache_flush, Direction::from_cpu, n, b, false);
      out_written_ += n;
      emit(EventKind::dma_start, Direction::from_cpu, n, b, false);
      emit(EventKind::dma_done, Direction::from_cpu, n, b, false);
      // pipeline side drains the buffer through the downstream section
      slot.cpu_owned = false;
      slot.full = false;
      slot.items = 0;
      Stream produced = std::move(chunk);
      for (auto& engine : down_engines_) produced = engine->process(produced);
      const uint64_t delta = stream_size(produced);
      stream_append(output_, produced);
      if (!chunks_.empty()) {
        chunks_.back().write_items.push_back(n);
        chunks_.back().ring_deltas.push_back(delta);
      }
      total_out_items_ += n;
      emit(EventKind::irq, Direction::from_cpu, n, b, false);  // buffer freed
      state_.pending_irq = PendingIrq::write_ready;
      if (last_processed_ && pending_writes_.empty()) {
        // downstream hardware tail (no CPU involvement)
        Stream tail = SymbolStream{{}, 1};
        for (size_t i = 0; i < down_engines_.size(); ++i) {
          Stream t = down_engines_[i]->finish();
          for (size_t j = i + 1; j < down_engines_.size(); ++j) {
            if (stream_empty(t)) break;
            t = down_engines_[j]->process(t);
          }
          stream_append(tail, t);
        }
        hardware_tail_items_ = stream_size(tail);
        stream_append(output_, tail);
      }
      break;
    }

    case CpuAction::finish: {
      if (!last_processed_ || !pending_writes_.empty() || read_in_hand_)
        throw std::logic_error("finish rejected: transfers still outstanding");
      if (state_.done) throw std::logic_error("finish after finish");
      // a zero-output software segment still closes the downstream section
      if (total_out_items_ == 0) {
        Stream tail = SymbolStream{{}, 1};
        for (size_t i = 0; i < down_engines_.size(); ++i) {
          Stream t = down_engines_[i]->finish();
          for (size_t j = i + 1; j < down_engines_.size(); ++j) {
            if (stream_empty(t)) break;
            t = down_engines_[j]->process(t);
          }
          stream_append(tail, t);
        }
        hardware_tail_items_ = stream_size(tail);
        stream_append(output_, tail);
      }
      state_.done = true;
      break;
    }
  }
  return std::vector<TransferEvent>(events_.begin() + long(events_before),
                                    events_.end());
}

HybridResult split_execute(const PipelineConfig& cfg, const SplitPlan& plan,
                           const std::vector<uint8_t>& packet) {
  cfg.validate();
  plan.validate(cfg);

  HybridResult result;
  if (plan.is_none()) {
    result.output = run_pipeline(cfg, packet);
    return result;
  }

  InterposerProtocol protocol(cfg, plan, packet);
  uint64_t steps = 0;
  // liveness bound: each chunk takes a handful of actions
  const uint64_t bound =
      16 + 8 * (stream_size(protocol.output()) + protocol.boundary_in_items() /
                                                     plan.buffer_items +
                protocol.boundary_in_items());
  while (!protocol.done()) {
    protocol.step(protocol.next_action());
    if (++steps > bound)
      throw std::logic_error("split_execute: protocol failed to terminate");
  }

  result.output = protocol.output();
  result.events = protocol.events();
  result.chunks = protocol.chunks();
  result.hardware_tail_items = protocol.hardware_tail_items();
  result.boundary_in_items = protocol.boundary_in_items();
  result.boundary_out_items = protocol.boundary_out_items();
  result.boundary_in_bits = protocol.boundary_in_bits();
  result.boundary_out_bits = protocol.boundary_out_bits();
  result.protocol_steps = steps;
  return result;
}

// ---------------------------------------------------------------------------
// Ring buffer
// ---------------------------------------------------------------------------

RingBuffer::RingBuffer(size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("ring: capacity must be >= 1");
}

size_t RingBuffer::push(size_t n) {
  const size_t accepted = std::min(n, capacity_ - level_);
  level_ += accepted;
  return accepted;
}

size_t RingBuffer::pop(size_t n) {
  if (n > 0 && level_ == 0) underrun_ = true;
  const size_t popped = std::min(n, level_);
  level_ -= popped;
  return popped;
}

std::vector<size_t> ring_buffer_feed(const std::vector<RingOp>& ops,
                                     size_t capacity, bool* underrun) {
  RingBuffer ring(capacity);
  std::vector<size_t> occupancy;
  occupancy.reserve(ops.size());
  for (const RingOp& op : ops) {
    if (op.type == RingOp::Type::produce)
      ring.push(op.count);
    else
      ring.pop(op.count);
    occupancy.push_back(ring.level());
  }
  if (underrun) *underrun = ring.underrun();
  return occupancy;
}

}  // namespace hphy
