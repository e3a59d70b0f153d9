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
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hybridphy/pipeline.hpp"
#include "hybridphy/stream.hpp"

namespace hphy {

// Which contiguous run of unified-pipeline slots executes in software.
// Slots are 1-based; both endpoints must be enabled stages. 0/0 means no
// software segment (pure hardware).
struct SplitPlan {
  int sw_first = 0;
  int sw_last = 0;
  uint64_t buffer_items = 256;  // interposer buffer capacity, in boundary items

  bool is_none() const { return sw_first == 0 && sw_last == 0; }
  void validate(const PipelineConfig& cfg) const;
};

enum class EventKind : uint8_t {
  irq,
  dma_start,
  dma_done,
  cache_flush,
  cache_invalidate,
};

enum class Direction : uint8_t { to_cpu, from_cpu };

const char* to_string(EventKind k);
const char* to_string(Direction d);

// One interposer-side event. The timestamp is the logical waveform position
// (cumulative items crossed at that boundary, scaled to DAC sample ticks);
// cycle-accurate times are assigned by the timing layer.
struct TransferEvent {
  uint64_t timestamp = 0;
  EventKind kind = EventKind::irq;
  Direction direction = Direction::to_cpu;
  uint64_t size_items = 0;
  int buffer = -1;  // double-buffer slot 0/1, -1 when not applicable
  bool last = false;

  friend bool operator==(const TransferEvent&, const TransferEvent&) = default;
};

std::string format_event(const TransferEvent& ev);
TransferEvent parse_event(const std::string& line);
void write_event_log(const std::string& path,
                     const std::vector<TransferEvent>& events);
std::vector<TransferEvent> read_event_log(const std::string& path);

// ---------------------------------------------------------------------------
// CPU-side protocol state machine.
//
// The interposer raises an IRQ edge whenever a toward-CPU buffer fills (or
// carries the last flag) and whenever a from-CPU buffer frees up. The CPU
// loop polls status, accepts a read only when it has no pending data to
// write, processes read data eagerly, writes pending chunks as buffers free,
// and finishes after the last chunk is written back.
// ---------------------------------------------------------------------------

enum class CpuAction : uint8_t { poll, accept_read, accept_write, process, finish };

const char* to_string(CpuAction a);

struct BufferSlot {
  uint64_t items = 0;
  bool full = false;
  bool cpu_owned = false;
  bool last = false;
};

enum class PendingIrq : uint8_t { none, read_ready, write_ready };

struct InterposerState {
  std::array<BufferSlot, 2> out_buffers;  // toward CPU
  std::array<BufferSlot, 2> in_buffers;   // from CPU
  bool enabled = true;
  PendingIrq pending_irq = PendingIrq::none;
  bool last_flag = false;  // last toward-CPU chunk has been delivered
  bool done = false;
};

// Drives the software segment of a split plan over one packet. Owns the
// upstream boundary stream, the double buffers, the software block engines
// and the downstream hardware section.
class InterposerProtocol {
 public:
  InterposerProtocol(const PipelineConfig& cfg, const SplitPlan& plan,
                     const std::vector<uint8_t>& packet);

  const InterposerState& state() const { return state_; }
  bool done() const { return state_.done; }

  // Returns the action the §-style CPU loop would take next.
  CpuAction next_action() const;

  // Applies one CPU action; illegal actions throw std::logic_error.
  // Returned events are also appended to the cumulative log.
  std::vector<TransferEvent> step(CpuAction action);

  const std::vector<TransferEvent>& events() const { return events_; }
  const Stream& output() const { return output_; }

  // Per-read-chunk replay data for the timing layer.
  struct ChunkWork {
    uint64_t read_items = 0;
    bool last = false;
    // items fed into each software block for this chunk (pipeline order)
    std::vector<std::pair<BlockKind, uint64_t>> dsp_items;
    // from-CPU chunk sizes (boundary items) and the final-output items each
    // one contributes after the downstream hardware section
    std::vector<uint64_t> write_items;
    std::vector<uint64_t> ring_deltas;
  };
  const std::vector<ChunkWork>& chunks() const { return chunks_; }

  // Final-output items emitted by the downstream hardware tail after the
  // last write (filter/offset flush), with no CPU involvement.
  uint64_t hardware_tail_items() const { return hardware_tail_items_; }

  uint64_t boundary_in_items() const { return total_in_items_; }
  uint64_t boundary_out_items() const { return total_out_items_; }
  uint32_t boundary_in_bits() const { return in_bits_; }
  uint32_t boundary_out_bits() const { return out_bits_; }

 private:
  void hw_fill_out_buffers(bool initial);
  void close_downstream();
  void emit(EventKind kind, Direction dir, uint64_t size, int buffer, bool last);
  uint64_t ticks_at_in_boundary() const;
  uint64_t ticks_at_out_boundary() const;

  SplitPlan plan_;
  InterposerState state_;

  Stream boundary_stream_;  // upstream hardware output (with tails)
  uint64_t upstream_pos_ = 0;
  uint64_t total_in_items_ = 0;
  uint64_t total_out_items_ = 0;
  uint32_t in_bits_ = 8;
  uint32_t out_bits_ = 8;

  std::vector<std::unique_ptr<BlockEngine>> sw_engines_;
  std::vector<BlockKind> sw_kinds_;
  std::vector<std::unique_ptr<BlockEngine>> down_engines_;

  std::optional<Stream> read_in_hand_;  // accepted, not yet processed
  bool read_in_hand_last_ = false;
  std::deque<Stream> pending_writes_;
  bool last_processed_ = false;
  bool downstream_closed_ = false;
  int read_rr_ = 0;   // oldest-filled out buffer
  int write_rr_ = 0;  // next in buffer

  Stream output_;
  std::vector<TransferEvent> events_;
  std::vector<ChunkWork> chunks_;
  uint64_t hardware_tail_items_ = 0;

  uint64_t in_consumed_ = 0;   // boundary items read by the CPU so far
  uint64_t out_written_ = 0;   // boundary items written back so far
  // rational scale from boundary items to DAC ticks (sample_rate/boundary_rate)
  uint64_t in_tick_num_ = 1, in_tick_den_ = 1;
  uint64_t out_tick_num_ = 1, out_tick_den_ = 1;
};

// Runs the whole split: returns the final stream (bit-identical to
// run_pipeline), the event log and the replay data.
struct HybridResult {
  Stream output;
  std::vector<TransferEvent> events;
  std::vector<InterposerProtocol::ChunkWork> chunks;
  uint64_t hardware_tail_items = 0;
  uint64_t boundary_in_items = 0;
  uint64_t boundary_out_items = 0;
  uint32_t boundary_in_bits = 8;
  uint32_t boundary_out_bits = 8;
  uint64_t protocol_steps = 0;
};

HybridResult split_execute(const PipelineConfig& cfg, const SplitPlan& plan,
                           const std::vector<uint8_t>& packet);

// ---------------------------------------------------------------------------
// DAC-side ring buffer.
// ---------------------------------------------------------------------------

class RingBuffer {
 public:
  explicit RingBuffer(size_t capacity);

  size_t capacity() const { return capacity_; }
  size_t level() const { return level_; }

  size_t push(size_t n);  // returns accepted count (<= n)
  size_t pop(size_t n);   // returns popped count; popping empty sets underrun
  bool underrun() const { return underrun_; }

 private:
  size_t capacity_;
  size_t level_ = 0;
  bool underrun_ = false;
};

struct RingOp {
  enum class Type : uint8_t { produce, consume } type;
  size_t count;
};

// Replays an interleaved produce/consume schedule against a ring of the given
// capacity and returns the occupancy after each operation.
std::vector<size_t> ring_buffer_feed(const std::vector<RingOp>& ops,
                                     size_t capacity, bool* underrun = nullptr);

}  // namespace hphy
