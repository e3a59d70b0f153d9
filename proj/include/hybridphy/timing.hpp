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
#include <string>
#include <vector>

#include "hybridphy/interposer.hpp"
#include "hybridphy/pipeline.hpp"

namespace hphy {

// Parametric CPU/DMA cost model, all values in CPU cycles. Defaults are
// order-of-magnitude placeholders (shipped in data/costs/default.cfg); the
// interrupt latency default comes from a measured platform. See README for
// the calibration procedure.
struct CostModel {
  uint64_t cpu_hz = 1'000'000'000;
  uint64_t irq_latency_cycles = 7494;
  uint64_t cache_op_cycles = 1800;   // one flush or invalidate, per transfer
  uint64_t dma_setup_cycles = 1800;  // per DMA start
  uint64_t loop_cycles = 300;        // per poll iteration
  uint64_t init_cycles = 20000;      // packet load + stage configuration
  uint64_t end_cycles = 3000;        // teardown after the completion interrupt
  uint64_t copy_cycles_per_byte = 16;  // CPU touch cost per buffer byte
  std::map<BlockKind, uint64_t> dsp_cycles_per_item;

  uint64_t dsp_cost(BlockKind kind) const;
  void validate(uint64_t sample_rate) const;  // cpu_hz must outrun the DAC
};

CostModel default_cost_model();

// Busy cycles per execution phase; everything not accounted to a phase is
// clock-gated. The completion wake-up is charged to End so a pure-hardware
// run reports zero for every phase except Init and End.
struct PhaseAccount {
  uint64_t init = 0;
  uint64_t loop = 0;
  uint64_t irq = 0;
  uint64_t read = 0;
  uint64_t dsp = 0;
  uint64_t write = 0;
  uint64_t end = 0;
  uint64_t gated = 0;
  std::map<BlockKind, uint64_t> dsp_by_kind;

  uint64_t busy() const { return init + loop + irq + read + dsp + write + end; }
  uint64_t total() const { return busy() + gated; }
};

struct RunReport {
  int preset_id = 0;
  SplitPlan plan;
  uint64_t ring_capacity = 0;

  bool underrun = false;
  uint64_t underrun_cycle = 0;    // first empty-ring DAC deadline
  double underrun_seconds = 0.0;

  double gated_fraction = 0.0;
  PhaseAccount phases;
  uint64_t total_cycles = 0;
  uint64_t dac_start_cycle = 0;

  RateProfile rates;
  uint64_t output_items = 0;
  uint64_t output_digest = 0;

  // software-segment boundary rates (items/s) and total interposer traffic
  uint64_t sw_in_rate = 0;
  uint64_t sw_out_rate = 0;
  uint64_t sw_bit_traffic = 0;  // bits/s in + bits/s out
  uint64_t irq_edges = 0;       // hardware IRQ edges in the event log
  uint64_t irq_sleeps = 0;      // edges the CPU actually slept for
};

// Replays a split execution against a DAC consuming one sample per
// 1/sample_rate once the ring first fills (or production ends, for streams
// shorter than the ring). Underrun is a result, not an error.
RunReport simulate(const PipelineConfig& cfg, const SplitPlan& plan,
                   const std::vector<uint8_t>& packet, const CostModel& cost,
                   uint64_t dac_ring_capacity);

struct SweepRow {
  int preset_id = 0;
  int slot = 0;  // 0 = hardware baseline
  uint64_t buffer_items = 0;
  double gated_fraction = 0.0;
  bool underrun = false;
  uint64_t sw_in_rate = 0;
  uint64_t sw_bit_traffic = 0;
  uint64_t output_digest = 0;
};

// One simulate() per (block slot, buffer size) pair, plus a pure-hardware
// baseline row per buffer list. Rows are keyed (slot, buffer), in order.
std::vector<SweepRow> gated_sweep(const PipelineConfig& cfg,
                                  const std::vector<uint64_t>& buffer_sizes,
                                  const std::vector<int>& slots,
                                  const std::vector<uint8_t>& packet,
                                  const CostModel& cost,
                                  uint64_t dac_ring_capacity);

struct PhaseLine {
  std::string name;
  uint64_t cycles = 0;
  double fraction = 0.0;  // of total cycles
};

struct PhaseBreakdown {
  std::vector<PhaseLine> lines;  // Init..End then gated
  std::vector<std::pair<BlockKind, uint64_t>> dsp_by_kind;
  uint64_t total_cycles = 0;
};

PhaseBreakdown phase_report(const RunReport& report);

}  // namespace hphy
