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

#include "hybridphy/timing.hpp"

#include <stdexcept>

namespace hphy {

uint64_t CostModel::dsp_cost(BlockKind kind) const {
  auto it = dsp_cycles_per_item.find(kind);
  return it == dsp_cycles_per_item.end() ? 0 : it->second;
}

void CostModel::validate(uint64_t sample_rate) const {
  if (cpu_hz == 0) throw std::invalid_argument("cost model: cpu_hz must be > 0");
  if (sample_rate != 0 && cpu_hz <= sample_rate)
    throw std::invalid_argument("cost model: cpu_hz must exceed the sample rate");
}

CostModel default_cost_model() {
  CostModel cm;
  cm.dsp_cycles_per_item = {
      {BlockKind::splitter, 1}, {BlockKind::pn9, 1},  {BlockKind::clock, 1},
      {BlockKind::diffenc, 1},  {BlockKind::chip, 2}, {BlockKind::mapper, 2},
      {BlockKind::fir, 4},      {BlockKind::zpad, 1}, {BlockKind::offset, 1},
  };
  return cm;
}

namespace {

// CPU cycles to touch n items of the given wire width.
uint64_t copy_cycles(const CostModel& cost, uint64_t items, uint32_t item_bits) {
  const __int128 bits = __int128(items) * item_bits;
  return uint64_t((bits * cost.copy_cycles_per_byte + 7) / 8);
}

struct DacClock {
  uint64_t start = 0;   // cycle of the first consumption
  uint64_t cpu_hz = 1;
  uint64_t sample_rate = 1;

  uint64_t consume_time(uint64_t j) const {  // sample j leaves the ring
    return start + uint64_t((__int128(j) * cpu_hz) / sample_rate);
  }
};

}  // namespace

RunReport simulate(const PipelineConfig& cfg, const SplitPlan& plan,
                   const std::vector<uint8_t>& packet, const CostModel& cost,
                   uint64_t dac_ring_capacity) {
  cfg.validate();
  plan.validate(cfg);
  if (!cfg.preset)
    throw std::invalid_argument("simulate: config carries no preset (DAC rate unknown)");
  if (dac_ring_capacity == 0)
    throw std::invalid_argument("simulate: ring capacity must be >= 1");
  const StandardPreset& preset = *cfg.preset;
  cost.validate(preset.sample_rate);

  const HybridResult trace = split_execute(cfg, plan, packet);
  const uint64_t total_samples = stream_size(trace.output);

  RunReport report;
  report.preset_id = preset.id;
  report.plan = plan;
  report.ring_capacity = dac_ring_capacity;
  report.rates = rate_profile(cfg, preset);
  report.output_items = total_samples;
  report.output_digest = stream_digest(trace.output);
  if (!plan.is_none()) {
    report.sw_in_rate = report.rates.boundaries[size_t(plan.sw_first - 1)].items_per_s;
    report.sw_out_rate = report.rates.boundaries[size_t(plan.sw_last)].items_per_s;
    report.sw_bit_traffic =
        report.rates.bit_rate(plan.sw_first - 1) + report.rates.bit_rate(plan.sw_last);
    for (const TransferEvent& ev : trace.events)
      if (ev.kind == EventKind::irq) ++report.irq_edges;
  }

  PhaseAccount& ph = report.phases;
  uint64_t t = 0;

  ph.init = cost.init_cycles;
  t += ph.init;

  DacClock dac{0, cost.cpu_hz, preset.sample_rate};
  bool dac_started = false;
  uint64_t produced = 0;

  // Accounts one burst of `delta` ring samples landing at time `wd`; returns
  // the time the producing buffer is fully absorbed (its slot-free time).
  auto absorb = [&](uint64_t delta, uint64_t wd) -> uint64_t {
    if (delta == 0) return wd;
    const bool started_before = dac_started;
    if (!dac_started && produced + delta >= dac_ring_capacity) {
      dac.start = wd;  // ring first reaches capacity: the DAC starts here
      dac_started = true;
    }
    uint64_t free_t = wd;
    if (dac_started) {
      if (started_before && wd > dac.consume_time(produced) && !report.underrun) {
        report.underrun = true;
        report.underrun_cycle = dac.consume_time(produced);
      }
      if (produced + delta > dac_ring_capacity)
        free_t = std::max(wd, dac.consume_time(produced + delta - dac_ring_capacity));
    }
    produced += delta;
    return free_t;
  };

  if (plan.is_none()) {
    // The accelerator streams the whole packet with no CPU involvement.
    produced = total_samples;
    dac.start = t;
    dac_started = total_samples > 0;
  } else {
    uint64_t slot_free[2] = {t, t};  // from-CPU double buffers
    for (const auto& chunk : trace.chunks) {
      // poll + accept_read (upstream hardware always keeps a buffer filled)
      ph.loop += cost.loop_cycles;
      t += cost.loop_cycles;
      const uint64_t rd = cost.dma_setup_cycles + cost.cache_op_cycles +
                          copy_cycles(cost, chunk.read_items, trace.boundary_in_bits);
      ph.read += rd;
      t += rd;
      // process (eager software DSP)
      for (const auto& [kind, items] : chunk.dsp_items) {
        const uint64_t cycles = items * cost.dsp_cost(kind);
        ph.dsp += cycles;
        ph.dsp_by_kind[kind] += cycles;
        t += cycles;
      }
      // write-back, chunk by chunk
      for (size_t w = 0; w < chunk.write_items.size(); ++w) {
        ph.loop += cost.loop_cycles;
        t += cost.loop_cycles;
        const int s = slot_free[0] <= slot_free[1] ? 0 : 1;
        if (slot_free[s] > t) {
          // both buffers busy: block until the interposer frees one
          ph.gated += slot_free[s] - t;
          t = slot_free[s];
          ph.irq += cost.irq_latency_cycles;
          t += cost.irq_latency_cycles;
          ++report.irq_sleeps;
          ph.loop += cost.loop_cycles;
          t += cost.loop_cycles;
        }
        const uint64_t wr =
            cost.cache_op_cycles + cost.dma_setup_cycles +
            copy_cycles(cost, chunk.write_items[w], trace.boundary_out_bits);
        ph.write += wr;
        t += wr;
        slot_free[size_t(s)] = absorb(chunk.ring_deltas[w], t);
      }
    }
    // downstream flush after the last write (hardware only)
    absorb(trace.hardware_tail_items, t);
    // final poll: last flag seen, nothing pending
    ph.loop += cost.loop_cycles;
    t += cost.loop_cycles;
  }

  if (produced != total_samples)
    throw std::logic_error("simulate: sample conservation violated");

  if (!dac_started && produced > 0) {
    dac.start = t;  // stream shorter than the ring: start at production end
    dac_started = true;
  }

  const uint64_t dac_end = produced > 0 ? dac.consume_time(produced - 1) : t;
  report.dac_start_cycle = dac_started ? dac.start : t;
  if (t < dac_end) {
    // sleep until the accelerator completion interrupt
    ph.gated += dac_end - t;
    t = dac_end;
    ph.end = cost.irq_latency_cycles + cost.end_cycles;
  } else {
    ph.end = cost.end_cycles;
  }
  t += ph.end;

  report.total_cycles = t;
  if (ph.total() != t)
    throw std::logic_error("simulate: phase accounting does not close");
  report.gated_fraction =
      t == 0 ? 0.0 : double(ph.gated) / double(t);
  report.underrun_seconds =
      report.underrun ? double(report.underrun_cycle) / double(cost.cpu_hz) : 0.0;
  return report;
}

std::vector<SweepRow> gated_sweep(const PipelineConfig& cfg,
                                  const std::vector<uint64_t>& buffer_sizes,
                                  const std::vector<int>& slots,
                                  const std::vector<uint8_t>& packet,
                                  const CostModel& cost,
                                  uint64_t dac_ring_capacity) {
  std::vector<SweepRow> rows;
  const int preset_id = cfg.preset ? cfg.preset->id : 0;

  for (uint64_t buffer : buffer_sizes) {
    RunReport base = simulate(cfg, SplitPlan{0, 0, buffer}, packet, cost,
                              dac_ring_capacity);
    rows.push_back(SweepRow{preset_id, 0, buffer, base.gated_fraction,
                            base.underrun, 0, 0, base.output_digest});
  }
  for (int slot : slots) {
    for (uint64_t buffer : buffer_sizes) {
      SplitPlan plan{slot, slot, buffer};
      RunReport r = simulate(cfg, plan, packet, cost, dac_ring_capacity);
      rows.push_back(SweepRow{preset_id, slot, buffer, r.gated_fraction,
                              r.underrun, r.sw_in_rate, r.sw_bit_traffic,
                              r.output_digest});
    }
  }
  return rows;
}

PhaseBreakdown phase_report(const RunReport& report) {
  PhaseBreakdown out;
  const PhaseAccount& ph = report.phases;
  out.total_cycles = ph.total();
  const auto frac = [&](uint64_t c) {
    return out.total_cycles == 0 ? 0.0 : double(c) / double(out.total_cycles);
  };
  out.lines = {
      {"Init", ph.init, frac(ph.init)},   {"Loop", ph.loop, frac(ph.loop)},
      {"IRQ", ph.irq, frac(ph.irq)},      {"Read", ph.read, frac(ph.read)},
      {"DSP", ph.dsp, frac(ph.dsp)},      {"Write", ph.write, frac(ph.write)},
      {"End", ph.end, frac(ph.end)},      {"gated", ph.gated, frac(ph.gated)},
  };
  for (const auto& [kind, cycles] : ph.dsp_by_kind)
    out.dsp_by_kind.emplace_back(kind, cycles);
  return out;
}

}  // namespace hphy
