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

#include "hybridphy/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "hybridphy/io.hpp"
#include "hybridphy/plot.hpp"
#include "hybridphy/util.hpp"

namespace hphy {

MinBufferResult min_buffer_threshold(
    const std::function<bool(uint64_t)>& underruns, uint64_t cap) {
  if (cap == 0) throw std::invalid_argument("min_buffer: cap must be >= 1");
  if (!underruns(1)) return {true, 1, cap};

  uint64_t lo = 1;  // underruns
  uint64_t hi = 2;
  while (hi < cap && underruns(hi)) {
    lo = hi;
    hi *= 2;
  }
  if (hi >= cap) {
    if (underruns(cap)) return {false, 0, cap};  // software cannot keep up
    hi = cap;
  }
  while (hi - lo > 1) {
    const uint64_t mid = lo + (hi - lo) / 2;
    if (underruns(mid))
      lo = mid;
    else
      hi = mid;
  }
  // exactness guard: B* must fail at B*-1 even if the predicate wobbles
  while (hi > 1 && !underruns(hi - 1)) --hi;
  return {true, hi, cap};
}

MinBufferResult min_buffer_search(const PipelineConfig& cfg,
                                  const SplitPlan& plan_template,
                                  const std::vector<uint8_t>& packet,
                                  const CostModel& cost,
                                  uint64_t dac_ring_capacity, uint64_t cap) {
  auto underruns = [&](uint64_t buffer) {
    SplitPlan plan = plan_template;
    plan.buffer_items = buffer;
    return simulate(cfg, plan, packet, cost, dac_ring_capacity).underrun;
  };
  return min_buffer_threshold(underruns, cap);
}

FitResult power_law_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3)
    throw std::invalid_argument("power_law_fit: need at least 3 points");
  for (const auto& [x, y] : points)
    if (!(x > 0.0) || !(y > 0.0))
      throw std::invalid_argument("power_law_fit: points must be positive");

  const double n = double(points.size());
  double sx = 0, sy = 0;
  for (const auto& [x, y] : points) {
    sx += std::log(x);
    sy += std::log(y);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx;
    const double dy = std::log(y) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0)
    throw std::invalid_argument("power_law_fit: all rates identical");

  FitResult fit;
  fit.m = sxy / sxx;
  fit.k = std::exp(my - fit.m * mx);
  double ss_res = 0;
  for (const auto& [x, y] : points) {
    const double pred = my + fit.m * (std::log(x) - mx);
    const double r = std::log(y) - pred;
    ss_res += r * r;
  }
  fit.r2 = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
  fit.points = points;
  return fit;
}

namespace {

int slot_of(BlockKind kind) { return int(kind) + 1; }

}  // namespace

RetrofitScenario make_retrofit_scenario(int preset_id,
                                        const std::vector<BlockKind>& missing) {
  if (missing.empty())
    throw std::invalid_argument("retrofit: no missing blocks");
  PipelineConfig cfg = build_preset(preset_id);
  std::vector<int> slots;
  for (BlockKind kind : missing) {
    if (!cfg.slot_enabled(slot_of(kind)))
      throw std::invalid_argument(std::string("retrofit: ") + to_string(kind) +
                                  " is not part of this preset's pipeline");
    slots.push_back(slot_of(kind));
  }
  std::sort(slots.begin(), slots.end());
  for (size_t i = 1; i < slots.size(); ++i) {
    if (slots[i] != slots[i - 1] + 1)
      throw std::invalid_argument(
          "retrofit: missing blocks are not one contiguous segment");
  }

  RetrofitScenario scenario;
  scenario.preset = preset_info(preset_id);
  scenario.missing_blocks = missing;
  scenario.plan = SplitPlan{slots.front(), slots.back(), 256};
  return scenario;
}

RetrofitScenario retrofit_scenario(Modulation modulation) {
  switch (modulation) {
    case Modulation::oqpsk:
      return make_retrofit_scenario(1, {BlockKind::zpad, BlockKind::offset});
    case Modulation::bpsk:
      return make_retrofit_scenario(4, {BlockKind::diffenc});
    case Modulation::gfsk:
      return make_retrofit_scenario(6, {BlockKind::pn9, BlockKind::clock});
  }
  throw std::invalid_argument("retrofit: unknown modulation");
}

std::vector<RetrofitRow> retrofit_run(const RetrofitScenario& scenario,
                                      const std::vector<uint64_t>& buffers,
                                      const std::vector<uint8_t>& packet,
                                      const CostModel& cost,
                                      uint64_t dac_ring_capacity) {
  const PipelineConfig cfg = build_preset(scenario.preset.id);
  const RunReport baseline =
      simulate(cfg, SplitPlan{0, 0, 1}, packet, cost, dac_ring_capacity);

  std::vector<RetrofitRow> rows;
  for (uint64_t buffer : buffers) {
    SplitPlan plan = scenario.plan;
    plan.buffer_items = buffer;
    const RunReport r = simulate(cfg, plan, packet, cost, dac_ring_capacity);
    RetrofitRow row;
    row.buffer_items = buffer;
    row.gated_retrofit = r.gated_fraction;
    row.gated_baseline = baseline.gated_fraction;
    row.delta = baseline.gated_fraction - r.gated_fraction;
    row.underrun = r.underrun;
    row.digest_retrofit = r.output_digest;
    row.digest_baseline = baseline.output_digest;
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

std::string sweep_csv_path(const std::string& out_dir) {
  return out_dir + "/sweep.csv";
}
std::string min_buffer_csv_path(const std::string& out_dir) {
  return out_dir + "/min_buffer.csv";
}
std::string rates_csv_path(const std::string& out_dir) {
  return out_dir + "/rates.csv";
}
std::string retrofit_csv_path(const std::string& out_dir) {
  return out_dir + "/retrofit.csv";
}

namespace {

const std::vector<std::string> kResultColumns = {
    "preset_id", "sw_first",   "sw_last",    "buffer_items",
    "gated_fraction", "underrun", "min_buffer", "boundary_rate"};

std::string u64s(uint64_t v) { return std::to_string(v); }

void export_sweep(const std::string& out_dir, const std::vector<SweepRow>& rows) {
  std::vector<std::vector<std::string>> csv;
  for (const SweepRow& r : rows) {
    csv.push_back({std::to_string(r.preset_id), std::to_string(r.slot),
                   std::to_string(r.slot), u64s(r.buffer_items),
                   format_double(r.gated_fraction), r.underrun ? "1" : "0", "",
                   u64s(r.sw_in_rate)});
  }
  write_csv(sweep_csv_path(out_dir), kResultColumns, csv);

  // gated fraction vs pipeline slot, one series per buffer size
  SvgPlot plot("Clock-gated fraction per software block", "pipeline slot",
               "gated fraction");
  std::vector<uint64_t> buffers;
  for (const SweepRow& r : rows)
    if (r.slot != 0 &&
        std::find(buffers.begin(), buffers.end(), r.buffer_items) == buffers.end())
      buffers.push_back(r.buffer_items);
  std::sort(buffers.begin(), buffers.end());
  for (uint64_t buffer : buffers) {
    std::vector<std::pair<double, double>> pts;
    for (const SweepRow& r : rows)
      if (r.slot != 0 && r.buffer_items == buffer)
        pts.emplace_back(double(r.slot), r.gated_fraction);
    plot.add_series("buffer " + u64s(buffer), std::move(pts));
  }
  for (const SweepRow& r : rows) {
    if (r.slot == 0) {
      plot.add_series("hardware", {{1.0, r.gated_fraction},
                                   {double(kNumSlots), r.gated_fraction}},
                      false);
      break;
    }
  }
  plot.write(out_dir + "/sweep_gated.svg");
}

void export_min_buffer(const std::string& out_dir,
                       const std::vector<MinBufferPoint>& points,
                       const std::optional<FitResult>& fit) {
  std::vector<std::vector<std::string>> csv;
  for (const MinBufferPoint& p : points) {
    csv.push_back({std::to_string(p.preset_id), std::to_string(p.sw_first),
                   std::to_string(p.sw_last), "", "",
                   p.result.found ? "0" : "1",
                   p.result.found ? u64s(p.result.min_buffer) : "",
                   u64s(p.boundary_rate)});
  }
  write_csv(min_buffer_csv_path(out_dir), kResultColumns, csv);

  SvgPlot plot("Minimum buffer size vs intervention data rate",
               "boundary rate (items/s)", "min buffer (items)", true, true);
  std::vector<std::pair<double, double>> pts;
  for (const MinBufferPoint& p : points)
    if (p.result.found)
      pts.emplace_back(double(p.boundary_rate), double(p.result.min_buffer));
  plot.add_series("measured", pts);
  if (fit && !pts.empty()) {
    auto [lo, hi] = std::minmax_element(
        pts.begin(), pts.end(),
        [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<double, double>> line;
    for (int i = 0; i <= 32; ++i) {
      const double x = lo->first * std::pow(hi->first / lo->first, i / 32.0);
      line.emplace_back(x, fit->k * std::pow(x, fit->m));
    }
    plot.add_series("fit k*rate^m", std::move(line), false);
  }
  plot.write(out_dir + "/min_buffer_law.svg");
}

void export_rates(const std::string& out_dir,
                  const std::vector<std::pair<int, RateProfile>>& rates) {
  std::vector<std::vector<std::string>> csv;
  for (const auto& [preset_id, profile] : rates) {
    for (int b = 0; b <= kNumSlots; ++b) {
      const RateBoundary& rb = profile.boundaries[size_t(b)];
      csv.push_back({std::to_string(preset_id), std::to_string(b),
                     u64s(rb.items_per_s), std::to_string(rb.item_bits),
                     u64s(profile.bit_rate(b))});
    }
  }
  write_csv(rates_csv_path(out_dir),
            {"preset_id", "boundary", "items_per_s", "item_bits", "bits_per_s"},
            csv);

  SvgPlot plot("Data rate across the pipeline", "boundary", "bits/s", false,
               true);
  for (const auto& [preset_id, profile] : rates) {
    std::vector<std::pair<double, double>> pts;
    for (int b = 0; b <= kNumSlots; ++b)
      pts.emplace_back(double(b), double(profile.bit_rate(b)));
    plot.add_series("preset " + std::to_string(preset_id), std::move(pts));
  }
  plot.write(out_dir + "/rate_profile.svg");
}

void export_retrofit(
    const std::string& out_dir,
    const std::vector<std::pair<std::string, std::vector<RetrofitRow>>>& tables) {
  std::vector<std::vector<std::string>> csv;
  for (const auto& [name, rows] : tables) {
    for (const RetrofitRow& r : rows) {
      csv.push_back({name, u64s(r.buffer_items), format_double(r.gated_retrofit),
                     format_double(r.gated_baseline), format_double(r.delta),
                     r.underrun ? "1" : "0"});
    }
  }
  write_csv(retrofit_csv_path(out_dir),
            {"scenario", "buffer_items", "gated_retrofit", "gated_baseline",
             "delta", "underrun"},
            csv);

  SvgPlot plot("Retrofit: gated fraction vs buffer size", "buffer (items)",
               "gated fraction", true, false);
  for (const auto& [name, rows] : tables) {
    std::vector<std::pair<double, double>> pts;
    for (const RetrofitRow& r : rows)
      pts.emplace_back(double(r.buffer_items), r.gated_retrofit);
    plot.add_series(name, std::move(pts));
    if (!rows.empty())
      plot.add_series(name + " hw", {{double(rows.front().buffer_items),
                                      rows.front().gated_baseline},
                                     {double(rows.back().buffer_items),
                                      rows.back().gated_baseline}},
                      false);
  }
  plot.write(out_dir + "/retrofit_delta.svg");
}

}  // namespace

void export_results(const std::string& out_dir, const ExperimentTables& tables) {
  const bool any = !tables.sweep.empty() || !tables.min_buffer.empty() ||
                   !tables.rates.empty() || !tables.retrofit.empty();
  if (!any) throw std::invalid_argument("export_results: nothing to export");

  std::filesystem::create_directories(out_dir);
  if (!tables.sweep.empty()) export_sweep(out_dir, tables.sweep);
  if (!tables.min_buffer.empty())
    export_min_buffer(out_dir, tables.min_buffer, tables.fit);
  if (!tables.rates.empty()) export_rates(out_dir, tables.rates);
  if (!tables.retrofit.empty()) export_retrofit(out_dir, tables.retrofit);
}

}  // namespace hphy
