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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hybridphy/timing.hpp"

namespace hphy {

// ---------------------------------------------------------------------------
// Minimum-buffer search.
// ---------------------------------------------------------------------------

struct MinBufferResult {
  bool found = false;      // false => no non-underrunning size <= cap
  uint64_t min_buffer = 0;
  uint64_t cap = 0;
};

// Exact threshold over a monotone underrun predicate (underruns(b) must be
// non-increasing in b): exponential growth then binary search.
MinBufferResult min_buffer_threshold(
    const std::function<bool(uint64_t)>& underruns, uint64_t cap);

// Simulator-backed search for a (preset config, software segment) pair.
MinBufferResult min_buffer_search(const PipelineConfig& cfg,
                                  const SplitPlan& plan_template,
                                  const std::vector<uint8_t>& packet,
                                  const CostModel& cost,
                                  uint64_t dac_ring_capacity,
                                  uint64_t cap = uint64_t{1} << 20);

// ---------------------------------------------------------------------------
// Power-law fit: size ~ k * rate^m by least squares on (log rate, log size).
// ---------------------------------------------------------------------------

struct FitResult {
  double k = 0.0;
  double m = 0.0;
  double r2 = 0.0;
  std::vector<std::pair<double, double>> points;  // (rate, size)
};

// Requires >= 3 points, all coordinates positive; throws otherwise.
FitResult power_law_fit(const std::vector<std::pair<double, double>>& points);

// ---------------------------------------------------------------------------
// Retrofit scenarios: run the blocks unique to one modulation in software.
// ---------------------------------------------------------------------------

struct RetrofitScenario {
  StandardPreset preset;
  std::vector<BlockKind> missing_blocks;
  SplitPlan plan;  // buffer_items filled per run
};

// OQPSK -> {zpad, offset} on preset 1; BPSK -> {diffenc} on preset 4;
// GFSK -> {pn9, clock} on preset 6.
RetrofitScenario retrofit_scenario(Modulation modulation);

// User-defined scenario; throws if the missing blocks are not one contiguous
// run of enabled slots.
RetrofitScenario make_retrofit_scenario(int preset_id,
                                        const std::vector<BlockKind>& missing);

struct RetrofitRow {
  uint64_t buffer_items = 0;
  double gated_retrofit = 0.0;
  double gated_baseline = 0.0;
  double delta = 0.0;  // baseline - retrofit
  bool underrun = false;
  uint64_t digest_retrofit = 0;
  uint64_t digest_baseline = 0;
};

std::vector<RetrofitRow> retrofit_run(const RetrofitScenario& scenario,
                                      const std::vector<uint64_t>& buffers,
                                      const std::vector<uint8_t>& packet,
                                      const CostModel& cost,
                                      uint64_t dac_ring_capacity);

// ---------------------------------------------------------------------------
// Result export: deterministic CSV plus SVG plots.
// ---------------------------------------------------------------------------

struct MinBufferPoint {
  int preset_id = 0;
  int sw_first = 0;
  int sw_last = 0;
  uint64_t boundary_rate = 0;  // items/s at the intervention (read) boundary
  MinBufferResult result;
};

struct ExperimentTables {
  std::vector<SweepRow> sweep;                  // Fig-5 analogue
  std::vector<MinBufferPoint> min_buffer;       // Fig-7 analogue points
  std::optional<FitResult> fit;                 // Fig-7 analogue fit
  std::vector<std::pair<int, RateProfile>> rates;  // Fig-6 analogue, per preset
  std::vector<std::pair<std::string, std::vector<RetrofitRow>>> retrofit;
};

// Writes CSV files and SVG plots under out_dir. Empty tables are an error and
// create no file. Same inputs produce byte-identical files.
void export_results(const std::string& out_dir, const ExperimentTables& tables);

std::string sweep_csv_path(const std::string& out_dir);
std::string min_buffer_csv_path(const std::string& out_dir);
std::string rates_csv_path(const std::string& out_dir);
std::string retrofit_csv_path(const std::string& out_dir);

}  // namespace hphy
