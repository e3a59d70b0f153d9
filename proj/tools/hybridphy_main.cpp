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

// Command-line front end: modulate packets, run hybrid simulations and
// sweeps, search minimum buffer sizes, fit the buffer/rate law, replay the
// retrofit scenarios and verify the golden corpus.

#include <filesystem>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hybridphy/experiments.hpp"
#include "hybridphy/io.hpp"
#include "hybridphy/util.hpp"

namespace fs = std::filesystem;
using namespace hphy;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
  int preset = 1;
  std::string pipeline_file;
  std::string pipeline_name;
  std::string packet_file;
  uint64_t packet_bytes = 256;
  uint64_t seed = 1;
  std::string cost_file;
  uint64_t ring = 4096;
  std::string out_dir = "out";
  std::string data_dir = default_data_dir();
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_cost = true) {
  cmd->add_option("--preset", o.preset, "standard preset id (1..6)")
      ->check(CLI::Range(1, 6));
  cmd->add_option("--pipeline", o.pipeline_file,
                  "pipeline config file (overrides --preset)");
  cmd->add_option("--pipeline-name", o.pipeline_name,
                  "section name inside --pipeline");
  cmd->add_option("--packet", o.packet_file, "packet file (raw PSDU bytes)");
  cmd->add_option("--packet-bytes", o.packet_bytes,
                  "synthesized packet length when no --packet is given");
  cmd->add_option("--seed", o.seed, "seed for the synthesized packet");
  if (with_cost) {
    cmd->add_option("--cost", o.cost_file, "cost model file (key = value)");
    cmd->add_option("--ring", o.ring, "DAC ring capacity in samples");
  }
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option("--data-dir", o.data_dir, "data directory (presets, corpus)");
}

PipelineConfig resolve_pipeline(const CommonOpts& o) {
  if (!o.pipeline_file.empty()) {
    if (!o.pipeline_name.empty())
      return load_pipeline_config(o.pipeline_file, o.pipeline_name);
    return load_pipeline_file(o.pipeline_file).front();
  }
  return build_preset(o.preset);
}

std::vector<uint8_t> resolve_packet(const CommonOpts& o) {
  if (!o.packet_file.empty()) return read_packet(o.packet_file);
  return random_packet(o.packet_bytes, o.seed);
}

CostModel resolve_cost(const CommonOpts& o) {
  if (!o.cost_file.empty()) return load_cost_model(o.cost_file);
  return default_cost_model();
}

SplitPlan parse_sw(const std::string& spec, uint64_t buffer) {
  if (spec.empty() || spec == "none") return SplitPlan{0, 0, buffer};
  const size_t dots = spec.find("..");
  if (dots == std::string::npos)
    throw CLI::ValidationError("--sw", "expected i..j (unified slots 1..9)");
  SplitPlan plan;
  plan.sw_first = std::stoi(spec.substr(0, dots));
  plan.sw_last = std::stoi(spec.substr(dots + 2));
  plan.buffer_items = buffer;
  return plan;
}

std::map<std::string, std::string> base_manifest(const CommonOpts& o,
                                                 const std::string& command) {
  std::map<std::string, std::string> m;
  m["tool"] = "hybridphy";
  m["version"] = kVersion;
  m["command"] = command;
  m["preset"] = std::to_string(o.preset);
  m["pipeline_file"] = o.pipeline_file;
  m["packet_file"] = o.packet_file;
  m["packet_bytes"] = std::to_string(o.packet_bytes);
  m["seed"] = std::to_string(o.seed);
  m["cost_file"] = o.cost_file;
  m["ring"] = std::to_string(o.ring);
  m["data_dir"] = o.data_dir;
  const std::vector<uint8_t> packet = resolve_packet(o);
  m["packet_digest"] = std::to_string(
      fnv1a64(std::span<const uint8_t>(packet.data(), packet.size())));
  return m;
}

int run_modulate(const CommonOpts& o, const std::string& format_name,
                 const std::string& iq_name) {
  const PipelineConfig cfg = resolve_pipeline(o);
  const std::vector<uint8_t> packet = resolve_packet(o);
  const Stream out = run_pipeline(cfg, packet);
  const IQStream* iq = std::get_if<IQStream>(&out);
  if (!iq) throw std::runtime_error("pipeline produced no IQ output");

  fs::create_directories(o.out_dir);
  const IqFormat format = iq_format_from_string(format_name);
  const uint64_t rate = cfg.preset ? cfg.preset->sample_rate : 0;
  const uint32_t pid = cfg.preset ? uint32_t(cfg.preset->id) : 0;
  const std::string path = o.out_dir + "/" + iq_name;
  write_iq(path, *iq, format, rate, pid);

  auto manifest = base_manifest(o, "modulate");
  manifest["format"] = format_name;
  manifest["samples"] = std::to_string(iq->size());
  manifest["iq_file"] = path;
  write_manifest(o.out_dir + "/manifest.txt", manifest);
  std::cerr << "wrote " << iq->size() << " samples to " << path << "\n";
  return 0;
}

int run_simulate(const CommonOpts& o, const std::string& sw, uint64_t buffer) {
  const PipelineConfig cfg = resolve_pipeline(o);
  const std::vector<uint8_t> packet = resolve_packet(o);
  const SplitPlan plan = parse_sw(sw, buffer);
  const CostModel cost = resolve_cost(o);

  const RunReport report = simulate(cfg, plan, packet, cost, o.ring);
  fs::create_directories(o.out_dir);
  write_run_report(o.out_dir + "/runreport.txt", report);
  const HybridResult trace = split_execute(cfg, plan, packet);
  write_event_log(o.out_dir + "/events.log", trace.events);

  auto manifest = base_manifest(o, "simulate");
  manifest["sw"] = sw.empty() ? "none" : sw;
  manifest["buffer"] = std::to_string(buffer);
  write_manifest(o.out_dir + "/manifest.txt", manifest);

  std::cerr << "gated_fraction=" << format_double(report.gated_fraction)
            << " underrun=" << (report.underrun ? 1 : 0) << "\n";
  return 0;
}

std::vector<uint64_t> parse_u64_list(const std::vector<std::string>& words) {
  std::vector<uint64_t> out;
  for (const std::string& w : words) out.push_back(std::stoull(w));
  return out;
}

int run_sweep(const CommonOpts& o, const std::vector<std::string>& buffer_words,
              const std::string& blocks, unsigned jobs) {
  const PipelineConfig cfg = resolve_pipeline(o);
  const std::vector<uint8_t> packet = resolve_packet(o);
  const CostModel cost = resolve_cost(o);
  const std::vector<uint64_t> buffers =
      buffer_words.empty() ? std::vector<uint64_t>{256, 1024, 4096}
                           : parse_u64_list(buffer_words);

  std::vector<int> slots;
  if (blocks == "all") {
    slots = cfg.enabled_slots();
  } else {
    for (const std::string& w : CLI::detail::split(blocks, ','))
      slots.push_back(std::stoi(w));
    for (int slot : slots)
      if (!cfg.slot_enabled(slot))
        throw std::runtime_error("sweep: slot " + std::to_string(slot) +
                                 " is disabled in this pipeline");
  }

  std::vector<SweepRow> rows;
  if (jobs <= 1) {
    rows = gated_sweep(cfg, buffers, slots, packet, cost, o.ring);
  } else {
    // baseline first, then one future per (slot, buffer); merged in key order
    rows = gated_sweep(cfg, buffers, {}, packet, cost, o.ring);
    std::vector<std::future<SweepRow>> futures;
    for (int slot : slots) {
      for (uint64_t buffer : buffers) {
        futures.push_back(std::async(std::launch::async, [&, slot, buffer] {
          const RunReport r = simulate(cfg, SplitPlan{slot, slot, buffer},
                                       packet, cost, o.ring);
          return SweepRow{r.preset_id, slot, buffer, r.gated_fraction,
                          r.underrun, r.sw_in_rate, r.sw_bit_traffic,
                          r.output_digest};
        }));
      }
    }
    for (auto& f : futures) rows.push_back(f.get());
  }

  ExperimentTables tables;
  tables.sweep = std::move(rows);
  if (cfg.preset)
    tables.rates.emplace_back(cfg.preset->id, rate_profile(cfg, *cfg.preset));
  export_results(o.out_dir, tables);
  write_manifest(o.out_dir + "/manifest.txt", base_manifest(o, "sweep"));
  std::cerr << "sweep written to " << o.out_dir << "\n";
  return 0;
}

int run_minbuf(const CommonOpts& o, const std::string& sw, uint64_t cap) {
  const PipelineConfig cfg = resolve_pipeline(o);
  const std::vector<uint8_t> packet = resolve_packet(o);
  const CostModel cost = resolve_cost(o);
  SplitPlan plan = parse_sw(sw, 1);
  if (plan.is_none()) throw std::runtime_error("minbuf requires --sw i..j");

  const MinBufferResult result =
      min_buffer_search(cfg, plan, packet, cost, o.ring, cap);

  fs::create_directories(o.out_dir);
  MinBufferPoint point;
  point.preset_id = cfg.preset ? cfg.preset->id : 0;
  point.sw_first = plan.sw_first;
  point.sw_last = plan.sw_last;
  if (cfg.preset) {
    const RateProfile profile = rate_profile(cfg, *cfg.preset);
    point.boundary_rate =
        profile.boundaries[size_t(plan.sw_first - 1)].items_per_s;
  }
  point.result = result;
  ExperimentTables tables;
  tables.min_buffer.push_back(point);
  export_results(o.out_dir, tables);

  auto manifest = base_manifest(o, "minbuf");
  manifest["sw"] = sw;
  manifest["cap"] = std::to_string(cap);
  write_manifest(o.out_dir + "/manifest.txt", manifest);

  if (result.found)
    std::cout << "min_buffer=" << result.min_buffer << "\n";
  else
    std::cout << "cutoff: software cannot keep up within cap=" << cap << "\n";
  return 0;  // a cutoff is a flagged result, not an error
}

int run_fit(const CommonOpts& o, const std::string& points_file) {
  const std::string path = points_file.empty()
                               ? o.data_dir + "/fig7_synthetic.csv"
                               : points_file;
  const auto points = load_points_csv(path);
  const FitResult fit = power_law_fit(points);
  std::cout << "m=" << format_double(fit.m) << " k=" << format_double(fit.k)
            << " r2=" << format_double(fit.r2) << "\n";
  return 0;
}

int run_retrofit(const CommonOpts& o, const std::string& which,
                 const std::vector<std::string>& buffer_words) {
  const std::vector<uint8_t> packet = resolve_packet(o);
  const CostModel cost = resolve_cost(o);
  const std::vector<uint64_t> buffers =
      buffer_words.empty() ? std::vector<uint64_t>{64, 256, 1024, 4096}
                           : parse_u64_list(buffer_words);

  std::vector<std::pair<std::string, Modulation>> selected;
  if (which == "all" || which == "oqpsk")
    selected.emplace_back("oqpsk-2450", Modulation::oqpsk);
  if (which == "all" || which == "bpsk")
    selected.emplace_back("bpsk-868", Modulation::bpsk);
  if (which == "all" || which == "gfsk")
    selected.emplace_back("gfsk-920", Modulation::gfsk);
  if (selected.empty())
    throw std::runtime_error("retrofit: unknown scenario " + which);

  ExperimentTables tables;
  for (const auto& [name, modulation] : selected) {
    tables.retrofit.emplace_back(
        name, retrofit_run(retrofit_scenario(modulation), buffers, packet, cost,
                           o.ring));
  }
  export_results(o.out_dir, tables);
  auto manifest = base_manifest(o, "retrofit");
  manifest["scenario"] = which;
  write_manifest(o.out_dir + "/manifest.txt", manifest);
  std::cerr << "retrofit results written to " << o.out_dir << "\n";
  return 0;
}

int run_verify(const CommonOpts& o) {
  const auto vectors = load_golden_manifest(o.data_dir + "/golden/manifest.cfg");
  bool all_pass = true;
  for (const GoldenVector& vec : vectors) {
    const GoldenCheck check = verify_golden(vec, o.data_dir);
    std::cout << (check.pass ? "PASS" : "FAIL") << " " << check.name
              << " max_abs_error=" << format_double(check.max_abs_error);
    if (!check.message.empty()) std::cout << " (" << check.message << ")";
    std::cout << "\n";
    all_pass = all_pass && check.pass;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid hardware/software IEEE 802.15.4 TX PHY simulator"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonOpts opts;

  auto* modulate = app.add_subcommand("modulate", "modulate a packet to IQ");
  add_common(modulate, opts, false);
  std::string format_name = "cf32";
  std::string iq_name = "out.iq";
  modulate->add_option("--format", format_name, "cf32 | ci16")
      ->check(CLI::IsMember({"cf32", "ci16"}));
  modulate->add_option("--iq-name", iq_name, "output IQ file name");

  auto* simulate_cmd = app.add_subcommand("simulate", "run one hybrid simulation");
  add_common(simulate_cmd, opts);
  std::string sw;
  uint64_t buffer = 256;
  simulate_cmd->add_option("--sw", sw, "software segment, slots i..j (or none)");
  simulate_cmd->add_option("--buffer", buffer, "interposer buffer size in items");

  auto* sweep_cmd = app.add_subcommand("sweep", "block x buffer gated-fraction sweep");
  add_common(sweep_cmd, opts);
  std::vector<std::string> buffer_words;
  std::string blocks = "all";
  unsigned jobs = 1;
  sweep_cmd->add_option("--buffers", buffer_words, "buffer sizes (items)");
  sweep_cmd->add_option("--blocks", blocks, "comma list of slots, or 'all'");
  sweep_cmd->add_option("--jobs", jobs, "parallel simulations (default serial)");

  auto* minbuf = app.add_subcommand("minbuf", "minimum no-underrun buffer search");
  add_common(minbuf, opts);
  uint64_t cap = uint64_t{1} << 20;
  minbuf->add_option("--sw", sw, "software segment, slots i..j")->required();
  minbuf->add_option("--cap", cap, "search cap (items)");

  auto* fit = app.add_subcommand("fit", "power-law fit of (rate,size) points");
  add_common(fit, opts, false);
  std::string points_file;
  fit->add_option("--points", points_file,
                  "points CSV (default: bundled synthetic dataset)");

  auto* retrofit = app.add_subcommand("retrofit", "run the retrofit scenarios");
  add_common(retrofit, opts);
  std::string scenario = "all";
  retrofit->add_option("--scenario", scenario, "oqpsk | bpsk | gfsk | all");
  retrofit->add_option("--buffers", buffer_words, "buffer sizes (items)");

  auto* verify = app.add_subcommand("verify", "check the golden-vector corpus");
  add_common(verify, opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help/--version
    app.exit(e);
    return 2;
  }

  try {
    if (modulate->parsed()) return run_modulate(opts, format_name, iq_name);
    if (simulate_cmd->parsed()) return run_simulate(opts, sw, buffer);
    if (sweep_cmd->parsed()) return run_sweep(opts, buffer_words, blocks, jobs);
    if (minbuf->parsed()) return run_minbuf(opts, sw, cap);
    if (fit->parsed()) return run_fit(opts, points_file);
    if (retrofit->parsed()) return run_retrofit(opts, scenario, buffer_words);
    if (verify->parsed()) return run_verify(opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
