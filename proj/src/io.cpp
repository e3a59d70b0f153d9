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

#include "hybridphy/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hybridphy/util.hpp"

namespace hphy {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// IQ files
// ---------------------------------------------------------------------------

const char* to_string(IqFormat f) {
  return f == IqFormat::cf32le ? "cf32" : "ci16";
}

IqFormat iq_format_from_string(const std::string& name) {
  if (name == "cf32") return IqFormat::cf32le;
  if (name == "ci16") return IqFormat::ci16le;
  throw std::invalid_argument("unknown IQ format: " + name);
}

int16_t quantize_i16(double v) {
  // symmetric +/-32767, round half away from zero
  const double scaled = v * 32767.0;
  double q = scaled >= 0.0 ? std::floor(scaled + 0.5) : std::ceil(scaled - 0.5);
  q = std::min(32767.0, std::max(-32767.0, q));
  return int16_t(q);
}

IQStream quantize_stream_i16(const IQStream& in) {
  IQStream out;
  out.reserve(in.size());
  for (const Sample& s : in)
    out.push_back({double(quantize_i16(s.i)) / 32767.0,
                   double(quantize_i16(s.q)) / 32767.0});
  return out;
}

namespace {

constexpr char kMagic[4] = {'H', 'P', 'I', 'Q'};
constexpr size_t kHeaderSize = 32;

void put_u16(std::vector<uint8_t>& b, uint16_t v) {
  b.push_back(uint8_t(v));
  b.push_back(uint8_t(v >> 8));
}
void put_u32(std::vector<uint8_t>& b, uint32_t v) {
  for (int k = 0; k < 4; ++k) b.push_back(uint8_t(v >> (8 * k)));
}
void put_u64(std::vector<uint8_t>& b, uint64_t v) {
  for (int k = 0; k < 8; ++k) b.push_back(uint8_t(v >> (8 * k)));
}

uint16_t get_u16(const uint8_t* p) { return uint16_t(p[0] | (p[1] << 8)); }
uint32_t get_u32(const uint8_t* p) {
  uint32_t v = 0;
  for (int k = 3; k >= 0; --k) v = (v << 8) | p[k];
  return v;
}
uint64_t get_u64(const uint8_t* p) {
  uint64_t v = 0;
  for (int k = 7; k >= 0; --k) v = (v << 8) | p[k];
  return v;
}

void put_f32(std::vector<uint8_t>& b, double v) {
  const float f = float(v);
  uint32_t bits;
  std::memcpy(&bits, &f, 4);
  put_u32(b, bits);
}

double get_f32(const uint8_t* p) {
  const uint32_t bits = get_u32(p);
  float f;
  std::memcpy(&f, &bits, 4);
  return double(f);
}

std::vector<uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  return std::vector<uint8_t>((std::istreambuf_iterator<char>(f)),
                              std::istreambuf_iterator<char>());
}

}  // namespace

void write_iq(const std::string& path, const IQStream& samples, IqFormat format,
              uint64_t sample_rate, uint32_t preset_id) {
  std::vector<uint8_t> buf;
  buf.reserve(kHeaderSize + samples.size() * 8);
  buf.insert(buf.end(), kMagic, kMagic + 4);
  put_u16(buf, 1);
  put_u16(buf, uint16_t(format));
  put_u64(buf, sample_rate);
  put_u32(buf, preset_id);
  put_u32(buf, 0);
  put_u64(buf, samples.size());
  for (const Sample& s : samples) {
    if (format == IqFormat::cf32le) {
      put_f32(buf, s.i);
      put_f32(buf, s.q);
    } else {
      put_u16(buf, uint16_t(quantize_i16(s.i)));
      put_u16(buf, uint16_t(quantize_i16(s.q)));
    }
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  f.write(reinterpret_cast<const char*>(buf.data()), long(buf.size()));
}

IqFile read_iq(const std::string& path) {
  const std::vector<uint8_t> buf = read_file_bytes(path);
  if (buf.size() < kHeaderSize)
    throw std::runtime_error("iq file truncated (no header): " + path);
  if (std::memcmp(buf.data(), kMagic, 4) != 0)
    throw std::runtime_error("iq file has bad magic: " + path);

  IqFile out;
  out.header.version = get_u16(buf.data() + 4);
  const uint16_t fmt = get_u16(buf.data() + 6);
  if (fmt != uint16_t(IqFormat::cf32le) && fmt != uint16_t(IqFormat::ci16le))
    throw std::runtime_error("iq file has unknown format code: " + path);
  out.header.format = IqFormat(fmt);
  out.header.sample_rate = get_u64(buf.data() + 8);
  out.header.preset_id = get_u32(buf.data() + 16);
  out.header.item_count = get_u64(buf.data() + 24);

  const size_t item_bytes = out.header.format == IqFormat::cf32le ? 8 : 4;
  const size_t expected = kHeaderSize + out.header.item_count * item_bytes;
  if (buf.size() != expected)
    throw std::runtime_error("iq file item count mismatches payload: " + path);

  out.samples.reserve(out.header.item_count);
  const uint8_t* p = buf.data() + kHeaderSize;
  for (uint64_t n = 0; n < out.header.item_count; ++n) {
    if (out.header.format == IqFormat::cf32le) {
      out.samples.push_back({get_f32(p), get_f32(p + 4)});
      p += 8;
    } else {
      out.samples.push_back({double(int16_t(get_u16(p))) / 32767.0,
                             double(int16_t(get_u16(p + 2))) / 32767.0});
      p += 4;
    }
  }
  return out;
}

uint64_t iq_payload_digest(const std::string& path) {
  const std::vector<uint8_t> buf = read_file_bytes(path);
  if (buf.size() < kHeaderSize)
    throw std::runtime_error("iq file truncated (no header): " + path);
  return fnv1a64(std::span<const uint8_t>(buf.data() + kHeaderSize,
                                          buf.size() - kHeaderSize));
}

// ---------------------------------------------------------------------------
// Text inputs
// ---------------------------------------------------------------------------

std::vector<double> load_taps(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::vector<double> taps;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    taps.push_back(std::stod(line));
  }
  if (taps.size() != kFirTaps)
    throw std::runtime_error("tap file must hold exactly 41 lines: " + path);
  return taps;
}

void write_taps(const std::string& path, const std::vector<double>& taps) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  char buf[64];
  for (double t : taps) {
    std::snprintf(buf, sizeof(buf), "%.17g", t);
    f << buf << '\n';
  }
}

ChipTable load_chip_table(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  ChipTable table;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<uint8_t> row;
    for (char c : line) {
      if (c == '0')
        row.push_back(0);
      else if (c == '1')
        row.push_back(1);
      else if (c != ' ' && c != '\r')
        throw std::runtime_error("chip table: bad character in " + path);
    }
    if (!row.empty()) table.rows.push_back(std::move(row));
  }
  table.validate();
  return table;
}

void write_chip_table(const std::string& path, const ChipTable& table) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  for (const auto& row : table.rows) {
    for (uint8_t c : row) f << char('0' + c);
    f << '\n';
  }
}

namespace {

std::string trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::map<std::string, std::string> load_kv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(f, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == '[') continue;
    const size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("bad key=value line in " + path + ": " + line);
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return kv;
}

CostModel load_cost_model(const std::string& path) {
  const auto kv = load_kv(path);
  CostModel cm = default_cost_model();
  auto set_u64 = [&](const char* key, uint64_t& field) {
    auto it = kv.find(key);
    if (it != kv.end()) field = std::stoull(it->second);
  };
  set_u64("cpu_hz", cm.cpu_hz);
  set_u64("irq_latency_cycles", cm.irq_latency_cycles);
  set_u64("cache_op_cycles", cm.cache_op_cycles);
  set_u64("dma_setup_cycles", cm.dma_setup_cycles);
  set_u64("loop_cycles", cm.loop_cycles);
  set_u64("init_cycles", cm.init_cycles);
  set_u64("end_cycles", cm.end_cycles);
  set_u64("copy_cycles_per_byte", cm.copy_cycles_per_byte);
  for (int k = 0; k < kNumSlots; ++k) {
    const BlockKind kind = BlockKind(k);
    auto it = kv.find(std::string("dsp.") + to_string(kind));
    if (it != kv.end()) cm.dsp_cycles_per_item[kind] = std::stoull(it->second);
  }
  return cm;
}

void write_cost_model(const std::string& path, const CostModel& cm) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  f << "# CPU/DMA cost model, all values in CPU cycles\n";
  f << "cpu_hz = " << cm.cpu_hz << '\n';
  f << "irq_latency_cycles = " << cm.irq_latency_cycles << '\n';
  f << "cache_op_cycles = " << cm.cache_op_cycles << '\n';
  f << "dma_setup_cycles = " << cm.dma_setup_cycles << '\n';
  f << "loop_cycles = " << cm.loop_cycles << '\n';
  f << "init_cycles = " << cm.init_cycles << '\n';
  f << "end_cycles = " << cm.end_cycles << '\n';
  f << "copy_cycles_per_byte = " << cm.copy_cycles_per_byte << '\n';
  for (int k = 0; k < kNumSlots; ++k) {
    const BlockKind kind = BlockKind(k);
    f << "dsp." << to_string(kind) << " = " << cm.dsp_cost(kind) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Pipeline config files
// ---------------------------------------------------------------------------

namespace {

struct Section {
  std::string header;
  std::map<std::string, std::string> kv;
};

std::vector<Section> load_sections(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::vector<Section> sections;
  std::string line;
  while (std::getline(f, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      sections.push_back(Section{trim(t.substr(1, t.size() - 2)), {}});
      continue;
    }
    if (sections.empty())
      throw std::runtime_error("config line outside any section in " + path);
    const size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("bad key=value line in " + path + ": " + line);
    sections.back().kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return sections;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!trim(cur).empty()) out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

ChipTable resolve_chip_table(const std::string& name, const fs::path& base) {
  if (name == "oqpsk") return oqpsk_chip_table();
  if (name == "bpsk") return bpsk_chip_table();
  return load_chip_table((base / name).string());
}

std::vector<double> resolve_taps(const std::string& name, const fs::path& base) {
  if (name == "halfsine41") return oqpsk_halfsine_taps();
  if (name == "rc41") return bpsk_rc_taps();
  return load_taps((base / name).string());
}

PipelineConfig config_from_section(const Section& sec, const fs::path& base) {
  PipelineConfig cfg;

  std::istringstream hs(sec.header);
  std::string word, label;
  hs >> word >> label;
  if (word == "preset") {
    const int id = std::stoi(label);
    cfg.preset = preset_info(id);
  }
  auto get = [&](const char* key) -> std::optional<std::string> {
    auto it = sec.kv.find(key);
    if (it == sec.kv.end()) return std::nullopt;
    return it->second;
  };
  if (auto v = get("name")) cfg.name = *v;

  if (auto v = get("modulation")) {
    // informational in user configs; presets already carry it
    (void)v;
  }
  if (cfg.preset) {
    // user config may restate the Table-1 rates; verify them when present
    if (auto v = get("data_rate"); v && std::stoull(*v) != cfg.preset->data_rate)
      throw std::runtime_error("preset data_rate mismatch in config");
    if (auto v = get("symbol_rate");
        v && std::stoull(*v) != cfg.preset->symbol_rate)
      throw std::runtime_error("preset symbol_rate mismatch in config");
    if (auto v = get("sample_rate");
        v && std::stoull(*v) != cfg.preset->sample_rate)
      throw std::runtime_error("preset sample_rate mismatch in config");
  }

  const auto enabled_names = split_list(get("enabled").value_or(""));
  for (const std::string& bname : enabled_names) {
    const BlockKind kind = block_kind_from_string(bname);
    BlockConfig& stage = cfg.stages[size_t(kind)];
    stage.enabled = true;
    switch (kind) {
      case BlockKind::splitter: {
        const std::string mode = get("splitter").value_or("bits");
        if (mode != "bits" && mode != "nibbles")
          throw std::runtime_error("splitter mode must be bits|nibbles");
        stage.params = SplitterParams{mode == "bits" ? SplitMode::bits
                                                     : SplitMode::nibbles};
        break;
      }
      case BlockKind::pn9:
        stage.params = Pn9Params{
            uint16_t(std::stoul(get("pn9_seed").value_or("511"), nullptr, 0))};
        break;
      case BlockKind::clock:
        stage.params =
            ClockParams{uint8_t(std::stoul(get("clock_start").value_or("0")))};
        break;
      case BlockKind::diffenc:
        stage.params = DiffencParams{};
        break;
      case BlockKind::chip: {
        const auto name = get("chip_table");
        if (!name) throw std::runtime_error("chip block requires chip_table");
        stage.params = ChipParams{resolve_chip_table(*name, base)};
        break;
      }
      case BlockKind::mapper: {
        const auto cname = get("mapper");
        if (!cname) throw std::runtime_error("mapper block requires mapper=");
        Constellation c;
        if (*cname == "bipolar")
          c = Constellation::bipolar;
        else if (*cname == "oqpsk_interleave")
          c = Constellation::oqpsk_interleave;
        else if (*cname == "quadrant")
          c = Constellation::quadrant;
        else
          throw std::runtime_error("unknown constellation: " + *cname);
        stage.params = MapperParams{
            c, unsigned(std::stoul(get("mapper_hold").value_or("1")))};
        break;
      }
      case BlockKind::fir: {
        const auto name = get("fir_taps");
        if (!name) throw std::runtime_error("fir block requires fir_taps");
        stage.params = FirParams{resolve_taps(*name, base), false};
        break;
      }
      case BlockKind::zpad: {
        const auto spec = get("zpad");
        if (!spec) throw std::runtime_error("zpad block requires zpad=N per M");
        std::istringstream zs(*spec);
        unsigned n = 0, m = 1;
        std::string per;
        if (!(zs >> n >> per >> m) || per != "per")
          throw std::runtime_error("zpad must be \"N per M\"");
        stage.params = ZpadParams{n, m};
        break;
      }
      case BlockKind::offset:
        stage.params = OffsetParams{
            unsigned(std::stoul(get("offset_delay").value_or("0")))};
        break;
    }
  }

  cfg.validate();
  return cfg;
}

}  // namespace

std::vector<PipelineConfig> load_pipeline_file(const std::string& path) {
  const fs::path base = fs::path(path).parent_path();
  std::vector<PipelineConfig> configs;
  for (const Section& sec : load_sections(path))
    configs.push_back(config_from_section(sec, base));
  if (configs.empty())
    throw std::runtime_error("no pipeline sections in " + path);
  return configs;
}

PipelineConfig load_pipeline_config(const std::string& path,
                                    const std::string& name) {
  for (PipelineConfig& cfg : load_pipeline_file(path)) {
    if (cfg.name == name || (cfg.preset && std::to_string(cfg.preset->id) == name))
      return cfg;
  }
  throw std::runtime_error("no pipeline named '" + name + "' in " + path);
}

std::vector<uint8_t> read_packet(const std::string& path) {
  return read_file_bytes(path);
}

void write_packet(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  f.write(reinterpret_cast<const char*>(bytes.data()), long(bytes.size()));
}

std::vector<std::pair<double, double>> load_points_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::vector<std::pair<double, double>> points;
  std::string line;
  bool first = true;
  while (std::getline(f, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (first) {  // header row
      first = false;
      continue;
    }
    const size_t comma = t.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("points csv: expected two columns in " + path);
    points.emplace_back(std::stod(t.substr(0, comma)),
                        std::stod(t.substr(comma + 1)));
  }
  return points;
}

// ---------------------------------------------------------------------------
// Golden corpus
// ---------------------------------------------------------------------------

std::vector<GoldenVector> load_golden_manifest(const std::string& path) {
  std::vector<GoldenVector> vectors;
  for (const Section& sec : load_sections(path)) {
    std::istringstream hs(sec.header);
    std::string word, label;
    hs >> word >> label;
    if (word != "golden")
      throw std::runtime_error("golden manifest: unexpected section " + sec.header);
    GoldenVector v;
    v.name = label;
    v.packet_file = sec.kv.at("packet");
    v.preset_id = std::stoi(sec.kv.at("preset"));
    v.iq_file = sec.kv.at("iq");
    v.tolerance = std::stod(sec.kv.at("tolerance"));
    v.payload_digest = std::stoull(sec.kv.at("digest"), nullptr, 16);
    vectors.push_back(std::move(v));
  }
  if (vectors.empty())
    throw std::runtime_error("golden manifest is empty: " + path);
  return vectors;
}

GoldenCheck verify_golden(const GoldenVector& vec, const std::string& data_dir,
                          const PipelineConfig* override_cfg) {
  GoldenCheck check;
  check.name = vec.name;

  const fs::path base = fs::path(data_dir) / "golden";
  const std::string iq_path = (base / vec.iq_file).string();
  if (!fs::exists(iq_path)) {
    check.message = "missing corpus file: " + iq_path;
    return check;
  }

  check.digest_ok = iq_payload_digest(iq_path) == vec.payload_digest;

  const std::vector<uint8_t> packet = read_packet((base / vec.packet_file).string());
  const PipelineConfig cfg =
      override_cfg ? *override_cfg : build_preset(vec.preset_id);
  const Stream out = run_pipeline(cfg, packet);
  const IQStream& produced = std::get<IQStream>(out);

  const IqFile golden = read_iq(iq_path);
  if (golden.samples.size() != produced.size()) {
    check.message = "length mismatch";
    return check;
  }

  // fixed-point vectors compare against the quantized pipeline output
  const IQStream compare = golden.header.format == IqFormat::ci16le
                               ? quantize_stream_i16(produced)
                               : produced;
  double max_err = 0.0;
  for (size_t n = 0; n < compare.size(); ++n) {
    max_err = std::max(max_err, std::abs(compare[n].i - golden.samples[n].i));
    max_err = std::max(max_err, std::abs(compare[n].q - golden.samples[n].q));
  }
  check.max_abs_error = max_err;
  check.pass = check.digest_ok && max_err <= vec.tolerance;
  if (!check.pass && check.message.empty())
    check.message = check.digest_ok ? "tolerance exceeded" : "digest mismatch";
  return check;
}

// ---------------------------------------------------------------------------
// Run artifacts
// ---------------------------------------------------------------------------

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  for (size_t c = 0; c < header.size(); ++c)
    f << header[c] << (c + 1 < header.size() ? "," : "\n");
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("csv row width mismatches header");
    for (size_t c = 0; c < row.size(); ++c)
      f << row[c] << (c + 1 < row.size() ? "," : "\n");
  }
}

void write_run_report(const std::string& path, const RunReport& report) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  f << "preset_id = " << report.preset_id << '\n';
  f << "sw_first = " << report.plan.sw_first << '\n';
  f << "sw_last = " << report.plan.sw_last << '\n';
  f << "buffer_items = " << report.plan.buffer_items << '\n';
  f << "ring_capacity = " << report.ring_capacity << '\n';
  f << "underrun = " << (report.underrun ? 1 : 0) << '\n';
  f << "underrun_cycle = " << report.underrun_cycle << '\n';
  f << "underrun_seconds = " << format_double(report.underrun_seconds) << '\n';
  f << "gated_fraction = " << format_double(report.gated_fraction) << '\n';
  f << "total_cycles = " << report.total_cycles << '\n';
  f << "dac_start_cycle = " << report.dac_start_cycle << '\n';
  f << "output_items = " << report.output_items << '\n';
  char digest[32];
  std::snprintf(digest, sizeof(digest), "%016llx",
                static_cast<unsigned long long>(report.output_digest));
  f << "output_digest = " << digest << '\n';
  f << "sw_in_rate = " << report.sw_in_rate << '\n';
  f << "sw_out_rate = " << report.sw_out_rate << '\n';
  f << "sw_bit_traffic = " << report.sw_bit_traffic << '\n';
  f << "irq_edges = " << report.irq_edges << '\n';
  f << "irq_sleeps = " << report.irq_sleeps << '\n';
  f << "phase.init = " << report.phases.init << '\n';
  f << "phase.loop = " << report.phases.loop << '\n';
  f << "phase.irq = " << report.phases.irq << '\n';
  f << "phase.read = " << report.phases.read << '\n';
  f << "phase.dsp = " << report.phases.dsp << '\n';
  f << "phase.write = " << report.phases.write << '\n';
  f << "phase.end = " << report.phases.end << '\n';
  f << "phase.gated = " << report.phases.gated << '\n';
  for (const auto& [kind, cycles] : report.phases.dsp_by_kind)
    f << "dsp." << to_string(kind) << " = " << cycles << '\n';
  for (int b = 0; b <= kNumSlots; ++b) {
    const RateBoundary& rb = report.rates.boundaries[size_t(b)];
    f << "rate." << b << " = " << rb.items_per_s << " items/s, " << rb.item_bits
      << " bits\n";
  }
}

void write_manifest(const std::string& path,
                    const std::map<std::string, std::string>& resolved) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  for (const auto& [key, value] : resolved)
    if (key != "timestamp") f << key << " = " << value << '\n';
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  f << "timestamp = "
    << std::chrono::duration_cast<std::chrono::seconds>(now).count() << '\n';
}

std::string default_data_dir() {
#ifdef HYBRIDPHY_DATA_DIR
  return HYBRIDPHY_DATA_DIR;
#else
  return "data";
#endif
}

}  // namespace hphy
