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

#include "hybridphy/stream.hpp"

#include <cstring>
#include <stdexcept>

#include "hybridphy/util.hpp"

namespace hphy {

SymbolStream make_bytes(std::vector<uint8_t> bytes) {
  return SymbolStream{std::move(bytes), 8};
}

size_t stream_size(const Stream& s) {
  if (const auto* sym = std::get_if<SymbolStream>(&s)) return sym->items.size();
  return std::get<IQStream>(s).size();
}

bool stream_empty(const Stream& s) { return stream_size(s) == 0; }

uint32_t stream_item_bits(const Stream& s) {
  if (const auto* sym = std::get_if<SymbolStream>(&s)) return sym->width;
  return 32;  // two 16-bit rails on the wire
}

Stream stream_slice(const Stream& s, size_t pos, size_t n) {
  if (pos + n > stream_size(s)) throw std::out_of_range("stream_slice: range");
  if (const auto* sym = std::get_if<SymbolStream>(&s)) {
    SymbolStream out;
    out.width = sym->width;
    out.items.assign(sym->items.begin() + long(pos),
                     sym->items.begin() + long(pos + n));
    return out;
  }
  const auto& iq = std::get<IQStream>(s);
  return IQStream(iq.begin() + long(pos), iq.begin() + long(pos + n));
}

void stream_append(Stream& dst, const Stream& src) {
  if (stream_empty(src)) return;
  if (stream_empty(dst)) {
    dst = src;
    return;
  }
  if (dst.index() != src.index())
    throw std::invalid_argument("stream_append: kind mismatch");
  if (auto* sym = std::get_if<SymbolStream>(&dst)) {
    const auto& in = std::get<SymbolStream>(src);
    if (sym->width != in.width)
      throw std::invalid_argument("stream_append: width mismatch");
    sym->items.insert(sym->items.end(), in.items.begin(), in.items.end());
  } else {
    auto& iq = std::get<IQStream>(dst);
    const auto& in = std::get<IQStream>(src);
    iq.insert(iq.end(), in.begin(), in.end());
  }
}

bool stream_equal(const Stream& a, const Stream& b) {
  if (stream_empty(a) && stream_empty(b)) return true;
  return a == b;
}

uint64_t stream_digest(const Stream& s) {
  uint64_t h = 0xcbf29ce484222325ull;
  if (const auto* sym = std::get_if<SymbolStream>(&s)) {
    const uint8_t tag[2] = {0x01, sym->width};
    h = fnv1a64(tag, h);
    h = fnv1a64(std::span<const uint8_t>(sym->items.data(), sym->items.size()), h);
  } else {
    const auto& iq = std::get<IQStream>(s);
    const uint8_t tag[2] = {0x02, 32};
    h = fnv1a64(tag, h);
    for (const Sample& x : iq) {
      uint8_t buf[16];
      uint64_t bits_i, bits_q;
      std::memcpy(&bits_i, &x.i, 8);
      std::memcpy(&bits_q, &x.q, 8);
      for (int k = 0; k < 8; ++k) {
        buf[k] = uint8_t(bits_i >> (8 * k));
        buf[8 + k] = uint8_t(bits_q >> (8 * k));
      }
      h = fnv1a64(buf, h);
    }
  }
  return h;
}

void validate_symbols(const SymbolStream& s) {
  if (s.width != 1 && s.width != 2 && s.width != 4 && s.width != 8)
    throw std::invalid_argument("symbol stream: unsupported width");
  if (s.width == 8) return;
  const uint8_t limit = uint8_t(1u << s.width);
  for (uint8_t v : s.items)
    if (v >= limit)
      throw std::invalid_argument("symbol stream: item exceeds width");
}

}  // namespace hphy
