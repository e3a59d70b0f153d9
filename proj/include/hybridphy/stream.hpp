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
#include <variant>
#include <vector>

namespace hphy {

// One complex baseband sample. All shipped configurations keep |i|,|q| <= 1.
struct Sample {
  double i = 0.0;
  double q = 0.0;
  friend bool operator==(const Sample&, const Sample&) = default;
};

using IQStream = std::vector<Sample>;

// Small unsigned integers of a fixed bit width. Raw bytes are width-8 items,
// so every inter-stage boundary carries either a SymbolStream or an IQStream.
struct SymbolStream {
  std::vector<uint8_t> items;
  uint8_t width = 8;  // bits per item: 1, 2, 4 or 8

  friend bool operator==(const SymbolStream&, const SymbolStream&) = default;
};

using Stream = std::variant<SymbolStream, IQStream>;

SymbolStream make_bytes(std::vector<uint8_t> bytes);

size_t stream_size(const Stream& s);
bool stream_empty(const Stream& s);

// Bits per item as moved across an interposer boundary: the symbol width for
// symbol streams, 32 for IQ samples (two 16-bit rails).
uint32_t stream_item_bits(const Stream& s);

// [pos, pos+n) slice, same kind/width. pos+n must not exceed the size.
Stream stream_slice(const Stream& s, size_t pos, size_t n);

// Appends src to dst. Empty sources are ignored regardless of kind; otherwise
// the kinds (and widths) must match.
void stream_append(Stream& dst, const Stream& src);

bool stream_equal(const Stream& a, const Stream& b);

// Deterministic content digest (kind, width, count, raw item bytes).
uint64_t stream_digest(const Stream& s);

// Throws std::invalid_argument unless every item fits the declared width.
void validate_symbols(const SymbolStream& s);

}  // namespace hphy
