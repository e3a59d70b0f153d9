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

#include <stdexcept>

#include "doctest.h"
#include "hybridphy/stream.hpp"
#include "hybridphy/util.hpp"

using namespace hphy;

TEST_CASE("stream slicing and appending round-trips") {
  SplitMix64 rng(0x51ce);
  const SymbolStream sym{random_packet(100, rng.next()), 8};
  Stream rebuilt = stream_slice(sym, 0, 0);
  size_t pos = 0;
  while (pos < 100) {
    const size_t n = std::min<size_t>(1 + rng.next_below(13), 100 - pos);
    stream_append(rebuilt, stream_slice(sym, pos, n));
    pos += n;
  }
  CHECK(stream_equal(rebuilt, sym));
  CHECK(stream_digest(rebuilt) == stream_digest(Stream{sym}));
}

TEST_CASE("stream kind and width mismatches are rejected") {
  Stream a = SymbolStream{{1, 0}, 1};
  CHECK_THROWS_AS(stream_append(a, IQStream{{1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(stream_append(a, Stream{SymbolStream{{2}, 4}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(stream_slice(a, 1, 5), std::out_of_range);
}

TEST_CASE("digest separates kinds, widths and values") {
  const Stream bits1 = SymbolStream{{1, 0, 1}, 1};
  const Stream bits2 = SymbolStream{{1, 0, 0}, 1};
  const Stream nib = SymbolStream{{1, 0, 1}, 4};
  CHECK(stream_digest(bits1) != stream_digest(bits2));
  CHECK(stream_digest(bits1) != stream_digest(nib));
  const Stream iq1 = IQStream{{1.0, -1.0}};
  const Stream iq2 = IQStream{{1.0, 1.0}};
  CHECK(stream_digest(iq1) != stream_digest(iq2));
}

TEST_CASE("symbol width validation") {
  CHECK_NOTHROW(validate_symbols(SymbolStream{{3, 2, 1}, 2}));
  CHECK_THROWS_AS(validate_symbols(SymbolStream{{4}, 2}), std::invalid_argument);
  CHECK_THROWS_AS(validate_symbols(SymbolStream{{0}, 3}), std::invalid_argument);
}
