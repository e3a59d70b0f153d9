#!/usr/bin/env python3
# Copyright 2026 The hybridphy Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""One-shot generator for the default 41-tap pulse-shape files.

Run from the repository root. Writes data/taps/*.txt and prints the C++
hexfloat arrays embedded in src/block_data.cpp. The committed outputs are the
source of truth; this script only documents their provenance.

Shapes:
  * oqpsk_halfsine_41: half-sine pulse, h[n] = sin(pi*n/40), n = 0..40.
  * bpsk_rc_41: raised cosine, roll-off 1.0, 4 samples per chip,
    h(x) = sinc(x) * cos(pi*x) / (1 - 4*x^2) with x = (n-20)/4 chip periods
    (limit value pi/4*sinc(1/2) at |x| = 1/2).

Both are normalized to sum(|h|) = 1 so +/-1 inputs stay within [-1, 1].
"""

import math
import os


def halfsine41():
    return [math.sin(math.pi * n / 40.0) for n in range(41)]


def raised_cosine41():
    taps = []
    for n in range(41):
        x = (n - 20) / 4.0
        if abs(abs(x) - 0.5) < 1e-12:
            h = (math.pi / 4.0) * math.sin(math.pi * 0.5) / (math.pi * 0.5)
        elif x == 0.0:
            h = 1.0
        else:
            sinc = math.sin(math.pi * x) / (math.pi * x)
            h = sinc * math.cos(math.pi * x) / (1.0 - 4.0 * x * x)
        taps.append(h)
    return taps


def normalize(taps):
    scale = sum(abs(t) for t in taps)
    return [t / scale for t in taps]


def write_file(path, taps):
    with open(path, "w") as f:
        for t in taps:
            f.write(repr(t) + "\n")


def cpp_array(name, taps):
    body = ",\n    ".join(t.hex() for t in taps)
    return "const std::vector<double>& %s() {\n  static const std::vector<double> taps = {\n    %s,\n  };\n  return taps;\n}\n" % (name, body)


def main():
    os.makedirs("data/taps", exist_ok=True)
    hs = normalize(halfsine41())
    rc = normalize(raised_cosine41())
    write_file("data/taps/oqpsk_halfsine_41.txt", hs)
    write_file("data/taps/bpsk_rc_41.txt", rc)
    print(cpp_array("oqpsk_halfsine_taps", hs))
    print(cpp_array("bpsk_rc_taps", rc))


if __name__ == "__main__":
    main()
