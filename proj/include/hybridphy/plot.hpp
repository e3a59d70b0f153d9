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

#include <string>
#include <vector>

namespace hphy {

// Minimal deterministic SVG plotter: line/scatter series on linear or log
// axes. Enough for the sweep, rate-profile and buffer-law figures.
class SvgPlot {
 public:
  SvgPlot(std::string title, std::string x_label, std::string y_label,
          bool x_log = false, bool y_log = false);

  void add_series(std::string name,
                  std::vector<std::pair<double, double>> points,
                  bool markers = true);

  std::string render() const;  // full SVG document
  void write(const std::string& path) const;

 private:
  std::string title_, x_label_, y_label_;
  bool x_log_, y_log_;
  struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
    bool markers;
  };
  std::vector<Series> series_;
};

}  // namespace hphy
