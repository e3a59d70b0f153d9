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

#include "hybridphy/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hybridphy/util.hpp"

namespace hphy {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 55;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label,
                 bool x_log, bool y_log)
    : title_(std::move(title)),
      x_label_(std::move(x_label)),
      y_label_(std::move(y_label)),
      x_log_(x_log),
      y_log_(y_log) {}

void SvgPlot::add_series(std::string name,
                         std::vector<std::pair<double, double>> points,
                         bool markers) {
  series_.push_back(Series{std::move(name), std::move(points), markers});
}

std::string SvgPlot::render() const {
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool have = false;
  for (const Series& s : series_) {
    for (const auto& [x, y] : s.points) {
      if (x_log_ && x <= 0) continue;
      if (y_log_ && y <= 0) continue;
      if (!have) {
        xmin = xmax = x;
        ymin = ymax = y;
        have = true;
      } else {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
    }
  }
  if (!have) throw std::invalid_argument("SvgPlot: no plottable points");
  if (xmin == xmax) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymin == ymax) {
    ymin = y_log_ ? ymin * 0.5 : ymin - 0.5;
    ymax = y_log_ ? ymax * 2.0 : ymax + 0.5;
  }

  auto tx = [&](double v) {
    const double a = x_log_ ? std::log10(v) : v;
    const double lo = x_log_ ? std::log10(xmin) : xmin;
    const double hi = x_log_ ? std::log10(xmax) : xmax;
    return kLeft + (a - lo) / (hi - lo) * (kWidth - kLeft - kRight);
  };
  auto ty = [&](double v) {
    const double a = y_log_ ? std::log10(v) : v;
    const double lo = y_log_ ? std::log10(ymin) : ymin;
    const double hi = y_log_ ? std::log10(ymax) : ymax;
    return kHeight - kBottom - (a - lo) / (hi - lo) * (kHeight - kTop - kBottom);
  };

  auto ticks = [](double lo, double hi, bool log_axis) {
    std::vector<double> out;
    if (log_axis) {
      const int d0 = int(std::floor(std::log10(lo)));
      const int d1 = int(std::ceil(std::log10(hi)));
      for (int d = d0; d <= d1; ++d) {
        const double v = std::pow(10.0, d);
        if (v >= lo * 0.999 && v <= hi * 1.001) out.push_back(v);
      }
      if (out.empty()) out = {lo, hi};
    } else {
      for (int i = 0; i <= 5; ++i) out.push_back(lo + (hi - lo) * i / 5.0);
    }
    return out;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\">\n";
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-size=\"15\">" << xml_escape(title_) << "</text>\n";

  // axes
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
      << kWidth - kRight << "\" y2=\"" << kHeight - kBottom
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"black\"/>\n";

  for (double v : ticks(xmin, xmax, x_log_)) {
    const double px = tx(v);
    svg << "<line x1=\"" << format_double(px) << "\" y1=\"" << kHeight - kBottom
        << "\" x2=\"" << format_double(px) << "\" y2=\"" << kHeight - kBottom + 5
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << format_double(px) << "\" y=\"" << kHeight - kBottom + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">" << format_double(v)
        << "</text>\n";
  }
  for (double v : ticks(ymin, ymax, y_log_)) {
    const double py = ty(v);
    svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << format_double(py)
        << "\" x2=\"" << kLeft << "\" y2=\"" << format_double(py)
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << format_double(py + 4)
        << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(v)
        << "</text>\n";
  }
  svg << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\""
      << kHeight - 12 << "\" text-anchor=\"middle\" font-size=\"12\">"
      << xml_escape(x_label_) << "</text>\n";
  svg << "<text x=\"16\" y=\"" << (kTop + kHeight - kBottom) / 2
      << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
      << (kTop + kHeight - kBottom) / 2 << ")\">" << xml_escape(y_label_)
      << "</text>\n";

  // series
  for (size_t si = 0; si < series_.size(); ++si) {
    const Series& s = series_[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::ostringstream path;
    bool first = true;
    for (const auto& [x, y] : s.points) {
      if ((x_log_ && x <= 0) || (y_log_ && y <= 0)) continue;
      path << (first ? "M" : " L") << format_double(tx(x)) << ' '
           << format_double(ty(y));
      first = false;
      if (s.markers)
        svg << "<circle cx=\"" << format_double(tx(x)) << "\" cy=\""
            << format_double(ty(y)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    if (!first)
      svg << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\"/>\n";
    // legend
    const double ly = kTop + 14 * double(si);
    svg << "<line x1=\"" << kWidth - kRight - 150 << "\" y1=\"" << ly
        << "\" x2=\"" << kWidth - kRight - 130 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << kWidth - kRight - 125 << "\" y=\"" << ly + 4
        << "\" font-size=\"11\">" << xml_escape(s.name) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void SvgPlot::write(const std::string& path) const {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  f << render();
}

}  // namespace hphy
