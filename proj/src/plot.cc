// Copyright 2026 The SIRM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sirm/plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace sirm {
namespace {

constexpr double kWidth = 880;
constexpr double kHeight = 400;
// Risk panel.
constexpr double kLeft = 70, kRight = 520, kTop = 40, kBottom = 340;
// Selection panel.
constexpr double kBarLeft = 600, kBarRight = 860;

const char* const kCurveColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};
const char* const kMapColors[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52",
                                  "#8172b3", "#937860", "#da8bc3", "#8c8c8c"};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

void Text(std::ostringstream& o, double x, double y, const std::string& s,
          const char* anchor = "middle", int size = 12) {
  o << "<text x=\"" << Num(x) << "\" y=\"" << Num(y) << "\" font-size=\""
    << size << "\" text-anchor=\"" << anchor << "\">" << Escape(s)
    << "</text>\n";
}

void Line(std::ostringstream& o, double x1, double y1, double x2, double y2,
          const char* stroke = "#000", double width = 1) {
  o << "<line x1=\"" << Num(x1) << "\" y1=\"" << Num(y1) << "\" x2=\""
    << Num(x2) << "\" y2=\"" << Num(y2) << "\" stroke=\"" << stroke
    << "\" stroke-width=\"" << Num(width) << "\"/>\n";
}

}  // namespace

std::string RenderSweepSvg(const std::vector<SweepRecord>& records) {
  // learner -> n -> target risks; learner -> map -> count.
  std::map<std::string, std::map<int, std::vector<double>>> risks;
  std::map<std::string, std::map<int, int>> chosen;
  std::set<int> ns;
  std::set<int> maps;
  for (const auto& r : records) {
    if (r.status != "ok" || !r.target_risk) continue;
    risks[r.learner][r.n].push_back(*r.target_risk);
    ns.insert(r.n);
    if (r.chosen_map) {
      ++chosen[r.learner][*r.chosen_map];
      maps.insert(*r.chosen_map);
    }
  }

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
    << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
    << kHeight << "\" font-family=\"sans-serif\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";

  // Risk axes.
  double y_max = 0.1;
  for (const auto& [learner, by_n] : risks) {
    for (const auto& [n, v] : by_n) y_max = std::max(y_max, Quantile(v, 0.5));
  }
  y_max = std::min(1.0, std::ceil(y_max * 10.0 - 1e-9) / 10.0);
  Line(o, kLeft, kBottom, kRight, kBottom);
  Line(o, kLeft, kTop, kLeft, kBottom);
  Text(o, (kLeft + kRight) / 2, kBottom + 40, "training sample size n");
  o << "<text x=\"20\" y=\"" << Num((kTop + kBottom) / 2)
    << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
    << Num((kTop + kBottom) / 2) << ")\">median target risk</text>\n";
  Text(o, (kLeft + kRight) / 2, 24, "Target risk vs. n", "middle", 14);
  for (int i = 0; i <= 5; ++i) {
    const double v = y_max * i / 5.0;
    const double y = kBottom - (kBottom - kTop) * i / 5.0;
    Line(o, kLeft - 4, y, kLeft, y);
    Text(o, kLeft - 8, y + 4, Num(v), "end", 10);
  }

  // Selection axes.
  Line(o, kBarLeft, kBottom, kBarRight, kBottom);
  Line(o, kBarLeft, kTop, kBarLeft, kBottom);
  Text(o, (kBarLeft + kBarRight) / 2, 24, "Selected map frequency", "middle",
       14);
  for (int i = 0; i <= 4; ++i) {
    const double y = kBottom - (kBottom - kTop) * i / 4.0;
    Line(o, kBarLeft - 4, y, kBarLeft, y);
    Text(o, kBarLeft - 8, y + 4, Num(i / 4.0), "end", 10);
  }

  if (risks.empty()) {
    Text(o, (kLeft + kRight) / 2, (kTop + kBottom) / 2, "no data", "middle",
         16);
    Text(o, (kBarLeft + kBarRight) / 2, (kTop + kBottom) / 2, "no data",
         "middle", 16);
    o << "</svg>\n";
    return o.str();
  }

  // x positions: log scale over the distinct n values.
  const double lo = std::log(static_cast<double>(*ns.begin()));
  const double hi = std::log(static_cast<double>(*ns.rbegin()));
  auto x_of = [&](int n) {
    if (hi <= lo) return (kLeft + kRight) / 2;
    return kLeft + 20 + (kRight - kLeft - 40) * (std::log(double(n)) - lo) /
                            (hi - lo);
  };
  auto y_of = [&](double v) {
    return kBottom - (kBottom - kTop) * std::min(v, y_max) / y_max;
  };
  for (int n : ns) {
    Line(o, x_of(n), kBottom, x_of(n), kBottom + 4);
    Text(o, x_of(n), kBottom + 18, std::to_string(n), "middle", 10);
  }

  int curve = 0;
  for (const auto& [learner, by_n] : risks) {
    const char* color = kCurveColors[curve % std::size(kCurveColors)];
    std::string pts;
    for (const auto& [n, v] : by_n) {
      if (!pts.empty()) pts += ' ';
      pts += Num(x_of(n)) + "," + Num(y_of(Quantile(v, 0.5)));
    }
    o << "<polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"2\" points=\"" << pts << "\"/>\n";
    for (const auto& [n, v] : by_n) {
      o << "<circle cx=\"" << Num(x_of(n)) << "\" cy=\""
        << Num(y_of(Quantile(v, 0.5))) << "\" r=\"3\" fill=\"" << color
        << "\"/>\n";
    }
    const double ly = kTop + 14 + 16 * curve;
    Line(o, kRight - 130, ly - 4, kRight - 110, ly - 4, color, 2);
    Text(o, kRight - 104, ly, learner, "start", 11);
    ++curve;
  }

  // One stacked bar per learner.
  const double slot = (kBarRight - kBarLeft) / std::max<size_t>(1, risks.size());
  int bar = 0;
  for (const auto& [learner, by_n] : risks) {
    const auto it = chosen.find(learner);
    int total = 0;
    if (it != chosen.end()) {
      for (const auto& [m, c] : it->second) total += c;
    }
    const double x = kBarLeft + slot * bar + slot * 0.2;
    double y = kBottom;
    if (total > 0) {
      for (const auto& [m, c] : it->second) {
        const double h = (kBottom - kTop) * c / total;
        y -= h;
        o << "<rect x=\"" << Num(x) << "\" y=\"" << Num(y) << "\" width=\""
          << Num(slot * 0.6) << "\" height=\"" << Num(h) << "\" fill=\""
          << kMapColors[m % std::size(kMapColors)] << "\"/>\n";
      }
    }
    Text(o, x + slot * 0.3, kBottom + 18, learner, "middle", 10);
    ++bar;
  }
  int legend = 0;
  for (int m : maps) {
    const double ly = kBottom + 36;
    const double lx = kBarLeft + 70 * legend;
    o << "<rect x=\"" << Num(lx) << "\" y=\"" << Num(ly - 9)
      << "\" width=\"10\" height=\"10\" fill=\""
      << kMapColors[m % std::size(kMapColors)] << "\"/>\n";
    Text(o, lx + 14, ly, "map " + std::to_string(m), "start", 10);
    ++legend;
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace sirm
