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

#include "sirm/csv.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace sirm {
namespace {

std::vector<std::string> SplitLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string StripCr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

struct Header {
  int dim = 0;
  bool labeled = false;
};

Header ParseHeader(const std::string& line, const std::string& path) {
  const auto fields = SplitLine(line);
  Header h;
  h.labeled = !fields.empty() && fields.back() == "y";
  h.dim = static_cast<int>(fields.size()) - (h.labeled ? 1 : 0);
  if (h.dim < 1) throw Error(path + ":1: header has no coordinate columns");
  for (int i = 0; i < h.dim; ++i) {
    if (fields[i] != "x_" + std::to_string(i)) {
      throw Error(path + ":1: expected column x_" + std::to_string(i) +
                  ", found '" + fields[i] + "'");
    }
  }
  return h;
}

double ParseReal(const std::string& s, const std::string& where) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw Error(where + ": malformed number '" + s + "'");
  }
  return v;
}

std::ifstream OpenIn(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

std::string HeaderLine(int dim, bool labeled) {
  std::string h;
  for (int i = 0; i < dim; ++i) {
    if (i) h += ',';
    h += "x_" + std::to_string(i);
  }
  if (labeled) h += ",y";
  return h;
}

template <typename RowFn>
Header ReadRows(const std::string& path, bool want_labels, RowFn on_row) {
  auto in = OpenIn(path);
  std::string line;
  if (!std::getline(in, line)) throw Error(path + ":1: missing header");
  const Header h = ParseHeader(StripCr(line), path);
  if (h.labeled != want_labels) {
    throw Error(path + ":1: " +
                (want_labels ? "expected a label column 'y'"
                             : "unexpected label column 'y'"));
  }
  const size_t width = h.dim + (h.labeled ? 1 : 0);
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = StripCr(line);
    if (line.empty()) continue;
    const auto fields = SplitLine(line);
    const std::string where = path + ":" + std::to_string(line_no);
    if (fields.size() != width) {
      throw Error(where + ": expected " + std::to_string(width) +
                  " fields, found " + std::to_string(fields.size()));
    }
    std::vector<double> coords(h.dim);
    for (int i = 0; i < h.dim; ++i) coords[i] = ParseReal(fields[i], where);
    Label y = 0;
    if (h.labeled) {
      int v = -1;
      const auto& f = fields.back();
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size() || v < 0) {
        throw Error(where + ": malformed label '" + f + "'");
      }
      y = v;
    }
    try {
      on_row(Point(std::move(coords)), y);
    } catch (const Error& e) {
      throw Error(where + ": " + e.what());
    }
  }
  return h;
}

}  // namespace

std::string FormatReal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

LabeledSet LoadCsv(const std::string& path, std::optional<int> label_count) {
  std::vector<Point> points;
  std::vector<Label> labels;
  const Header h = ReadRows(path, true, [&](Point p, Label y) {
    points.push_back(std::move(p));
    labels.push_back(y);
  });
  int count = 1;
  if (!labels.empty()) count = *std::max_element(labels.begin(), labels.end()) + 1;
  if (label_count) {
    if (count > *label_count) {
      throw Error(path + ": label " + std::to_string(count - 1) +
                  " exceeds label count " + std::to_string(*label_count));
    }
    count = *label_count;
  }
  LabeledSet s(h.dim, count);
  for (size_t i = 0; i < points.size(); ++i) s.Add(points[i], labels[i]);
  return s;
}

UnlabeledSet LoadUnlabeledCsv(const std::string& path) {
  std::vector<Point> points;
  const Header h = ReadRows(path, false, [&](Point p, Label) {
    points.push_back(std::move(p));
  });
  return UnlabeledSet(h.dim, std::move(points));
}

bool CsvHasLabels(const std::string& path) {
  auto in = OpenIn(path);
  std::string line;
  if (!std::getline(in, line)) throw Error(path + ":1: missing header");
  return ParseHeader(StripCr(line), path).labeled;
}

void SaveCsv(const LabeledSet& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << HeaderLine(s.dim(), true) << '\n';
  for (int i = 0; i < s.size(); ++i) {
    for (double c : s.point(i).coords()) out << FormatReal(c) << ',';
    out << s.label(i) << '\n';
  }
}

void SaveUnlabeledCsv(const UnlabeledSet& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << HeaderLine(s.dim(), false) << '\n';
  for (int i = 0; i < s.size(); ++i) {
    const auto c = s.point(i).coords();
    for (size_t j = 0; j < c.size(); ++j) {
      if (j) out << ',';
      out << FormatReal(c[j]);
    }
    out << '\n';
  }
}

}  // namespace sirm
