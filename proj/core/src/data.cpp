// Copyright 2026 The requp authors
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

#include "requp/data.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "requp/rng.hpp"

namespace requp {

Label label_circle(double x1, double x2) {
  return (x1 * x1 + x2 * x2 < kCircleRadiusSquared) ? Label::A : Label::B;
}

Label label_line(double x1, double x2) {
  return (x2 > x1) ? Label::A : Label::B;
}

Label label_point(Pattern pattern, double x1, double x2) {
  return pattern == Pattern::Circle ? label_circle(x1, x2)
                                    : label_line(x1, x2);
}

Dataset generate(Pattern pattern, int n, std::uint64_t seed) {
  if (n < 1) {
    throw std::invalid_argument("generate: dataset size must be >= 1");
  }
  Dataset out;
  out.seed = seed;
  out.pattern = pattern;
  out.points.reserve(static_cast<std::size_t>(n));
  SplitMix64 rng(seed);
  for (int i = 0; i < n; ++i) {
    const double x1 = rng.next_symmetric();
    const double x2 = rng.next_symmetric();
    out.points.push_back({x1, x2, label_point(pattern, x1, x2)});
  }
  return out;
}

const char* to_string(Pattern pattern) {
  return pattern == Pattern::Circle ? "circle" : "line";
}

Pattern pattern_from_string(const std::string& name) {
  if (name == "circle") return Pattern::Circle;
  if (name == "line") return Pattern::Line;
  throw std::invalid_argument("unknown pattern: " + name);
}

void save_csv(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("save_csv: cannot open " + path + " for writing");
  }
  out << "# seed=" << dataset.seed << "\n";
  out << "# pattern=" << to_string(dataset.pattern) << "\n";
  out << "x1,x2,label\n";
  char buf[128];
  for (const LabeledPoint& p : dataset.points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d\n", p.x1, p.x2,
                  static_cast<int>(p.label));
    out << buf;
  }
  if (!out) {
    throw std::runtime_error("save_csv: write failed for " + path);
  }
}

namespace {

[[noreturn]] void parse_fail(const std::string& path, int line,
                             const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

double parse_coordinate(const std::string& field, const std::string& path,
                        int line) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size() || field.empty() || errno != 0) {
    parse_fail(path, line, "malformed number '" + field + "'");
  }
  if (!(v >= -1.0 && v <= 1.0)) {
    parse_fail(path, line,
               "coordinate " + field + " outside [-1, 1] (validation error)");
  }
  return v;
}

}  // namespace

Dataset load_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("load_csv: cannot open " + path);
  }
  Dataset out;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# seed=", 0) == 0) {
        out.seed = std::strtoull(line.c_str() + 7, nullptr, 10);
      } else if (line.rfind("# pattern=", 0) == 0) {
        out.pattern = pattern_from_string(line.substr(10));
      }
      continue;
    }
    if (!header_seen) {
      if (line != "x1,x2,label") {
        parse_fail(path, lineno, "expected header 'x1,x2,label'");
      }
      header_seen = true;
      continue;
    }
    std::string fields[3];
    int nfields = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        if (nfields >= 3) parse_fail(path, lineno, "expected 3 fields");
        fields[nfields++] = line.substr(start, i - start);
        start = i + 1;
      }
    }
    if (nfields != 3) parse_fail(path, lineno, "expected 3 fields");
    LabeledPoint p{};
    p.x1 = parse_coordinate(fields[0], path, lineno);
    p.x2 = parse_coordinate(fields[1], path, lineno);
    if (fields[2] == "0") {
      p.label = Label::A;
    } else if (fields[2] == "1") {
      p.label = Label::B;
    } else {
      parse_fail(path, lineno, "label must be 0 or 1, got '" + fields[2] + "'");
    }
    out.points.push_back(p);
  }
  if (!header_seen) {
    throw std::runtime_error("load_csv: " + path + " has no header row");
  }
  if (out.points.empty()) {
    throw std::runtime_error("load_csv: " + path +
                             " contains no data rows (empty dataset)");
  }
  return out;
}

}  // namespace requp
