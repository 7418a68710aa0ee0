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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "requp/harness.hpp"

namespace requp {

namespace {

const char* kResultsHeader =
    "cost,pattern,method,mode,layers,train_size,test_size,reps,"
    "mean_train_acc,min_train_acc,max_train_acc,"
    "mean_test_acc,min_test_acc,max_test_acc,"
    "mean_final_cost,total_evals,master_seed,rep_seeds";

// Shortest round-trip decimal form; deterministic and locale-free.
std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (start <= line.size()) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) pos = line.size();
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

double parse_double(const std::string& field, const std::string& context) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size()) {
    throw std::runtime_error(context + ": malformed number '" + field + "'");
  }
  return v;
}

long parse_long(const std::string& field, const std::string& context) {
  char* end = nullptr;
  const long v = std::strtol(field.c_str(), &end, 10);
  if (field.empty() || end != field.c_str() + field.size()) {
    throw std::runtime_error(context + ": malformed integer '" + field + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& field, const std::string& context) {
  char* end = nullptr;
  const std::uint64_t v = std::strtoull(field.c_str(), &end, 10);
  if (field.empty() || end != field.c_str() + field.size()) {
    throw std::runtime_error(context + ": malformed seed '" + field + "'");
  }
  return v;
}

}  // namespace

void emit_csv(const std::vector<AccuracyRecord>& records,
              const std::string& path) {
  if (records.empty()) {
    throw std::invalid_argument("emit_csv: no records");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("emit_csv: cannot open " + path + " for writing");
  }
  out << kResultsHeader << "\n";
  for (const AccuracyRecord& r : records) {
    out << to_string(r.cost) << ',' << to_string(r.pattern) << ','
        << to_string(r.method) << ',' << to_string(r.mode) << ',' << r.layers
        << ',' << r.train_size << ',' << r.test_size << ',' << r.repetitions
        << ',' << format_double(r.mean_train_acc) << ','
        << format_double(r.min_train_acc) << ','
        << format_double(r.max_train_acc) << ','
        << format_double(r.mean_test_acc) << ','
        << format_double(r.min_test_acc) << ','
        << format_double(r.max_test_acc) << ','
        << format_double(r.mean_final_cost) << ',' << r.total_evals << ','
        << r.master_seed << ',';
    for (std::size_t i = 0; i < r.rep_seeds.size(); ++i) {
      if (i > 0) out << ';';
      out << r.rep_seeds[i];
    }
    out << "\n";
  }
  if (!out) {
    throw std::runtime_error("emit_csv: write failed for " + path);
  }
}

std::vector<AccuracyRecord> load_results_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("load_results_csv: cannot open " + path);
  }
  std::string line;
  int lineno = 0;
  std::vector<AccuracyRecord> records;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1) {
      if (line != kResultsHeader) {
        throw std::runtime_error("load_results_csv: " + path +
                                 ": unexpected header");
      }
      continue;
    }
    const std::string context = path + ":" + std::to_string(lineno);
    const std::vector<std::string> f = split(line, ',');
    if (f.size() != 18) {
      throw std::runtime_error(context + ": expected 18 fields, got " +
                               std::to_string(f.size()));
    }
    AccuracyRecord r;
    r.cost = cost_from_string(f[0]);
    r.pattern = pattern_from_string(f[1]);
    r.method = method_from_string(f[2]);
    r.mode = mode_from_string(f[3]);
    r.layers = static_cast<int>(parse_long(f[4], context));
    r.train_size = static_cast<int>(parse_long(f[5], context));
    r.test_size = static_cast<int>(parse_long(f[6], context));
    r.repetitions = static_cast<int>(parse_long(f[7], context));
    r.mean_train_acc = parse_double(f[8], context);
    r.min_train_acc = parse_double(f[9], context);
    r.max_train_acc = parse_double(f[10], context);
    r.mean_test_acc = parse_double(f[11], context);
    r.min_test_acc = parse_double(f[12], context);
    r.max_test_acc = parse_double(f[13], context);
    r.mean_final_cost = parse_double(f[14], context);
    r.total_evals = parse_long(f[15], context);
    r.master_seed = parse_u64(f[16], context);
    if (!f[17].empty()) {
      for (const std::string& s : split(f[17], ';')) {
        r.rep_seeds.push_back(parse_u64(s, context));
      }
    }
    records.push_back(std::move(r));
  }
  return records;
}

namespace {

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string polyline_points(const std::vector<AccuracyRecord>& records,
                            bool train, double x_min, double x_max,
                            double plot_x, double plot_y, double plot_w,
                            double plot_h) {
  std::ostringstream pts;
  for (const AccuracyRecord& r : records) {
    const double fx =
        x_max > x_min
            ? (static_cast<double>(r.train_size) - x_min) / (x_max - x_min)
            : 0.5;
    const double acc = train ? r.mean_train_acc : r.mean_test_acc;
    const double px = plot_x + fx * plot_w;
    const double py = plot_y + (1.0 - acc) * plot_h;
    pts << px << ',' << py << ' ';
  }
  return pts.str();
}

}  // namespace

void emit_svg(const std::vector<AccuracyRecord>& records,
              const std::string& path) {
  if (records.empty()) {
    throw std::invalid_argument("emit_svg: no records");
  }
  std::vector<AccuracyRecord> sorted = records;
  std::sort(sorted.begin(), sorted.end(),
            [](const AccuracyRecord& a, const AccuracyRecord& b) {
              return a.train_size < b.train_size;
            });
  const double x_min = sorted.front().train_size;
  const double x_max = sorted.back().train_size;

  constexpr double kWidth = 800, kHeight = 500;
  constexpr double kPlotX = 70, kPlotY = 50, kPlotW = 680, kPlotH = 380;

  ExperimentCell cell;
  cell.cost = sorted.front().cost;
  cell.pattern = sorted.front().pattern;
  cell.method = sorted.front().method;
  cell.mode = sorted.front().mode;
  cell.layers = sorted.front().layers;
  const std::string title =
      std::string(to_string(cell.cost)) + " cost, " +
      to_string(cell.pattern) + " pattern, " + to_string(cell.method) + ", " +
      to_string(cell.mode) + " data, N=" + std::to_string(cell.layers);

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("emit_svg: cannot open " + path + " for writing");
  }
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\">\n";
  out << "  <rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  out << "  <text x=\"" << kWidth / 2
      << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">"
      << xml_escape(title) << "</text>\n";

  // Axes.
  out << "  <line x1=\"" << kPlotX << "\" y1=\"" << kPlotY + kPlotH
      << "\" x2=\"" << kPlotX + kPlotW << "\" y2=\"" << kPlotY + kPlotH
      << "\" stroke=\"black\"/>\n";
  out << "  <line x1=\"" << kPlotX << "\" y1=\"" << kPlotY << "\" x2=\""
      << kPlotX << "\" y2=\"" << kPlotY + kPlotH << "\" stroke=\"black\"/>\n";

  // Y ticks every 0.1.
  for (int i = 0; i <= 10; ++i) {
    const double acc = i / 10.0;
    const double py = kPlotY + (1.0 - acc) * kPlotH;
    out << "  <line x1=\"" << kPlotX - 5 << "\" y1=\"" << py << "\" x2=\""
        << kPlotX << "\" y2=\"" << py << "\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << kPlotX - 10 << "\" y=\"" << py + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"12\">"
        << acc << "</text>\n";
  }
  // X ticks at each recorded size.
  for (const AccuracyRecord& r : sorted) {
    const double fx = x_max > x_min
                          ? (static_cast<double>(r.train_size) - x_min) /
                                (x_max - x_min)
                          : 0.5;
    const double px = kPlotX + fx * kPlotW;
    out << "  <line x1=\"" << px << "\" y1=\"" << kPlotY + kPlotH
        << "\" x2=\"" << px << "\" y2=\"" << kPlotY + kPlotH + 5
        << "\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << px << "\" y=\"" << kPlotY + kPlotH + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">"
        << r.train_size << "</text>\n";
  }

  out << "  <text x=\"" << kPlotX + kPlotW / 2 << "\" y=\""
      << kPlotY + kPlotH + 45
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">training samples</text>\n";
  out << "  <text x=\"20\" y=\"" << kPlotY + kPlotH / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\" transform=\"rotate(-90 20 "
      << kPlotY + kPlotH / 2 << ")\">accuracy</text>\n";

  out << "  <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" "
         "stroke-dasharray=\"6 4\" points=\""
      << polyline_points(sorted, true, x_min, x_max, kPlotX, kPlotY, kPlotW,
                         kPlotH)
      << "\"/>\n";
  out << "  <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" "
         "points=\""
      << polyline_points(sorted, false, x_min, x_max, kPlotX, kPlotY, kPlotW,
                         kPlotH)
      << "\"/>\n";

  // Legend.
  out << "  <line x1=\"600\" y1=\"60\" x2=\"650\" y2=\"60\" "
         "stroke=\"#1f77b4\" stroke-width=\"2\" stroke-dasharray=\"6 4\"/>\n";
  out << "  <text x=\"658\" y=\"64\" font-family=\"sans-serif\" "
         "font-size=\"12\">train</text>\n";
  out << "  <line x1=\"600\" y1=\"80\" x2=\"650\" y2=\"80\" "
         "stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
  out << "  <text x=\"658\" y=\"84\" font-family=\"sans-serif\" "
         "font-size=\"12\">test</text>\n";
  out << "</svg>\n";
  if (!out) {
    throw std::runtime_error("emit_svg: write failed for " + path);
  }
}

}  // namespace requp
