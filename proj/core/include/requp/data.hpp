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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace requp {

/// Binary class label. Class A is "inside the circle" / "above the line";
/// class B is the complement. Serialized as 0 (A) and 1 (B).
enum class Label : std::uint8_t { A = 0, B = 1 };

enum class Pattern { Circle, Line };

struct LabeledPoint {
  double x1;
  double x2;
  Label label;

  bool operator==(const LabeledPoint&) const = default;
};

/// Ordered point list plus the provenance needed to regenerate it
/// bit-for-bit: the generator seed and the labeling pattern.
struct Dataset {
  std::vector<LabeledPoint> points;
  std::uint64_t seed = 0;
  Pattern pattern = Pattern::Circle;

  bool operator==(const Dataset&) const = default;
};

/// Squared radius of the circle pattern, r^2 = 2/pi. Splits [-1,1]^2 into
/// two regions of equal area.
inline constexpr double kCircleRadiusSquared = 2.0 / 3.14159265358979323846;

/// Class A iff x1^2 + x2^2 < 2/pi. Boundary points go to class B.
Label label_circle(double x1, double x2);

/// Class A iff x2 > x1. Points on the line go to class B.
Label label_line(double x1, double x2);

Label label_point(Pattern pattern, double x1, double x2);

/// n i.i.d. points uniform on [-1,1]^2, drawn from a SplitMix64 stream
/// seeded with `seed` (x1 then x2 per point), labeled by the pattern rule.
Dataset generate(Pattern pattern, int n, std::uint64_t seed);

/// CSV persistence. Schema: header `x1,x2,label`, label in {0,1}, UTF-8, LF
/// line endings, coordinates printed with 17 significant digits so the
/// round trip is exact. Provenance (seed, pattern) is written as `#`-prefixed
/// comment lines before the header and restored on load when present.
void save_csv(const Dataset& dataset, const std::string& path);
Dataset load_csv(const std::string& path);

const char* to_string(Pattern pattern);
Pattern pattern_from_string(const std::string& name);

}  // namespace requp
