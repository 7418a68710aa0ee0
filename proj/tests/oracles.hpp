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

// Test-only reference implementations, kept independent of the library code
// paths they check: plain complex arithmetic, no requp::apply / su2 / forward.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "requp/rng.hpp"

namespace oracle {

using Complex = std::complex<double>;
using Mat2 = std::array<Complex, 4>;  // row-major
using Vec2 = std::array<Complex, 2>;

inline Mat2 rz(double a) {
  return {std::polar(1.0, -a / 2.0), Complex{0.0, 0.0}, Complex{0.0, 0.0},
          std::polar(1.0, a / 2.0)};
}

inline Mat2 ry(double a) {
  const double c = std::cos(a / 2.0);
  const double s = std::sin(a / 2.0);
  return {Complex{c, 0.0}, Complex{-s, 0.0}, Complex{s, 0.0}, Complex{c, 0.0}};
}

inline Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

inline Vec2 mul(const Mat2& m, const Vec2& v) {
  return {m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1]};
}

inline Mat2 zyz(double a, double b, double c) { return mul(rz(a), mul(ry(b), rz(c))); }

/// Reference chain |psi> = L(N)...L(1)|0> with the affine angle injection,
/// multiplying explicit 2x2 matrices in reverse order.
inline Vec2 forward_chain(int layers, int data_dim,
                          std::span<const double> params,
                          std::span<const double> x) {
  Mat2 total = {Complex{1.0, 0.0}, Complex{0.0, 0.0}, Complex{0.0, 0.0},
                Complex{1.0, 0.0}};
  const int stride = 3 + data_dim;
  for (int layer = 0; layer < layers; ++layer) {
    const double* p = params.data() + layer * stride;
    double angles[3] = {p[0], p[1], p[2]};
    for (int k = 0; k < data_dim && k < 3; ++k) angles[k] += p[3 + k] * x[k];
    total = mul(zyz(angles[0], angles[1], angles[2]), total);
  }
  return mul(total, Vec2{Complex{1.0, 0.0}, Complex{0.0, 0.0}});
}

/// Trace distance from the eigenvalue-sum definition: for pure states the
/// difference of density matrices is Hermitian and traceless, so its
/// eigenvalues are +/- sqrt(-det) and half the absolute sum is just
/// sqrt(-det).
inline double trace_distance_eigen(const Vec2& s, const Vec2& t) {
  Mat2 delta;
  delta[0] = s[0] * std::conj(s[0]) - t[0] * std::conj(t[0]);
  delta[1] = s[0] * std::conj(s[1]) - t[0] * std::conj(t[1]);
  delta[2] = s[1] * std::conj(s[0]) - t[1] * std::conj(t[0]);
  delta[3] = s[1] * std::conj(s[1]) - t[1] * std::conj(t[1]);
  const Complex det = delta[0] * delta[3] - delta[1] * delta[2];
  return std::sqrt(std::max(0.0, -det.real()));
}

inline Vec2 random_state(requp::SplitMix64& rng) {
  while (true) {
    const Complex a{rng.next_symmetric(), rng.next_symmetric()};
    const Complex b{rng.next_symmetric(), rng.next_symmetric()};
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    if (norm > 0.1) return {a / norm, b / norm};
  }
}

}  // namespace oracle
