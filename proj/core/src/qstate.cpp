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

#include "requp/qstate.hpp"

#include <cmath>
#include <stdexcept>

namespace requp {

namespace {

constexpr double kNormTol = 1e-9;

void require_finite(double angle, const char* who) {
  if (!std::isfinite(angle)) {
    throw std::invalid_argument(std::string(who) + ": angle must be finite");
  }
}

void require_normalized(const QubitState& s, const char* who) {
  if (std::abs(norm_squared(s) - 1.0) > kNormTol) {
    throw std::invalid_argument(std::string(who) + ": state is not normalized");
  }
}

}  // namespace

QubitState ket0() { return {{1.0, 0.0}, {0.0, 0.0}}; }
QubitState ket1() { return {{0.0, 0.0}, {1.0, 0.0}}; }

double norm_squared(const QubitState& s) {
  return std::norm(s.amp0) + std::norm(s.amp1);
}

Unitary2 rotation_y(double angle) {
  require_finite(angle, "rotation_y");
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  return {{c, 0.0}, {-s, 0.0}, {s, 0.0}, {c, 0.0}};
}

Unitary2 rotation_z(double angle) {
  require_finite(angle, "rotation_z");
  const auto e0 = std::polar(1.0, -angle / 2.0);
  const auto e1 = std::polar(1.0, angle / 2.0);
  return {e0, {0.0, 0.0}, {0.0, 0.0}, e1};
}

Unitary2 su2(double a, double b, double c) {
  require_finite(a, "su2");
  require_finite(b, "su2");
  require_finite(c, "su2");
  return matmul(rotation_z(a), matmul(rotation_y(b), rotation_z(c)));
}

Unitary2 matmul(const Unitary2& a, const Unitary2& b) {
  return {a.u00 * b.u00 + a.u01 * b.u10, a.u00 * b.u01 + a.u01 * b.u11,
          a.u10 * b.u00 + a.u11 * b.u10, a.u10 * b.u01 + a.u11 * b.u11};
}

QubitState apply(const Unitary2& u, const QubitState& s) {
  require_normalized(s, "apply");
  return {u.u00 * s.amp0 + u.u01 * s.amp1, u.u10 * s.amp0 + u.u11 * s.amp1};
}

double fidelity(const QubitState& s, const QubitState& t) {
  require_normalized(s, "fidelity");
  require_normalized(t, "fidelity");
  const std::complex<double> overlap =
      std::conj(t.amp0) * s.amp0 + std::conj(t.amp1) * s.amp1;
  return std::norm(overlap);
}

BlochVector bloch_vector(const QubitState& s) {
  require_normalized(s, "bloch_vector");
  return {2.0 * std::real(s.amp0 * std::conj(s.amp1)),
          2.0 * std::imag(std::conj(s.amp0) * s.amp1),
          std::norm(s.amp0) - std::norm(s.amp1)};
}

double trace_distance(const QubitState& s, const QubitState& t) {
  const BlochVector r = bloch_vector(s);
  const BlochVector q = bloch_vector(t);
  const double dx = r.rx - q.rx;
  const double dy = r.ry - q.ry;
  const double dz = r.rz - q.rz;
  return 0.5 * std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace requp
