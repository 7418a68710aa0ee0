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

#include <complex>

namespace requp {

/// A pure single-qubit state: a normalized pair of complex amplitudes.
struct QubitState {
  std::complex<double> amp0;
  std::complex<double> amp1;
};

/// 2x2 complex matrix, row-major. Constructors in this module only produce
/// unitaries (U†U = I to machine precision).
struct Unitary2 {
  std::complex<double> u00, u01;
  std::complex<double> u10, u11;
};

/// Cartesian Bloch-sphere coordinates; unit length for pure states.
struct BlochVector {
  double rx;
  double ry;
  double rz;
};

QubitState ket0();
QubitState ket1();

double norm_squared(const QubitState& s);

/// Ry(a) = [[cos(a/2), -sin(a/2)], [sin(a/2), cos(a/2)]].
Unitary2 rotation_y(double angle);

/// Rz(a) = diag(e^{-i a/2}, e^{+i a/2}).
Unitary2 rotation_z(double angle);

/// General single-qubit rotation in the ZYZ Euler factorization:
/// su2(a, b, c) = Rz(a) * Ry(b) * Rz(c).
Unitary2 su2(double a, double b, double c);

Unitary2 matmul(const Unitary2& a, const Unitary2& b);

/// Matrix-vector product u * s. Requires s normalized.
QubitState apply(const Unitary2& u, const QubitState& s);

/// |<t|s>|^2. Symmetric, in [0, 1], invariant under global phase.
double fidelity(const QubitState& s, const QubitState& t);

/// (rx, ry, rz) = (2 Re(a0 conj(a1)), 2 Im(conj(a0) a1), |a0|^2 - |a1|^2).
BlochVector bloch_vector(const QubitState& s);

/// Half the Euclidean distance between the two Bloch vectors. Equals
/// sqrt(1 - fidelity) for pure states.
double trace_distance(const QubitState& s, const QubitState& t);

}  // namespace requp
