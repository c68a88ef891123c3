// SPDX-License-Identifier: Apache-2.0
//
// diffbeam: differential beamformer design for planar arrays of first-order elements
// Copyright (C) 2026 The diffbeam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

/// Bessel functions of the first kind for integer order and real,
/// non-negative argument.

namespace diffbeam {

/// Largest |n| accepted by the Bessel kernels.
inline constexpr int kMaxBesselOrder = 64;

/// J_n(x). Negative orders use J_{-n}(x) = (-1)^n J_n(x).
///
/// Ascending power series for x < 12, normalized downward (Miller)
/// recurrence above. Absolute error below 1e-12 for |n| <= 64, x <= 50.
double bessel_j(int n, double x);

/// J'_n(x) = (J_{n-1}(x) - J_{n+1}(x)) / 2.
double bessel_j_prime(int n, double x);

/// Rectangle-rule evaluation of (1/2pi) * integral over [-pi, pi) of
/// exp(j(n*t - x*sin t)) dt. Independent of bessel_j; used as an oracle.
/// Requires points >= 256.
double hansen_bessel_quadrature(int n, double x, int points);

}  // namespace diffbeam
