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

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace diffbeam {

/// Storage position of harmonic n in a vector indexed n = -N..N.
constexpr int harmonic_position(int n, int order) noexcept { return n + order; }

/// Cosine-series coefficients a_0..a_N of a symmetric pattern
/// sum_n a_n cos(n (theta - theta_s)).
class PatternCoefficients {
 public:
  /// Throws InvalidInput for an empty or non-finite vector.
  explicit PatternCoefficients(std::vector<double> a);

  int order() const noexcept { return static_cast<int>(a_.size()) - 1; }
  std::span<const double> a() const noexcept { return a_; }
  double sum() const noexcept;
  /// True when sum(a) equals one to within 1e-12.
  bool distortionless() const noexcept;

 private:
  std::vector<double> a_;
};

/// Circular-harmonic weights b_{-N}..b_N with b_i = b_{-i}.
class SymmetricB {
 public:
  /// Expects 2N+1 entries in n = -N..N order; throws InvalidInput when
  /// the length is even or the entries are not symmetric.
  explicit SymmetricB(std::vector<double> b);

  int order() const noexcept { return static_cast<int>(b_.size() / 2); }
  std::span<const double> values() const noexcept { return b_; }
  double at(int n) const { return b_.at(static_cast<std::size_t>(harmonic_position(n, order()))); }

 private:
  std::vector<double> b_;
};

struct SteeredTarget {
  SymmetricB coefficients;
  double theta_s;  // radians
};

/// b_0 = a_0, b_{+-i} = a_i / 2.
SymmetricB a_to_b(const PatternCoefficients& a);

/// Reads the cosine coefficients back: a_0 = b_0, a_i = 2 b_i.
PatternCoefficients b_to_a(const SymmetricB& b);

/// sum_n b_n exp(j n (theta - theta_s)); the imaginary residue is dropped.
double evaluate_target(const SteeredTarget& target, double theta);

/// Scales a so that its entries sum to one. Throws DegeneratePattern for a
/// zero sum.
PatternCoefficients normalize_distortionless(std::vector<double> a);

/// Order-N pattern with maximal directivity factor under the distortionless
/// constraint: every b_n = 1/(2N+1), DF = 2N+1.
PatternCoefficients hypercardioid_coefficients(int order);

/// Order-N pattern with a_n proportional to 1, normalized.
PatternCoefficients cardioid_like_coefficients(int order);

/// b_n exp(-j n theta_s), indexed n = -N..N.
Eigen::VectorXcd apply_steering(const SymmetricB& b, double theta_s);

/// exp(j n pi / 2) from the 4-cycle {1, j, -1, -j}.
std::complex<double> j_power(int n) noexcept;

}  // namespace diffbeam
