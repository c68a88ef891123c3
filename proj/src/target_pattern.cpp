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

#include "diffbeam/target_pattern.hpp"

#include <cmath>
#include <numeric>

#include "diffbeam/errors.hpp"

namespace diffbeam {

PatternCoefficients::PatternCoefficients(std::vector<double> a) : a_(std::move(a)) {
  if (a_.empty()) {
    throw InvalidInput("pattern needs at least the a_0 coefficient");
  }
  for (double v : a_) {
    if (!std::isfinite(v)) {
      throw InvalidInput("pattern coefficients must be finite");
    }
  }
}

double PatternCoefficients::sum() const noexcept {
  return std::accumulate(a_.begin(), a_.end(), 0.0);
}

bool PatternCoefficients::distortionless() const noexcept { return std::abs(sum() - 1.0) < 1e-12; }

SymmetricB::SymmetricB(std::vector<double> b) : b_(std::move(b)) {
  if (b_.size() % 2 == 0) {
    throw InvalidInput("symmetric harmonic weights need an odd length 2N+1");
  }
  const std::size_t n = b_.size();
  for (std::size_t i = 0; i < n / 2; ++i) {
    if (b_[i] != b_[n - 1 - i]) {
      throw InvalidInput("harmonic weights are not symmetric: b_i != b_-i");
    }
  }
}

SymmetricB a_to_b(const PatternCoefficients& a) {
  const int order = a.order();
  std::vector<double> b(static_cast<std::size_t>(2 * order + 1));
  b[static_cast<std::size_t>(order)] = a.a()[0];
  for (int i = 1; i <= order; ++i) {
    const double half = 0.5 * a.a()[static_cast<std::size_t>(i)];
    b[static_cast<std::size_t>(harmonic_position(i, order))] = half;
    b[static_cast<std::size_t>(harmonic_position(-i, order))] = half;
  }
  return SymmetricB(std::move(b));
}

PatternCoefficients b_to_a(const SymmetricB& b) {
  const int order = b.order();
  std::vector<double> a(static_cast<std::size_t>(order + 1));
  a[0] = b.at(0);
  for (int i = 1; i <= order; ++i) {
    a[static_cast<std::size_t>(i)] = 2.0 * b.at(i);
  }
  return PatternCoefficients(std::move(a));
}

double evaluate_target(const SteeredTarget& target, double theta) {
  const int order = target.coefficients.order();
  const double delta = theta - target.theta_s;
  std::complex<double> acc{0.0, 0.0};
  for (int n = -order; n <= order; ++n) {
    acc += target.coefficients.at(n) * std::polar(1.0, n * delta);
  }
  return acc.real();
}

PatternCoefficients normalize_distortionless(std::vector<double> a) {
  PatternCoefficients raw(std::move(a));
  const double s = raw.sum();
  if (s == 0.0) {
    throw DegeneratePattern(
        "pattern coefficients sum to zero; the pattern is null at its steering direction");
  }
  std::vector<double> scaled(raw.a().begin(), raw.a().end());
  for (double& v : scaled) {
    v /= s;
  }
  return PatternCoefficients(std::move(scaled));
}

PatternCoefficients hypercardioid_coefficients(int order) {
  if (order < 0) {
    throw InvalidInput("pattern order must be non-negative");
  }
  const double denom = 2.0 * order + 1.0;
  std::vector<double> a(static_cast<std::size_t>(order + 1), 2.0 / denom);
  a[0] = 1.0 / denom;
  return PatternCoefficients(std::move(a));
}

PatternCoefficients cardioid_like_coefficients(int order) {
  if (order < 0) {
    throw InvalidInput("pattern order must be non-negative");
  }
  return normalize_distortionless(std::vector<double>(static_cast<std::size_t>(order + 1), 1.0));
}

Eigen::VectorXcd apply_steering(const SymmetricB& b, double theta_s) {
  const int order = b.order();
  Eigen::VectorXcd out(2 * order + 1);
  for (int n = -order; n <= order; ++n) {
    out(harmonic_position(n, order)) = b.at(n) * std::polar(1.0, -n * theta_s);
  }
  return out;
}

std::complex<double> j_power(int n) noexcept {
  switch (((n % 4) + 4) % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

}  // namespace diffbeam
