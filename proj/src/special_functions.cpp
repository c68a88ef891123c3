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

#include "diffbeam/special_functions.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "diffbeam/errors.hpp"

namespace diffbeam {
namespace {

constexpr double kSeriesLimit = 4.0;

void check_arguments(int n, double x) {
  if (n > kMaxBesselOrder || n < -kMaxBesselOrder) {
    throw InvalidInput("Bessel order " + std::to_string(n) + " exceeds the cap of " +
                       std::to_string(kMaxBesselOrder));
  }
  if (!std::isfinite(x)) {
    throw InvalidInput("Bessel argument must be finite");
  }
  if (x < 0.0) {
    throw InvalidInput("Bessel argument must be non-negative");
  }
}

// sum_k (-1)^k (x/2)^(2k+n) / (k! (n+k)!), n >= 0
double series(int n, double x) {
  const double half = 0.5 * x;
  double lead = 1.0;
  for (int i = 1; i <= n; ++i) {
    lead *= half / i;
  }
  if (lead == 0.0) {
    return 0.0;
  }
  const double q = half * half;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= -q / (static_cast<double>(k) * static_cast<double>(n + k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > half) {
      break;
    }
  }
  return lead * sum;
}

// Downward recurrence from a high starting order, normalized with
// J_0 + 2 sum_k J_{2k} = 1.
double miller(int n, double x) {
  const double top = std::max(static_cast<double>(n), x);
  int start = static_cast<int>(top + 20.0 + std::sqrt(60.0 * top));
  start += start % 2;

  double next = 0.0;  // J_{k+1}
  double cur = 1e-300;
  double wanted = 0.0;
  double norm = 0.0;
  for (int k = start; k > 0; --k) {
    const double prev = (2.0 * k / x) * cur - next;  // J_{k-1}
    next = cur;
    cur = prev;
    if ((k - 1) == n) {
      wanted = cur;
    }
    if ((k - 1) % 2 == 0 && k - 1 > 0) {
      norm += 2.0 * cur;
    }
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      wanted *= 1e-250;
      norm *= 1e-250;
    }
  }
  norm += cur;  // J_0
  if (n == 0) {
    wanted = cur;
  }
  return wanted / norm;
}

double bessel_nonneg_order(int n, double x) {
  if (x == 0.0) {
    return n == 0 ? 1.0 : 0.0;
  }
  // Past the limit the series only stays accurate while its terms decrease from the start.
  const bool use_series = x < kSeriesLimit || 0.25 * x * x < n + 1.0;
  return use_series ? series(n, x) : miller(n, x);
}

}  // namespace

double bessel_j(int n, double x) {
  check_arguments(n, x);
  if (n >= 0) {
    return bessel_nonneg_order(n, x);
  }
  const double v = bessel_nonneg_order(-n, x);
  return (n % 2 == 0) ? v : -v;
}

double bessel_j_prime(int n, double x) {
  // The neighbours may sit one past the cap.
  if (n >= kMaxBesselOrder || n <= -kMaxBesselOrder) {
    throw InvalidInput("Bessel derivative order " + std::to_string(n) + " exceeds the cap");
  }
  return 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x));
}

double hansen_bessel_quadrature(int n, double x, int points) {
  check_arguments(n, x);
  if (points < 256) {
    throw InvalidInput("Hansen-Bessel quadrature needs at least 256 points");
  }
  const double step = 2.0 * std::numbers::pi / points;
  std::complex<double> acc{0.0, 0.0};
  for (int k = 0; k < points; ++k) {
    const double t = -std::numbers::pi + k * step;
    acc += std::polar(1.0, n * t - x * std::sin(t));
  }
  acc /= static_cast<double>(points);
  if (std::abs(acc.imag()) >= 1e-10) {
    throw InvalidInput("Hansen-Bessel quadrature under-resolved: imaginary residue " +
                       std::to_string(acc.imag()));
  }
  return acc.real();
}

}  // namespace diffbeam
