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

#include <doctest.h>

#include <cmath>
#include <random>

#include "diffbeam/errors.hpp"
#include "diffbeam/special_functions.hpp"

using namespace diffbeam;

namespace {

// Independent reference: 30-term ascending series, n >= 0.
double series_reference(int n, double x) {
  double sum = 0.0;
  for (int k = 0; k < 30; ++k) {
    sum += std::pow(-1.0, k) * std::pow(0.5 * x, 2 * k + n) /
           (std::tgamma(k + 1.0) * std::tgamma(k + n + 1.0));
  }
  return sum;
}

}  // namespace

TEST_CASE("bessel_j at the origin") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(3, 0.0) == 0.0);
  CHECK(bessel_j(-5, 0.0) == 0.0);
}

TEST_CASE("bessel_j matches frozen series values") {
  // 30-term power series evaluated in 30-digit arithmetic
  CHECK(bessel_j(0, 1.0) == doctest::Approx(0.765197686557966551).epsilon(1e-15));
  CHECK(bessel_j(2, 1.5) == doctest::Approx(0.232087672144214727).epsilon(1e-15));
  CHECK(bessel_j(1, 0.7) == doctest::Approx(0.328995741540058930).epsilon(1e-15));
  CHECK(bessel_j(-2, 1.3) == bessel_j(2, 1.3));
}

TEST_CASE("bessel_j agrees with the series reference on small arguments") {
  for (int n = 0; n <= 10; ++n) {
    for (double x : {0.01, 0.3, 1.0, 2.5, 4.0}) {
      CHECK(std::abs(bessel_j(n, x) - series_reference(n, x)) < 1e-13);
    }
  }
}

TEST_CASE("bessel_j large-argument branch") {
  // Reference values from scipy.special.jv
  CHECK(bessel_j(0, 20.0) == doctest::Approx(0.16702466434058322).epsilon(1e-12));
  CHECK(bessel_j(1, 30.0) == doctest::Approx(-0.11875106261662291).epsilon(1e-12));
  CHECK(bessel_j(10, 50.0) == doctest::Approx(-0.11384784914946938).epsilon(1e-12));
  // Continuity across the branch point
  for (int n : {0, 1, 5, 20}) {
    CHECK(std::abs(bessel_j(n, 12.0 - 1e-9) - bessel_j(n, 12.0)) < 1e-9);
  }
}

TEST_CASE("bessel_j high orders stay finite and tiny") {
  CHECK(std::abs(bessel_j(64, 1.0)) < 1e-100);
  CHECK(std::isfinite(bessel_j(64, 50.0)));
  CHECK(bessel_j(64, 50.0) == doctest::Approx(hansen_bessel_quadrature(64, 50.0, 4096)).epsilon(1e-9));
}

TEST_CASE("bessel_j rejects bad input") {
  CHECK_THROWS_AS(bessel_j(0, std::nan("")), InvalidInput);
  CHECK_THROWS_AS(bessel_j(0, INFINITY), InvalidInput);
  CHECK_THROWS_AS(bessel_j(0, -1.0), InvalidInput);
  CHECK_THROWS_AS(bessel_j(65, 1.0), InvalidInput);
  CHECK_THROWS_AS(bessel_j(-65, 1.0), InvalidInput);
}

TEST_CASE("bessel_j_prime") {
  CHECK(bessel_j_prime(1, 0.0) == 0.5);
  CHECK(bessel_j_prime(0, 0.0) == 0.0);
  CHECK(bessel_j_prime(0, 1.0) == doctest::Approx(-0.440050585744933516).epsilon(1e-15));
  CHECK_THROWS_AS(bessel_j_prime(64, 1.0), InvalidInput);
}

TEST_CASE("hansen_bessel_quadrature") {
  CHECK(std::abs(hansen_bessel_quadrature(0, 0.0, 1024) - 1.0) < 1e-12);
  CHECK(std::abs(hansen_bessel_quadrature(2, 1.5, 2048) - bessel_j(2, 1.5)) < 1e-10);
  CHECK(std::abs(hansen_bessel_quadrature(-1, 0.7, 2048) + bessel_j(1, 0.7)) < 1e-10);
  CHECK_THROWS_AS(hansen_bessel_quadrature(0, 1.0, 255), InvalidInput);
}

TEST_CASE("property: three-term recurrence") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(0.1, 30.0);
  std::uniform_int_distribution<int> un(-20, 20);
  for (int i = 0; i < 500; ++i) {
    const double x = ux(rng);
    const int n = un(rng);
    const double lhs = 2.0 * n / x * bessel_j(n, x);
    CHECK(std::abs(lhs - (bessel_j(n - 1, x) + bessel_j(n + 1, x))) < 1e-10);
  }
}

TEST_CASE("property: negative-order symmetry is exact") {
  for (int n = 0; n <= 64; ++n) {
    for (double x : {0.05, 0.9, 7.7, 12.0, 33.3}) {
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      CHECK(std::abs(bessel_j(-n, x) - sign * bessel_j(n, x)) < 1e-14);
    }
  }
}

TEST_CASE("property: quadrature oracle agreement") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(0.0, 50.0);
  std::uniform_int_distribution<int> un(-64, 64);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double x = ux(rng);
    const int n = un(rng);
    worst = std::max(worst, std::abs(bessel_j(n, x) - hansen_bessel_quadrature(n, x, 4096)));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("property: derivative matches centered difference") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ux(0.01, 30.0);
  std::uniform_int_distribution<int> un(-20, 20);
  const double h = 1e-5;
  for (int i = 0; i < 300; ++i) {
    const double x = ux(rng);
    const int n = un(rng);
    const double fd = (bessel_j(n, x + h) - bessel_j(n, x - h)) / (2.0 * h);
    CHECK(std::abs(bessel_j_prime(n, x) - fd) < 1e-8);
  }
}
