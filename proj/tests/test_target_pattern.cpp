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
#include <numbers>
#include <random>
#include <vector>

#include "diffbeam/errors.hpp"
#include "diffbeam/target_pattern.hpp"

using namespace diffbeam;
using std::numbers::pi;

namespace {

std::vector<double> values(const SymmetricB& b) { return {b.values().begin(), b.values().end()}; }

// Rectangle-rule directivity of a real target pattern with unit response at 0.
double pattern_df(const SteeredTarget& t, int points) {
  double acc = 0.0;
  for (int k = 0; k < points; ++k) {
    const double v = evaluate_target(t, -pi + 2.0 * pi * k / points);
    acc += v * v;
  }
  return 1.0 / (acc / points);
}

SteeredTarget steered(const PatternCoefficients& a, double theta_s) {
  return SteeredTarget{a_to_b(a), theta_s};
}

}  // namespace

TEST_CASE("a_to_b") {
  CHECK(values(a_to_b(PatternCoefficients({1.0}))) == std::vector<double>{1.0});
  CHECK(values(a_to_b(PatternCoefficients({0.5, 0.5}))) == std::vector<double>{0.25, 0.5, 0.25});
  CHECK(values(a_to_b(PatternCoefficients({0.0, 1.0}))) == std::vector<double>{0.5, 0.0, 0.5});
}

TEST_CASE("SymmetricB rejects asymmetric or even-length input") {
  CHECK_THROWS_AS(SymmetricB({0.1, 0.2}), InvalidInput);
  CHECK_THROWS_AS(SymmetricB({0.1, 0.5, 0.2}), InvalidInput);
  CHECK_THROWS_AS(PatternCoefficients({}), InvalidInput);
  CHECK_THROWS_AS(PatternCoefficients({NAN}), InvalidInput);
}

TEST_CASE("evaluate_target") {
  const SteeredTarget hyper = steered(hypercardioid_coefficients(3), 1.1);
  CHECK(evaluate_target(hyper, 1.1) == doctest::Approx(1.0).epsilon(1e-14));
  const SteeredTarget dipole = steered(PatternCoefficients({0.0, 1.0}), 0.4);
  CHECK(std::abs(evaluate_target(dipole, 0.4 + pi / 2)) < 1e-15);
  const SteeredTarget cardioid = steered(PatternCoefficients({0.5, 0.5}), 2.0);
  CHECK(std::abs(evaluate_target(cardioid, 2.0 + pi)) < 1e-15);
}

TEST_CASE("normalize_distortionless") {
  const auto a = normalize_distortionless({1.0, 1.0});
  CHECK(a.a()[0] == 0.5);
  CHECK(a.a()[1] == 0.5);
  CHECK(normalize_distortionless({2.0}).a()[0] == 1.0);
  CHECK_THROWS_AS(normalize_distortionless({1.0, -1.0}), DegeneratePattern);
  CHECK(normalize_distortionless({0.3, 0.9, -0.1}).distortionless());
}

TEST_CASE("hypercardioid_coefficients") {
  CHECK(hypercardioid_coefficients(0).a()[0] == 1.0);
  const auto h1 = hypercardioid_coefficients(1);
  CHECK(h1.a()[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(h1.a()[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  const auto b3 = a_to_b(hypercardioid_coefficients(3));
  for (double b : b3.values()) {
    CHECK(b == doctest::Approx(1.0 / 7.0).epsilon(1e-15));
  }
  CHECK(pattern_df(steered(hypercardioid_coefficients(3), 0.0), 4096) ==
        doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("hypercardioid is the directivity maximum: grid search oracle") {
  // N = 1: a = [1 - t, t], scan t.
  double best_df = 0.0;
  double best_t = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double t = i / 2000.0;
    const double df = pattern_df(steered(PatternCoefficients({1.0 - t, t}), 0.0), 512);
    if (df > best_df) {
      best_df = df;
      best_t = t;
    }
  }
  CHECK(best_df <= 3.0 + 1e-12);
  CHECK(best_df == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(best_t == doctest::Approx(2.0 / 3.0).epsilon(1e-3));

  // N = 2: a = [1 - u - v, u, v], coarse scan never exceeds 5.
  double best2 = 0.0;
  for (int i = -100; i <= 200; ++i) {
    for (int k = -100; k <= 200; ++k) {
      const double u = i / 100.0;
      const double v = k / 100.0;
      best2 = std::max(best2,
                       pattern_df(steered(PatternCoefficients({1.0 - u - v, u, v}), 0.0), 256));
    }
  }
  CHECK(best2 <= 5.0 + 1e-9);
  CHECK(best2 > 4.99);
}

TEST_CASE("cardioid_like_coefficients") {
  const auto c = cardioid_like_coefficients(2);
  REQUIRE(c.a().size() == 3);
  for (double v : c.a()) {
    CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  }
}

TEST_CASE("apply_steering") {
  const SymmetricB b({0.25, 0.5, 0.25});
  const auto same = apply_steering(b, 0.0);
  for (int i = 0; i < 3; ++i) {
    CHECK(same(i) == std::complex<double>(b.values()[i], 0.0));
  }
  const auto rot = apply_steering(b, pi);
  CHECK(std::abs(rot(0) - std::complex<double>(-0.25, 0.0)) < 1e-15);
  CHECK(std::abs(rot(1) - std::complex<double>(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(rot(2) - std::complex<double>(-0.25, 0.0)) < 1e-15);

  const auto hb = a_to_b(hypercardioid_coefficients(4));
  const auto r = apply_steering(hb, 0.77);
  for (int i = 0; i < r.size(); ++i) {
    CHECK(std::abs(std::abs(r(i)) - hb.values()[i]) < 1e-15);
  }
}

TEST_CASE("j_power cycles") {
  const std::complex<double> j(0.0, 1.0);
  for (int n = -9; n <= 9; ++n) {
    CHECK(std::abs(j_power(n) - std::pow(j, n)) < 1e-15);
  }
}

TEST_CASE("property: target is real and steering covariant") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int N = trial % 6;
    std::vector<double> a(N + 1);
    for (auto& v : a) {
      v = u(rng);
    }
    a[0] += 3.0;  // keep the sum away from zero
    const auto coeffs = normalize_distortionless(a);
    const auto b = a_to_b(coeffs);
    const double ts = pi * u(rng);
    const double th = pi * u(rng);
    const SteeredTarget s{b, ts};
    const SteeredTarget z{b, 0.0};
    CHECK(evaluate_target(s, th) == doctest::Approx(evaluate_target(z, th - ts)).epsilon(1e-13));

    // direct cosine series agrees with the exponential form
    double direct = 0.0;
    for (int n = 0; n <= N; ++n) {
      direct += coeffs.a()[n] * std::cos(n * (th - ts));
    }
    CHECK(evaluate_target(s, th) == doctest::Approx(direct).epsilon(1e-13));
    CHECK(evaluate_target(s, ts) == doctest::Approx(1.0).epsilon(1e-12));

    // round trip a -> b -> a
    const auto back = b_to_a(b);
    for (int n = 0; n <= N; ++n) {
      CHECK(back.a()[n] == doctest::Approx(coeffs.a()[n]).epsilon(1e-15));
    }
  }
}

TEST_CASE("property: hypercardioid directivity equals 2N+1") {
  for (int N = 0; N <= 4; ++N) {
    CHECK(std::abs(pattern_df(steered(hypercardioid_coefficients(N), 0.3), 4096) - (2 * N + 1)) <
          1e-9);
  }
}
