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
#include <complex>
#include <numbers>
#include <random>

#include "diffbeam/array_model.hpp"
#include "diffbeam/errors.hpp"
#include "diffbeam/metrics.hpp"
#include "diffbeam/modal_matching.hpp"
#include "diffbeam/solver.hpp"
#include "diffbeam/target_pattern.hpp"

using namespace diffbeam;
using std::numbers::pi;
using cd = std::complex<double>;

namespace {

const PhysicalConstants kAir{};

ArrayGeometry fixed_geometry() { return sample_random_geometry(9, 0.02, 0.008, 7); }

ArrayGeometry omni_copy(const ArrayGeometry& g) {
  std::vector<ArrayElement> out;
  for (const auto& e : g.elements()) {
    out.emplace_back(e.r(), e.phi(), 0.0, e.theta_steer());
  }
  return ArrayGeometry(out, g.aperture_radius(), g.min_spacing());
}

SteeredTarget hyper(int N) {
  return SteeredTarget{a_to_b(hypercardioid_coefficients(N)), deg_to_rad(60.0)};
}

}  // namespace

TEST_CASE("single omni element") {
  const ArrayGeometry g({ArrayElement(0.0, 0.0, 0.0, 0.0)}, 0.02, 0.008);
  Eigen::VectorXcd h(1);
  h << 1.0;
  for (double f : {50.0, 1000.0, 4000.0}) {
    const double w = 2 * pi * f;
    for (double th : {0.0, 1.0, 4.0}) {
      CHECK(std::abs(beampattern(h, g, kAir, w, th) - cd(1.0, 0.0)) < 1e-15);
    }
    CHECK(white_noise_gain(h, g, kAir, w, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(directivity_factor(h, g, kAir, w, 0.0) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("omni elements reduce to h^H d") {
  const auto g = omni_copy(fixed_geometry());
  std::mt19937_64 rng(41);
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::VectorXcd h(9);
  for (auto& v : h) {
    v = cd(nd(rng), nd(rng));
  }
  for (double th = 0.0; th < 2 * pi; th += 0.3) {
    const double w = 2 * pi * 1700.0;
    const cd direct = h.adjoint() * steering_vector(g, kAir, w, th);
    CHECK(std::abs(beampattern(h, g, kAir, w, th) - direct) < 1e-13);
  }
}

TEST_CASE("delay-and-sum white noise gain equals M") {
  const auto g = omni_copy(fixed_geometry());
  const double w = 2 * pi * 2500.0;
  const double ts = 1.2;
  const Eigen::VectorXcd h = steering_vector(g, kAir, w, ts) / 9.0;
  CHECK(std::abs(beampattern(h, g, kAir, w, ts) - cd(1.0, 0.0)) < 1e-14);
  CHECK(white_noise_gain(h, g, kAir, w, ts) == doctest::Approx(9.0).epsilon(1e-13));
  CHECK(power_db(white_noise_gain(h, g, kAir, w, ts)) ==
        doctest::Approx(10.0 * std::log10(9.0)).epsilon(1e-12));
}

TEST_CASE("ideal dipole has directivity 2") {
  // One pure dipole element at the origin.
  const ArrayGeometry g({ArrayElement(0.0, 0.0, 1.0, 0.5)}, 0.02, 0.008);
  Eigen::VectorXcd h(1);
  h << 1.0;
  CHECK(directivity_factor(h, g, kAir, 2 * pi * 1000.0, 0.5) ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(power_db(2.0) == doctest::Approx(3.0103).epsilon(1e-4));
}

TEST_CASE("zero filter is rejected") {
  const auto g = fixed_geometry();
  const Eigen::VectorXcd h = Eigen::VectorXcd::Zero(9);
  CHECK_THROWS_AS(white_noise_gain(h, g, kAir, 100.0, 0.0), InvalidFilter);
  CHECK_THROWS_AS(directivity_factor(h, g, kAir, 100.0, 0.0), InvalidFilter);
  CHECK_THROWS_AS(directivity_factor(Eigen::VectorXcd::Ones(9), g, kAir, 100.0, 0.0, 511),
                  InvalidInput);
  CHECK_THROWS_AS(beampattern(Eigen::VectorXcd::Ones(3), g, kAir, 100.0, 0.0), InconsistentInput);
}

TEST_CASE("designed filters are distortionless and match the modal reconstruction") {
  const auto g = fixed_geometry();
  const double w = 2 * pi * 1000.0;
  const int wide = 30;
  const auto xi = build_xi_matrix(g, kAir, w, wide);
  for (int N = 1; N <= 4; ++N) {
    const auto t = hyper(N);
    const auto h = design_weights(g, kAir, t, w, ElementModel::FirstOrder);
    const Eigen::VectorXcd modes = xi * h.conjugate();
    for (double th : {t.theta_s, t.theta_s + 1.0, t.theta_s + pi}) {
      cd recon{0.0, 0.0};
      for (int n = -wide; n <= wide; ++n) {
        recon += modes(n + wide) * std::polar(1.0, n * th);
      }
      CHECK(std::abs(beampattern(h, g, kAir, w, th) - recon) < 1e-9 * std::max(1.0, h.norm()));
    }
    CHECK(std::abs(std::abs(beampattern(h, g, kAir, w, t.theta_s)) - 1.0) < 0.05);
  }
}

TEST_CASE("designed hypercardioid reaches its directivity") {
  const auto g = fixed_geometry();
  const double w = 2 * pi * 1000.0;
  for (int N = 1; N <= 4; ++N) {
    const auto t = hyper(N);
    const auto h = design_weights(g, kAir, t, w, ElementModel::FirstOrder);
    const double df_db = power_db(directivity_factor(h, g, kAir, w, t.theta_s));
    CHECK(std::abs(df_db - power_db(2.0 * N + 1.0)) < 0.5);
  }
}

TEST_CASE("property: scaling leaves WNG and DF unchanged") {
  const auto g = fixed_geometry();
  const double w = 2 * pi * 1000.0;
  const auto t = hyper(2);
  const auto h = design_weights(g, kAir, t, w, ElementModel::FirstOrder);
  const double wng = white_noise_gain(h, g, kAir, w, t.theta_s);
  const double df = directivity_factor(h, g, kAir, w, t.theta_s);
  for (cd alpha : {cd(2.0, 0.0), cd(-0.3, 1.7), cd(0.0, -1e-3)}) {
    const Eigen::VectorXcd ah = alpha * h;
    CHECK(white_noise_gain(ah, g, kAir, w, t.theta_s) == doctest::Approx(wng).epsilon(1e-12));
    CHECK(directivity_factor(ah, g, kAir, w, t.theta_s) == doctest::Approx(df).epsilon(1e-12));
    for (double th : {0.0, 2.0, 5.0}) {
      CHECK(std::abs(beampattern(ah, g, kAir, w, th) - std::conj(alpha) * beampattern(h, g, kAir, w, th)) <
            1e-12 * std::abs(alpha));
    }
  }
}

TEST_CASE("property: beampattern peaks at the steering direction") {
  const auto g = fixed_geometry();
  const double w = 2 * pi * 1000.0;
  const auto angles = uniform_angles(360);
  for (int N = 1; N <= 4; ++N) {
    const auto t = hyper(N);
    const auto h = design_weights(g, kAir, t, w, ElementModel::FirstOrder);
    const auto bp = beampattern(h, g, kAir, w, angles);
    std::size_t best = 0;
    for (std::size_t k = 1; k < bp.size(); ++k) {
      if (std::abs(bp[k]) > std::abs(bp[best])) {
        best = k;
      }
    }
    CHECK(angles[best] == doctest::Approx(t.theta_s).epsilon(1e-12));
  }
}

TEST_CASE("property: directivity integral has converged") {
  const auto g = fixed_geometry();
  const double w = 2 * pi * 1000.0;
  for (int N = 0; N <= 4; ++N) {
    const auto t = hyper(N);
    const auto h = design_weights(g, kAir, t, w, ElementModel::FirstOrder);
    const double a = directivity_factor(h, g, kAir, w, t.theta_s, 2048);
    const double b = directivity_factor(h, g, kAir, w, t.theta_s, 4096);
    CHECK(std::abs(a - b) < 1e-9);
  }
}

TEST_CASE("filter-level metrics") {
  const auto g = fixed_geometry();
  const FrequencyGrid grid(500.0, 4000.0, 8);
  const auto t = hyper(2);
  const auto f = design_filter(g, kAir, t, grid, ElementModel::FirstOrder);
  const double w = 2 * pi * 1000.0;
  CHECK(beampattern(f, g, kAir, 1000.0, 0.4) == beampattern(f.weights[1], g, kAir, w, 0.4));
  CHECK(white_noise_gain(f, g, kAir, 1000.0, t.theta_s) ==
        white_noise_gain(f.weights[1], g, kAir, w, t.theta_s));
  CHECK_THROWS_AS(beampattern(f, g, kAir, 1100.0, 0.0), OutOfRange);
  CHECK_THROWS_AS(white_noise_gain(f, g, kAir, 20.0, 0.0), OutOfRange);
  CHECK_THROWS_AS(directivity_factor(f, g, kAir, 5000.0, 0.0), OutOfRange);
  CHECK_THROWS_AS(beampattern(f, sample_random_geometry(5, 0.02, 0.008, 1), kAir, 1000.0, 0.0),
                  InconsistentInput);

  const auto r = evaluate_filter(f, g, kAir, 72, 1024);
  CHECK(r.theta_grid.size() == 72);
  CHECK(r.theta_grid.front() == 0.0);
  CHECK(r.theta_grid.back() < 2 * pi);
  REQUIRE(r.beampattern.size() == 8);
  CHECK(r.beampattern[3].size() == 72);
  CHECK(r.wng_db[1] == doctest::Approx(power_db(white_noise_gain(f, g, kAir, 1000.0, t.theta_s))));
  CHECK(r.df_db[1] ==
        doctest::Approx(power_db(directivity_factor(f, g, kAir, 1000.0, t.theta_s, 1024))));
}

TEST_CASE("dB helpers") {
  CHECK(magnitude_db(1.0, -50.0) == 0.0);
  CHECK(magnitude_db(0.1, -50.0) == doctest::Approx(-20.0));
  CHECK(magnitude_db(0.0, -50.0) == -50.0);
  CHECK(magnitude_db(1e-9, -50.0) == -50.0);
  CHECK(power_db(10.0) == doctest::Approx(10.0));
}
