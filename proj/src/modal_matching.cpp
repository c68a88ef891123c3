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

#include "diffbeam/modal_matching.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "diffbeam/errors.hpp"
#include "diffbeam/special_functions.hpp"

namespace diffbeam {
namespace {

void check_order(int order) {
  // J_{N+1} is needed for the dipole term
  if (order < 0 || order + 1 > kMaxBesselOrder) {
    throw InvalidInput("modal order must lie in [0, " + std::to_string(kMaxBesselOrder - 1) +
                       "]");
  }
}

void check_omega(double omega) {
  if (!(omega >= 0.0) || !std::isfinite(omega)) {
    throw InvalidInput("angular frequency must be finite and non-negative");
  }
}

}  // namespace

std::complex<double> harmonic_coefficient(int n, double x, double q, double theta_steer,
                                          double phi) {
  const double delta = theta_steer - phi;
  const std::complex<double> omni =
      j_power(n) * bessel_j(n, x) * std::polar(1.0, n * delta);
  if (q == 0.0) {
    return omni;
  }
  const std::complex<double> dipole =
      j_power(n + 1) * 0.5 *
      (bessel_j(n + 1, x) * std::polar(1.0, (n + 1) * delta) -
       bessel_j(n - 1, x) * std::polar(1.0, (n - 1) * delta));
  return (1.0 - q) * omni + q * dipole;
}

std::complex<double> harmonic_coefficient_quadrature(int n, double x, double q,
                                                     double theta_steer, double phi,
                                                     int points) {
  if (points < 1024) {
    throw InvalidInput("harmonic coefficient quadrature needs at least 1024 points");
  }
  if (!std::isfinite(x) || !std::isfinite(q) || !std::isfinite(theta_steer) ||
      !std::isfinite(phi)) {
    throw InvalidInput("harmonic coefficient inputs must be finite");
  }
  const double step = 2.0 * std::numbers::pi / points;
  std::complex<double> acc{0.0, 0.0};
  for (int k = 0; k < points; ++k) {
    const double theta = -std::numbers::pi + k * step;
    const double response = (1.0 - q) + q * std::cos(theta - theta_steer);
    acc += response * std::polar(1.0, x * std::cos(theta - phi) - n * (theta - theta_steer));
  }
  return acc / static_cast<double>(points);
}

Eigen::MatrixXcd build_xi_matrix(const ArrayGeometry& geom, const PhysicalConstants& constants,
                                 double omega, int order) {
  check_order(order);
  check_omega(omega);
  constants.check();
  const auto cols = static_cast<Eigen::Index>(geom.size());
  Eigen::MatrixXcd xi(2 * order + 1, cols);
  for (Eigen::Index m = 0; m < cols; ++m) {
    const auto& e = geom[static_cast<std::size_t>(m)];
    const double x = omega * e.r() / constants.speed_of_sound;
    // P_{n,m} e^{-j n theta_m} with the phases combined: every term carries
    // e^{-j n phi_m}, the dipole terms an extra e^{+-j (theta_m - phi_m)}.
    // With q = 0 this is bit-identical to the omnidirectional entry.
    const double delta = e.theta_steer() - e.phi();
    const std::complex<double> tilt = std::polar(1.0, delta);
    for (int n = -order; n <= order; ++n) {
      const std::complex<double> base = std::polar(1.0, -n * e.phi());
      std::complex<double> entry = j_power(n) * bessel_j(n, x) * base;
      if (e.q() != 0.0) {
        const std::complex<double> dipole =
            j_power(n + 1) * 0.5 *
            (bessel_j(n + 1, x) * tilt - bessel_j(n - 1, x) * std::conj(tilt)) * base;
        entry = (1.0 - e.q()) * entry + e.q() * dipole;
      }
      xi(harmonic_position(n, order), m) = entry;
    }
  }
  return xi;
}

Eigen::MatrixXcd build_psi_matrix(const ArrayGeometry& geom, const PhysicalConstants& constants,
                                  double omega, int order) {
  check_order(order);
  check_omega(omega);
  constants.check();
  const auto cols = static_cast<Eigen::Index>(geom.size());
  Eigen::MatrixXcd psi(2 * order + 1, cols);
  for (Eigen::Index m = 0; m < cols; ++m) {
    const auto& e = geom[static_cast<std::size_t>(m)];
    const double x = omega * e.r() / constants.speed_of_sound;
    for (int n = -order; n <= order; ++n) {
      psi(harmonic_position(n, order), m) =
          j_power(n) * bessel_j(n, x) * std::polar(1.0, -n * e.phi());
    }
  }
  return psi;
}

ModalSystem build_modal_system(const ArrayGeometry& geom, const PhysicalConstants& constants,
                               double omega, const SteeredTarget& target, ElementModel model) {
  const int order = target.coefficients.order();
  ModalSystem sys{model == ElementModel::FirstOrder
                      ? build_xi_matrix(geom, constants, omega, order)
                      : build_psi_matrix(geom, constants, omega, order),
                  apply_steering(target.coefficients, target.theta_s), omega, order};
  return sys;
}

}  // namespace diffbeam
