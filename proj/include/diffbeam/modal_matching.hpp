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

#include <Eigen/Dense>

#include "diffbeam/array_model.hpp"
#include "diffbeam/target_pattern.hpp"

namespace diffbeam {

/// Closed-form circular-harmonic coefficient P_n of
/// T(theta) exp(j x cos(theta - phi)) expanded in exp(j n (theta - theta_steer)):
///
///   (1-q) j^n J_n(x) e^{j n D}
///     + q j^{n+1} (J_{n+1}(x) e^{j(n+1)D} - J_{n-1}(x) e^{j(n-1)D}) / 2,
///
/// with D = theta_steer - phi.
std::complex<double> harmonic_coefficient(int n, double x, double q, double theta_steer,
                                          double phi);

/// The same coefficient by direct rectangle-rule evaluation of the Fourier
/// integral. Requires points >= 1024.
std::complex<double> harmonic_coefficient_quadrature(int n, double x, double q,
                                                     double theta_steer, double phi,
                                                     int points);

/// First-order modal matrix: entry (n, m) = harmonic_coefficient(n, ...) e^{-j n theta_m}.
/// Rows run n = -N..N top to bottom.
Eigen::MatrixXcd build_xi_matrix(const ArrayGeometry& geom, const PhysicalConstants& constants,
                                 double omega, int order);

/// Omnidirectional modal matrix: entry (n, m) = j^n J_n(x_m) e^{-j n phi_m}.
Eigen::MatrixXcd build_psi_matrix(const ArrayGeometry& geom, const PhysicalConstants& constants,
                                  double omega, int order);

enum class ElementModel { Omni, FirstOrder };

/// matrix * conj(h) = rhs, where rhs holds the steered target coefficients.
struct ModalSystem {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd rhs;
  double omega;
  int order;
};

ModalSystem build_modal_system(const ArrayGeometry& geom, const PhysicalConstants& constants,
                               double omega, const SteeredTarget& target, ElementModel model);

}  // namespace diffbeam
