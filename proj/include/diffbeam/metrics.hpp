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
#include <vector>

#include <Eigen/Dense>

#include "diffbeam/array_model.hpp"
#include "diffbeam/solver.hpp"

namespace diffbeam {

inline constexpr int kDefaultIntegrationPoints = 4096;
inline constexpr double kDisplayFloorDb = -50.0;

/// B(theta) = h^H T(theta) d(omega, theta), T = diag of element responses.
std::complex<double> beampattern(const Eigen::VectorXcd& h, const ArrayGeometry& geom,
                                 const PhysicalConstants& constants, double omega, double theta);

/// Beampattern on many angles at once (same formula, shared setup).
std::vector<std::complex<double>> beampattern(const Eigen::VectorXcd& h,
                                              const ArrayGeometry& geom,
                                              const PhysicalConstants& constants, double omega,
                                              const std::vector<double>& thetas);

/// |B(theta_s)|^2 / (h^H h), linear. Throws InvalidFilter for a zero filter.
double white_noise_gain(const Eigen::VectorXcd& h, const ArrayGeometry& geom,
                        const PhysicalConstants& constants, double omega, double theta_s);

/// |B(theta_s)|^2 over the angular mean of |B|^2, linear. The mean uses the
/// rectangle rule on `integration_points` >= 512 uniform angles in [-pi, pi).
double directivity_factor(const Eigen::VectorXcd& h, const ArrayGeometry& geom,
                          const PhysicalConstants& constants, double omega, double theta_s,
                          int integration_points = kDefaultIntegrationPoints);

// Filter-level forms. `f_hz` must be an exact grid frequency of the filter
// (OutOfRange otherwise); the geometry must have as many elements as the filter.
std::complex<double> beampattern(const BeamformerFilter& filter, const ArrayGeometry& geom,
                                 const PhysicalConstants& constants, double f_hz, double theta);
double white_noise_gain(const BeamformerFilter& filter, const ArrayGeometry& geom,
                        const PhysicalConstants& constants, double f_hz, double theta_s);
double directivity_factor(const BeamformerFilter& filter, const ArrayGeometry& geom,
                          const PhysicalConstants& constants, double f_hz, double theta_s,
                          int integration_points = kDefaultIntegrationPoints);

/// n uniform angles k 2pi / n, k = 0..n-1.
std::vector<double> uniform_angles(int n);

/// 10 log10 of a power ratio.
double power_db(double ratio);
/// 20 log10 |value|, clamped below at floor_db.
double magnitude_db(double magnitude, double floor_db);

struct MetricsResult {
  std::vector<double> theta_grid;                               // radians, uniform over [0, 2pi)
  std::vector<double> frequencies_hz;                           // filter grid
  std::vector<std::vector<std::complex<double>>> beampattern;   // [frequency][angle]
  std::vector<double> wng_db;
  std::vector<double> df_db;
};

/// Evaluates every grid frequency of the filter.
MetricsResult evaluate_filter(const BeamformerFilter& filter, const ArrayGeometry& geom,
                              const PhysicalConstants& constants, int angle_count = 360,
                              int integration_points = kDefaultIntegrationPoints);

}  // namespace diffbeam
