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

#include "diffbeam/metrics.hpp"

#include <cmath>
#include <numbers>

#include "diffbeam/errors.hpp"

namespace diffbeam {
namespace {

void check_shapes(const Eigen::VectorXcd& h, const ArrayGeometry& geom) {
  if (static_cast<std::size_t>(h.size()) != geom.size()) {
    throw InconsistentInput("filter has " + std::to_string(h.size()) +
                            " weights but the geometry has " + std::to_string(geom.size()) +
                            " elements");
  }
}

double omega_of(double f_hz) { return 2.0 * std::numbers::pi * f_hz; }

// Sum over m of conj(h_m) T_m(theta) e^{j x_m cos(theta - phi_m)} for a batch of
// angles given by their cosines and sines.
struct Renderer {
  Renderer(const Eigen::VectorXcd& h, const ArrayGeometry& geom,
           const PhysicalConstants& constants, double omega) {
    constants.check();
    if (!(omega >= 0.0)) {
      throw InvalidInput("angular frequency must be non-negative");
    }
    check_shapes(h, geom);
    const std::size_t M = geom.size();
    weight.resize(M);
    x.resize(M);
    cos_phi.resize(M);
    sin_phi.resize(M);
    omni.resize(M);
    q_cos.resize(M);
    q_sin.resize(M);
    for (std::size_t m = 0; m < M; ++m) {
      const auto& e = geom[m];
      weight[m] = std::conj(h(static_cast<Eigen::Index>(m)));
      x[m] = omega * e.r() / constants.speed_of_sound;
      cos_phi[m] = std::cos(e.phi());
      sin_phi[m] = std::sin(e.phi());
      omni[m] = 1.0 - e.q();
      q_cos[m] = e.q() * std::cos(e.theta_steer());
      q_sin[m] = e.q() * std::sin(e.theta_steer());
    }
  }

  std::complex<double> operator()(double c, double s) const {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t m = 0; m < weight.size(); ++m) {
      const double response = omni[m] + q_cos[m] * c + q_sin[m] * s;
      const double phase = x[m] * (c * cos_phi[m] + s * sin_phi[m]);
      acc += weight[m] * response * std::polar(1.0, phase);
    }
    return acc;
  }

  std::complex<double> at(double theta) const { return (*this)(std::cos(theta), std::sin(theta)); }

  std::vector<std::complex<double>> weight;
  std::vector<double> x, cos_phi, sin_phi, omni, q_cos, q_sin;
};

double filter_energy(const Eigen::VectorXcd& h) {
  const double energy = h.squaredNorm();
  if (!(energy > 0.0) || !std::isfinite(energy)) {
    throw InvalidFilter("filter has zero (or non-finite) norm");
  }
  return energy;
}

}  // namespace

std::complex<double> beampattern(const Eigen::VectorXcd& h, const ArrayGeometry& geom,
                                 const PhysicalConstants& constants, double omega, double theta) {
  return Renderer(h, geom, constants, omega).at(theta);
}

std::vector<std::complex<double>> beampattern(const Eigen::VectorXcd& h,
                                              const ArrayGeometry& geom,
                                              const PhysicalConstants& constants, double omega,
                                              const std::vector<double>& thetas) {
  const Renderer render(h, geom, constants, omega);
  std::vector<std::complex<double>> out;
  out.reserve(thetas.size());
  for (double t : thetas) {
    out.push_back(render.at(t));
  }
  return out;
}

double white_noise_gain(const Eigen::VectorXcd& h, const ArrayGeometry& geom,
                        const PhysicalConstants& constants, double omega, double theta_s) {
  const double energy = filter_energy(h);
  return std::norm(beampattern(h, geom, constants, omega, theta_s)) / energy;
}

double directivity_factor(const Eigen::VectorXcd& h, const ArrayGeometry& geom,
                          const PhysicalConstants& constants, double omega, double theta_s,
                          int integration_points) {
  if (integration_points < 512) {
    throw InvalidInput("directivity factor needs at least 512 integration points");
  }
  filter_energy(h);
  const Renderer render(h, geom, constants, omega);
  const double step = 2.0 * std::numbers::pi / integration_points;
  double mean = 0.0;
  for (int k = 0; k < integration_points; ++k) {
    const double theta = -std::numbers::pi + k * step;
    mean += std::norm(render.at(theta));
  }
  mean /= integration_points;
  if (!(mean > 0.0)) {
    throw InvalidFilter("beampattern vanishes everywhere");
  }
  return std::norm(render.at(theta_s)) / mean;
}

std::complex<double> beampattern(const BeamformerFilter& filter, const ArrayGeometry& geom,
                                 const PhysicalConstants& constants, double f_hz, double theta) {
  return beampattern(filter.weights_at(f_hz), geom, constants, omega_of(f_hz), theta);
}

double white_noise_gain(const BeamformerFilter& filter, const ArrayGeometry& geom,
                        const PhysicalConstants& constants, double f_hz, double theta_s) {
  return white_noise_gain(filter.weights_at(f_hz), geom, constants, omega_of(f_hz), theta_s);
}

double directivity_factor(const BeamformerFilter& filter, const ArrayGeometry& geom,
                          const PhysicalConstants& constants, double f_hz, double theta_s,
                          int integration_points) {
  return directivity_factor(filter.weights_at(f_hz), geom, constants, omega_of(f_hz), theta_s,
                            integration_points);
}

std::vector<double> uniform_angles(int n) {
  if (n < 1) {
    throw InvalidInput("angle grid needs at least one point");
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    out[static_cast<std::size_t>(k)] = 2.0 * std::numbers::pi * k / n;
  }
  return out;
}

double power_db(double ratio) { return 10.0 * std::log10(ratio); }

double magnitude_db(double magnitude, double floor_db) {
  if (!(magnitude > 0.0)) {
    return floor_db;
  }
  return std::max(20.0 * std::log10(magnitude), floor_db);
}

MetricsResult evaluate_filter(const BeamformerFilter& filter, const ArrayGeometry& geom,
                              const PhysicalConstants& constants, int angle_count,
                              int integration_points) {
  MetricsResult out;
  out.theta_grid = uniform_angles(angle_count);
  out.frequencies_hz = filter.grid.frequencies();
  const double theta_s = filter.meta.theta_s;
  for (std::size_t k = 0; k < out.frequencies_hz.size(); ++k) {
    const Eigen::VectorXcd& h = filter.weights.at(k);
    const double omega = omega_of(out.frequencies_hz[k]);
    out.beampattern.push_back(beampattern(h, geom, constants, omega, out.theta_grid));
    out.wng_db.push_back(power_db(white_noise_gain(h, geom, constants, omega, theta_s)));
    out.df_db.push_back(
        power_db(directivity_factor(h, geom, constants, omega, theta_s, integration_points)));
  }
  return out;
}

}  // namespace diffbeam
