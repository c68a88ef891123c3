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

#include "diffbeam/array_model.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "diffbeam/errors.hpp"
#include "diffbeam/random.hpp"

namespace diffbeam {

double wrap_angle(double radians) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double w = std::fmod(radians, kTwoPi);
  if (w < 0.0) {
    w += kTwoPi;
  }
  // fmod of a tiny negative value can round up to exactly 2pi
  return w >= kTwoPi ? 0.0 : w;
}

double deg_to_rad(double degrees) { return degrees * std::numbers::pi / 180.0; }

double rad_to_deg(double radians) { return radians * 180.0 / std::numbers::pi; }

ArrayElement::ArrayElement(double r, double phi, double q, double theta_steer) {
  if (!std::isfinite(r) || !std::isfinite(phi) || !std::isfinite(q) ||
      !std::isfinite(theta_steer)) {
    throw InvalidInput("array element fields must be finite");
  }
  if (r < 0.0) {
    throw InvalidInput("array element radius must be non-negative");
  }
  if (q < 0.0 || q > 1.0) {
    throw InvalidInput("first-order shape coefficient q must lie in [0, 1], got " +
                       std::to_string(q));
  }
  r_ = r;
  phi_ = wrap_angle(phi);
  q_ = q;
  theta_steer_ = wrap_angle(theta_steer);
}

double ArrayElement::x() const noexcept { return r_ * std::cos(phi_); }
double ArrayElement::y() const noexcept { return r_ * std::sin(phi_); }

ArrayGeometry::ArrayGeometry(std::vector<ArrayElement> elements, double aperture_radius,
                             double min_spacing)
    : elements_(std::move(elements)),
      aperture_radius_(aperture_radius),
      min_spacing_(min_spacing) {
  if (elements_.empty()) {
    throw InvalidInput("a geometry needs at least one element");
  }
  if (!std::isfinite(aperture_radius_) || aperture_radius_ < 0.0 ||
      !std::isfinite(min_spacing_) || min_spacing_ < 0.0) {
    throw InvalidInput("aperture radius and minimum spacing must be finite and non-negative");
  }
}

void PhysicalConstants::check() const {
  if (!std::isfinite(speed_of_sound) || speed_of_sound <= 0.0) {
    throw InvalidInput("speed of sound must be positive");
  }
}

ValidationReport validate_geometry(const ArrayGeometry& geom) {
  ValidationReport report;
  const auto& el = geom.elements();
  for (std::size_t i = 0; i < el.size(); ++i) {
    if (el[i].r() > geom.aperture_radius()) {
      report.violations.push_back(
          {GeometryViolation::Kind::OutOfAperture, i, i, el[i].r()});
    }
  }
  for (std::size_t i = 0; i < el.size(); ++i) {
    for (std::size_t k = i + 1; k < el.size(); ++k) {
      const double d = std::hypot(el[i].x() - el[k].x(), el[i].y() - el[k].y());
      if (d < geom.min_spacing()) {
        report.violations.push_back({GeometryViolation::Kind::Spacing, i, k, d});
      }
    }
  }
  return report;
}

ArrayGeometry sample_random_geometry(std::size_t M, double aperture_radius, double min_spacing,
                                     std::uint64_t seed) {
  if (M == 0) {
    throw InvalidInput("element count must be at least 1");
  }
  if (!(aperture_radius > 0.0) || !(min_spacing >= 0.0) || !std::isfinite(aperture_radius) ||
      !std::isfinite(min_spacing)) {
    throw InvalidInput("aperture radius must be positive and spacing non-negative");
  }
  const double half = 0.5 * min_spacing;
  if (static_cast<double>(M) * half * half > aperture_radius * aperture_radius) {
    throw InfeasibleGeometry("cannot fit " + std::to_string(M) + " elements with spacing " +
                             std::to_string(min_spacing) + " m in radius " +
                             std::to_string(aperture_radius) + " m");
  }

  // Consecutive rejections for one element before the layout is declared jammed.
  constexpr std::size_t kJamLimit = 20'000;

  std::mt19937_64 engine(seed);
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(M);
  ys.reserve(M);
  const double min_sq = min_spacing * min_spacing;

  std::size_t attempts = 0;
  std::size_t streak = 0;
  while (xs.size() < M) {
    if (attempts++ >= kSamplingBudget) {
      throw InfeasibleGeometry("rejection budget of " + std::to_string(kSamplingBudget) +
                               " candidates exhausted placing " + std::to_string(M) +
                               " elements");
    }
    const double r = aperture_radius * std::sqrt(uniform01(engine));
    const double phi = 2.0 * std::numbers::pi * uniform01(engine);
    const double x = r * std::cos(phi);
    const double y = r * std::sin(phi);
    bool clear = true;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const double dx = x - xs[k];
      const double dy = y - ys[k];
      if (dx * dx + dy * dy < min_sq) {
        clear = false;
        break;
      }
    }
    if (clear) {
      xs.push_back(x);
      ys.push_back(y);
      streak = 0;
    } else if (++streak >= kJamLimit) {
      xs.clear();
      ys.clear();
      streak = 0;
    }
  }

  std::vector<ArrayElement> elements;
  elements.reserve(M);
  for (std::size_t m = 0; m < M; ++m) {
    const double q = uniform01(engine);
    const double steer = 2.0 * std::numbers::pi * uniform01(engine);
    elements.emplace_back(std::hypot(xs[m], ys[m]), std::atan2(ys[m], xs[m]), q, steer);
  }
  ArrayGeometry geom(std::move(elements), aperture_radius, min_spacing);

  // Polar round-off can move a pair a hair under the limit; resample if so.
  if (!validate_geometry(geom).ok()) {
    return sample_random_geometry(M, aperture_radius, min_spacing, splitmix64(seed));
  }
  return geom;
}

double element_response(const ArrayElement& elem, double theta) {
  return (1.0 - elem.q()) + elem.q() * std::cos(theta - elem.theta_steer());
}

Eigen::VectorXcd steering_vector(const ArrayGeometry& geom, const PhysicalConstants& constants,
                                 double omega, double theta) {
  constants.check();
  if (!(omega >= 0.0)) {
    throw InvalidInput("angular frequency must be non-negative");
  }
  Eigen::VectorXcd d(static_cast<Eigen::Index>(geom.size()));
  for (std::size_t m = 0; m < geom.size(); ++m) {
    const auto& e = geom[m];
    const double x = omega * e.r() / constants.speed_of_sound;
    d(static_cast<Eigen::Index>(m)) = std::polar(1.0, x * std::cos(theta - e.phi()));
  }
  return d;
}

std::uint64_t geometry_hash(const ArrayGeometry& geom) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xFFu;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<double>(geom.size()));
  mix(geom.aperture_radius());
  mix(geom.min_spacing());
  for (const auto& e : geom.elements()) {
    mix(e.r());
    mix(e.phi());
    mix(e.q());
    mix(e.theta_steer());
  }
  return h;
}

}  // namespace diffbeam
