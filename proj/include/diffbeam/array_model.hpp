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
#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace diffbeam {

inline constexpr double kDefaultSpeedOfSound = 343.0;  // m/s, air at 20 C

/// Wraps an angle in radians to [0, 2pi).
double wrap_angle(double radians);
double deg_to_rad(double degrees);
double rad_to_deg(double radians);

/// One transducer: polar position (r, phi) and first-order directivity
/// (1 - q) + q cos(theta - theta_steer). Angles in radians, wrapped to [0, 2pi).
class ArrayElement {
 public:
  /// Throws InvalidInput for non-finite values, r < 0 or q outside [0, 1].
  ArrayElement(double r, double phi, double q, double theta_steer);

  double r() const noexcept { return r_; }
  double phi() const noexcept { return phi_; }
  double q() const noexcept { return q_; }
  double theta_steer() const noexcept { return theta_steer_; }

  double x() const noexcept;
  double y() const noexcept;

  friend bool operator==(const ArrayElement&, const ArrayElement&) = default;

 private:
  double r_;
  double phi_;
  double q_;
  double theta_steer_;
};

/// Ordered set of elements together with the placement constraints the
/// geometry is meant to satisfy. The constraints are not enforced on
/// construction; see validate_geometry.
class ArrayGeometry {
 public:
  ArrayGeometry(std::vector<ArrayElement> elements, double aperture_radius, double min_spacing);

  const std::vector<ArrayElement>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const ArrayElement& operator[](std::size_t m) const { return elements_[m]; }
  double aperture_radius() const noexcept { return aperture_radius_; }
  double min_spacing() const noexcept { return min_spacing_; }

  friend bool operator==(const ArrayGeometry&, const ArrayGeometry&) = default;

 private:
  std::vector<ArrayElement> elements_;
  double aperture_radius_;
  double min_spacing_;
};

struct PhysicalConstants {
  double speed_of_sound = kDefaultSpeedOfSound;

  /// Throws InvalidInput unless c is finite and positive.
  void check() const;
};

struct GeometryViolation {
  enum class Kind { OutOfAperture, Spacing };
  Kind kind;
  std::size_t first;
  std::size_t second;  // equals first for OutOfAperture
  double value;        // radius (OutOfAperture) or pair distance (Spacing), meters
};

struct ValidationReport {
  std::vector<GeometryViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate_geometry(const ArrayGeometry& geom);

/// Maximum number of candidate positions drawn by sample_random_geometry.
inline constexpr std::size_t kSamplingBudget = 1'000'000;

/// Draws M elements uniformly over the disk of the given radius, placing
/// them one at a time and rejecting candidates closer than min_spacing to
/// an already placed element. A placement that jams restarts from scratch.
/// q ~ U[0, 1], theta_steer ~ U[0, 2pi). Deterministic in seed.
///
/// Throws InfeasibleGeometry when M (min_spacing/2)^2 > aperture^2 or the
/// candidate budget is exhausted.
ArrayGeometry sample_random_geometry(std::size_t M, double aperture_radius, double min_spacing,
                                     std::uint64_t seed);

/// (1 - q) + q cos(theta - theta_steer)
double element_response(const ArrayElement& elem, double theta);

/// Far-field steering vector, entry m = exp(j (omega r_m / c) cos(theta - phi_m)).
Eigen::VectorXcd steering_vector(const ArrayGeometry& geom, const PhysicalConstants& constants,
                                 double omega, double theta);

/// Stable 64-bit fingerprint of the geometry (FNV-1a over the bit patterns
/// of every stored value).
std::uint64_t geometry_hash(const ArrayGeometry& geom);

}  // namespace diffbeam
