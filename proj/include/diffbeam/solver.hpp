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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "diffbeam/array_model.hpp"
#include "diffbeam/modal_matching.hpp"
#include "diffbeam/target_pattern.hpp"

namespace diffbeam {

/// Linearly spaced design frequencies in Hz.
class FrequencyGrid {
 public:
  /// Throws InvalidInput unless 0 < f_min <= f_max and count >= 1
  /// (count == 1 requires f_min == f_max).
  FrequencyGrid(double f_min, double f_max, std::size_t count);

  double f_min() const noexcept { return f_min_; }
  double f_max() const noexcept { return f_max_; }
  std::size_t count() const noexcept { return count_; }
  double at(std::size_t k) const;
  std::vector<double> frequencies() const;
  /// Index of the grid point equal to f (relative tolerance 1e-9).
  std::optional<std::size_t> index_of(double f) const;

  friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;

 private:
  double f_min_;
  double f_max_;
  std::size_t count_;
};

struct DesignMetadata {
  int order = 0;
  double theta_s = 0.0;
  std::string pattern_id;
  std::uint64_t geometry_hash = 0;
  ElementModel element_model = ElementModel::FirstOrder;
};

struct BeamformerFilter {
  FrequencyGrid grid;
  std::vector<Eigen::VectorXcd> weights;  // one length-M vector per grid point
  DesignMetadata meta;

  /// Weights at an exact grid frequency; throws OutOfRange otherwise.
  const Eigen::VectorXcd& weights_at(double f_hz) const;
};

/// Relative eigenvalue floor of the row-equilibrated Gram matrix A A^H.
inline constexpr double kRankTolerance = 1e-10;

/// Minimum-norm solution of the wide system A h = rhs, h = A^H (A A^H)^{-1} rhs.
///
/// Rows are scaled to unit norm first (this leaves the solution set and its
/// minimum-norm member unchanged). The Gram system is solved by Cholesky,
/// falling back to full-pivot LU if the factorization fails. Throws
/// InvalidInput when A has more rows than columns and RankDeficientSystem
/// when the smallest Gram eigenvalue is below kRankTolerance times the largest.
Eigen::VectorXcd min_norm_solve(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& rhs);

/// Filter weights at one angular frequency: min-norm solution of the conjugated
/// modal system (first-order or omnidirectional matrix per model).
Eigen::VectorXcd design_weights(const ArrayGeometry& geom, const PhysicalConstants& constants,
                                const SteeredTarget& target, double omega, ElementModel model);

/// Designs the filter over every grid frequency. Frequencies are independent;
/// `threads` only changes wall time, never the result. A rank-deficient
/// frequency aborts the design with RankDeficientSystem carrying that frequency.
BeamformerFilter design_filter(const ArrayGeometry& geom, const PhysicalConstants& constants,
                               const SteeredTarget& target, const FrequencyGrid& grid,
                               ElementModel model, std::string pattern_id = {},
                               unsigned threads = 1);

}  // namespace diffbeam
