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
#include <span>
#include <string>
#include <vector>

#include "diffbeam/array_model.hpp"
#include "diffbeam/metrics.hpp"
#include "diffbeam/modal_matching.hpp"
#include "diffbeam/solver.hpp"
#include "diffbeam/target_pattern.hpp"

namespace diffbeam {

inline constexpr double kStatisticsFloorDb = -120.0;

/// One Monte Carlo experiment: `trials` random geometries, each designed
/// for the same steered pattern and evaluated on the same grids.
struct TrialConfig {
  std::size_t trials = 1;
  std::size_t elements = 3;
  PatternCoefficients pattern = hypercardioid_coefficients(1);
  std::string pattern_id = "hypercardioid";
  double steer_deg = 60.0;
  double aperture_radius = 0.02;  // m
  double min_spacing = 0.008;     // m
  FrequencyGrid grid{50.0, 4000.0, 80};
  double eval_frequency_hz = 1000.0;
  std::uint64_t master_seed = 0;
  PhysicalConstants constants{};
  ElementModel element_model = ElementModel::FirstOrder;
  int angle_count = 360;
  int integration_points = kDefaultIntegrationPoints;
  double db_floor = kStatisticsFloorDb;

  /// Throws InvalidInput for trials == 0, M < 2N+1 and similar.
  void check() const;
};

struct TrialFailure {
  std::size_t trial;
  std::uint64_t seed;
  std::string reason;
};

/// Mean and population standard deviation in dB over successful trials.
struct TrialStatistics {
  std::vector<double> angles_deg;
  std::vector<double> bp_mean_db;
  std::vector<double> bp_std_db;

  std::vector<double> frequencies_hz;
  std::vector<double> wng_mean_db;
  std::vector<double> wng_std_db;
  std::vector<double> df_mean_db;
  std::vector<double> df_std_db;

  double eval_frequency_hz = 0.0;
  double eval_wng_mean_db = 0.0;
  double eval_wng_std_db = 0.0;
  double eval_df_mean_db = 0.0;
  double eval_df_std_db = 0.0;

  std::size_t successful = 0;
  std::vector<TrialFailure> failures;

  /// Largest per-angle beampattern standard deviation and the angle it occurs at.
  std::pair<double, double> worst_std() const;
};

/// Seed of trial t, a pure function of (master_seed, t).
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial);

/// Runs every trial and aggregates in trial-index order, so the result is
/// identical for any `threads`. Failed trials (rank-deficient designs) are
/// recorded and excluded. Throws AggregateFailure if no trial succeeds.
TrialStatistics run_trials(const TrialConfig& config, unsigned threads = 1);

struct OrderSummary {
  int order;
  std::size_t elements;
  double mean_wng_db;  // at the evaluation frequency
  double mean_df_db;
};

struct OrderComparison {
  std::vector<OrderSummary> rows;  // in the order the configs were given
  bool df_increasing;              // strictly, along rows
  bool wng_decreasing;             // strictly, along rows
};

/// Runs each config and compares mean WNG/DF at the evaluation frequency.
/// Configs must share elements, trials and master_seed.
OrderComparison compare_orders(std::span<const TrialConfig> configs, unsigned threads = 1);

}  // namespace diffbeam
