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

#include "diffbeam/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <optional>
#include <thread>
#include <tuple>

#include "diffbeam/errors.hpp"
#include "diffbeam/random.hpp"

namespace diffbeam {
namespace {

struct TrialOutcome {
  std::vector<double> bp_db;
  std::vector<double> wng_db;
  std::vector<double> df_db;
  double eval_wng_db = 0.0;
  double eval_df_db = 0.0;
};

TrialOutcome run_one(const TrialConfig& cfg, const SteeredTarget& target,
                     const std::vector<double>& thetas, std::uint64_t seed) {
  const ArrayGeometry geom =
      sample_random_geometry(cfg.elements, cfg.aperture_radius, cfg.min_spacing, seed);
  TrialOutcome out;

  auto evaluate = [&](double f_hz, double& wng_db, double& df_db) {
    const double omega = 2.0 * std::numbers::pi * f_hz;
    const Eigen::VectorXcd h = design_weights(geom, cfg.constants, target, omega, cfg.element_model);
    wng_db = power_db(white_noise_gain(h, geom, cfg.constants, omega, target.theta_s));
    df_db = power_db(directivity_factor(h, geom, cfg.constants, omega, target.theta_s,
                                        cfg.integration_points));
    return h;
  };

  const Eigen::VectorXcd h_eval = evaluate(cfg.eval_frequency_hz, out.eval_wng_db, out.eval_df_db);
  const auto bp = beampattern(h_eval, geom, cfg.constants,
                              2.0 * std::numbers::pi * cfg.eval_frequency_hz, thetas);
  out.bp_db.reserve(bp.size());
  for (const auto& v : bp) {
    out.bp_db.push_back(magnitude_db(std::abs(v), cfg.db_floor));
  }

  const std::size_t nf = cfg.grid.count();
  out.wng_db.resize(nf);
  out.df_db.resize(nf);
  const auto same = cfg.grid.index_of(cfg.eval_frequency_hz);
  for (std::size_t k = 0; k < nf; ++k) {
    if (same && *same == k) {
      out.wng_db[k] = out.eval_wng_db;
      out.df_db[k] = out.eval_df_db;
    } else {
      evaluate(cfg.grid.at(k), out.wng_db[k], out.df_db[k]);
    }
  }
  return out;
}

// Two-pass mean / population standard deviation over the selected rows.
template <typename Get>
std::pair<double, double> mean_std(const std::vector<const TrialOutcome*>& rows, Get get) {
  double sum = 0.0;
  for (const auto* r : rows) {
    sum += get(*r);
  }
  const double n = static_cast<double>(rows.size());
  const double mean = sum / n;
  double ss = 0.0;
  for (const auto* r : rows) {
    const double d = get(*r) - mean;
    ss += d * d;
  }
  return {mean, std::sqrt(ss / n)};
}

}  // namespace

void TrialConfig::check() const {
  if (trials == 0) {
    throw InvalidInput("Monte Carlo run needs at least one trial");
  }
  const auto needed = static_cast<std::size_t>(2 * pattern.order() + 1);
  if (elements < needed) {
    throw InvalidInput("order-" + std::to_string(pattern.order()) + " designs need at least " +
                       std::to_string(needed) + " elements, got " + std::to_string(elements));
  }
  if (!pattern.distortionless()) {
    throw InvalidInput("Monte Carlo pattern must satisfy the distortionless constraint");
  }
  if (!(eval_frequency_hz > 0.0) || !std::isfinite(eval_frequency_hz)) {
    throw InvalidInput("evaluation frequency must be positive");
  }
  if (!std::isfinite(steer_deg)) {
    throw InvalidInput("steering angle must be finite");
  }
  if (angle_count < 1) {
    throw InvalidInput("angle grid needs at least one point");
  }
  if (integration_points < 512) {
    throw InvalidInput("directivity integration needs at least 512 points");
  }
  constants.check();
}

std::pair<double, double> TrialStatistics::worst_std() const {
  std::size_t best = 0;
  for (std::size_t k = 1; k < bp_std_db.size(); ++k) {
    if (bp_std_db[k] > bp_std_db[best]) {
      best = k;
    }
  }
  return {bp_std_db.at(best), angles_deg.at(best)};
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial) {
  return split_seed(master_seed, static_cast<std::uint64_t>(trial));
}

TrialStatistics run_trials(const TrialConfig& config, unsigned threads) {
  config.check();
  const SteeredTarget target{a_to_b(config.pattern), deg_to_rad(config.steer_deg)};
  const std::vector<double> thetas = uniform_angles(config.angle_count);

  std::vector<std::optional<TrialOutcome>> outcomes(config.trials);
  std::vector<std::string> reasons(config.trials);

  auto work = [&](std::size_t t) {
    try {
      outcomes[t] = run_one(config, target, thetas, trial_seed(config.master_seed, t));
    } catch (const Error& e) {
      reasons[t] = e.what();
    }
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(config.trials)));
  if (workers == 1) {
    for (std::size_t t = 0; t < config.trials; ++t) {
      work(t);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < config.trials; t = next++) {
          work(t);
        }
      });
    }
  }

  TrialStatistics stats;
  std::vector<const TrialOutcome*> ok;
  for (std::size_t t = 0; t < config.trials; ++t) {
    if (outcomes[t]) {
      ok.push_back(&*outcomes[t]);
    } else {
      stats.failures.push_back({t, trial_seed(config.master_seed, t), reasons[t]});
    }
  }
  if (ok.empty()) {
    throw AggregateFailure("all " + std::to_string(config.trials) +
                           " Monte Carlo trials failed; first reason: " +
                           stats.failures.front().reason);
  }
  stats.successful = ok.size();

  for (std::size_t a = 0; a < thetas.size(); ++a) {
    stats.angles_deg.push_back(rad_to_deg(thetas[a]));
    const auto [mean, sd] = mean_std(ok, [a](const TrialOutcome& r) { return r.bp_db[a]; });
    stats.bp_mean_db.push_back(mean);
    stats.bp_std_db.push_back(sd);
  }
  stats.frequencies_hz = config.grid.frequencies();
  for (std::size_t k = 0; k < stats.frequencies_hz.size(); ++k) {
    const auto [wm, ws] = mean_std(ok, [k](const TrialOutcome& r) { return r.wng_db[k]; });
    const auto [dm, ds] = mean_std(ok, [k](const TrialOutcome& r) { return r.df_db[k]; });
    stats.wng_mean_db.push_back(wm);
    stats.wng_std_db.push_back(ws);
    stats.df_mean_db.push_back(dm);
    stats.df_std_db.push_back(ds);
  }
  stats.eval_frequency_hz = config.eval_frequency_hz;
  std::tie(stats.eval_wng_mean_db, stats.eval_wng_std_db) =
      mean_std(ok, [](const TrialOutcome& r) { return r.eval_wng_db; });
  std::tie(stats.eval_df_mean_db, stats.eval_df_std_db) =
      mean_std(ok, [](const TrialOutcome& r) { return r.eval_df_db; });
  return stats;
}

OrderComparison compare_orders(std::span<const TrialConfig> configs, unsigned threads) {
  OrderComparison cmp{{}, true, true};
  if (configs.empty()) {
    return cmp;
  }
  for (const auto& c : configs) {
    if (c.elements != configs.front().elements || c.trials != configs.front().trials ||
        c.master_seed != configs.front().master_seed) {
      throw InvalidInput("compared configurations must share element count, trials and seed");
    }
  }
  for (const auto& c : configs) {
    const TrialStatistics s = run_trials(c, threads);
    cmp.rows.push_back({c.pattern.order(), c.elements, s.eval_wng_mean_db, s.eval_df_mean_db});
  }
  for (std::size_t i = 1; i < cmp.rows.size(); ++i) {
    cmp.df_increasing = cmp.df_increasing && cmp.rows[i].mean_df_db > cmp.rows[i - 1].mean_df_db;
    cmp.wng_decreasing =
        cmp.wng_decreasing && cmp.rows[i].mean_wng_db < cmp.rows[i - 1].mean_wng_db;
  }
  return cmp;
}

}  // namespace diffbeam
