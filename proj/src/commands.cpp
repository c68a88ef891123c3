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

#include "diffbeam/commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "diffbeam/array_model.hpp"
#include "diffbeam/errors.hpp"
#include "diffbeam/io.hpp"
#include "diffbeam/metrics.hpp"
#include "diffbeam/montecarlo.hpp"
#include "diffbeam/solver.hpp"

namespace diffbeam::cli {
namespace {

using io::Json;

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw InvalidInput("cannot create output directory " + dir.string());
  }
}

PhysicalConstants constants_for(const Json& cfg, const RunOptions& opts, double fallback) {
  PhysicalConstants c{io::get_number_or(cfg, "speed_of_sound_mps", fallback, "config")};
  if (opts.speed_of_sound) {
    c.speed_of_sound = *opts.speed_of_sound;
  }
  c.check();
  return c;
}

int angle_count_for(const Json& cfg) {
  const double step = io::get_number_or(cfg, "angle_step_deg", 1.0, "config");
  const double count = 360.0 / step;
  if (!(step > 0.0) || std::abs(count - std::round(count)) > 1e-9) {
    throw ParseError("config: angle_step_deg must divide 360", "config.angle_step_deg");
  }
  return static_cast<int>(std::round(count));
}

int integration_points_for(const Json& cfg) {
  if (!cfg.contains("integration_points")) {
    return kDefaultIntegrationPoints;
  }
  return static_cast<int>(io::get_integer(cfg, "integration_points", "config"));
}

std::uint64_t seed_for(const Json& cfg, const RunOptions& opts) {
  if (opts.seed) {
    return *opts.seed;
  }
  if (!cfg.contains("seed")) {
    return 0;
  }
  if (!cfg.at("seed").is_number_unsigned()) {
    throw ParseError("config: seed must be a non-negative integer", "config.seed");
  }
  return cfg.at("seed").get<std::uint64_t>();
}

std::string describe(const GeometryViolation& v) {
  char buf[160];
  if (v.kind == GeometryViolation::Kind::OutOfAperture) {
    std::snprintf(buf, sizeof buf, "element %zu outside aperture: r = %.6g mm", v.first,
                  v.value * 1e3);
  } else {
    std::snprintf(buf, sizeof buf, "elements (%zu, %zu) too close: distance = %.6g mm", v.first,
                  v.second, v.value * 1e3);
  }
  return buf;
}

}  // namespace

int cmd_geometry_generate(const GenerateOptions& opts, std::ostream& log) {
  Json cfg = Json::object();
  if (!opts.run.config.empty()) {
    cfg = io::load_json(opts.run.config);
  }
  std::size_t elements = 0;
  if (opts.elements) {
    elements = *opts.elements;
  } else {
    const auto n = io::get_integer(cfg, "elements", "config");
    if (n < 1) {
      throw ParseError("config: elements must be at least 1", "config.elements");
    }
    elements = static_cast<std::size_t>(n);
  }
  const double aperture_mm =
      opts.aperture_mm ? *opts.aperture_mm : io::get_number_or(cfg, "aperture_radius_mm", 20.0, "config");
  const double spacing_mm =
      opts.spacing_mm ? *opts.spacing_mm : io::get_number_or(cfg, "min_spacing_mm", 8.0, "config");
  const std::uint64_t seed = seed_for(cfg, opts.run);

  const ArrayGeometry geom =
      sample_random_geometry(elements, aperture_mm / 1000.0, spacing_mm / 1000.0, seed);
  ensure_dir(opts.run.out_dir);
  const auto path = opts.run.out_dir / "geometry.json";
  io::write_geometry(path, geom);
  log << "wrote " << path.string() << " (" << elements << " elements, seed " << seed << ")\n";
  return 0;
}

int cmd_geometry_validate(const std::filesystem::path& geometry_file, std::ostream& log) {
  const ArrayGeometry geom = io::read_geometry(geometry_file);
  const ValidationReport report = validate_geometry(geom);
  if (report.ok()) {
    log << "ok: " << geom.size() << " elements\n";
    return 0;
  }
  for (const auto& v : report.violations) {
    log << "violation: " << describe(v) << '\n';
  }
  return 1;
}

int cmd_design(const RunOptions& opts, std::ostream& log) {
  const Json cfg = io::load_json(opts.config);
  const auto geometry_path =
      io::resolve_relative(opts.config, io::get_string(cfg, "geometry_file", "config"));
  const ArrayGeometry geom = io::read_geometry(geometry_path);
  if (!cfg.contains("pattern")) {
    throw ParseError("config: missing field 'pattern'", "config.pattern");
  }
  const io::PatternSpec pattern = io::pattern_from_json(cfg.at("pattern"));
  const FrequencyGrid grid = io::grid_from_json(cfg.value("grid", Json::object()));
  const ElementModel model =
      io::element_model_from_string(cfg.value("element_model", std::string("first_order")));
  const PhysicalConstants constants = constants_for(cfg, opts, kDefaultSpeedOfSound);

  const int order = pattern.coefficients.order();
  if (geom.size() < static_cast<std::size_t>(2 * order + 1)) {
    throw InvalidInput("order-" + std::to_string(order) + " design needs at least " +
                       std::to_string(2 * order + 1) + " elements; geometry has " +
                       std::to_string(geom.size()));
  }

  const BeamformerFilter filter = design_filter(geom, constants, pattern.target(), grid, model,
                                                pattern.family, opts.threads);

  ensure_dir(opts.out_dir);
  io::write_filter_csv(opts.out_dir / "filter.csv", filter);

  Json manifest;
  manifest["tool"] = io::kToolName;
  manifest["version"] = io::kToolVersion;
  manifest["geometry_file"] = std::filesystem::absolute(geometry_path).lexically_normal().string();
  manifest["geometry_hash"] = io::hash_to_hex(filter.meta.geometry_hash);
  manifest["elements"] = geom.size();
  manifest["pattern"] = io::pattern_to_json(pattern);
  manifest["grid"] = io::grid_to_json(grid);
  manifest["element_model"] = io::to_string(model);
  manifest["speed_of_sound_mps"] = constants.speed_of_sound;
  manifest["seed"] = opts.seed ? Json(*opts.seed) : Json(nullptr);
  io::save_json(opts.out_dir / "design_manifest.json", manifest);

  log << "designed order-" << order << ' ' << pattern.family << " filter over " << grid.count()
      << " frequencies -> " << (opts.out_dir / "filter.csv").string() << '\n';
  return 0;
}

int cmd_evaluate(const RunOptions& opts, std::ostream& log) {
  const Json cfg = io::load_json(opts.config);
  const ArrayGeometry geom = io::read_geometry(
      io::resolve_relative(opts.config, io::get_string(cfg, "geometry_file", "config")));
  const auto filter_path =
      io::resolve_relative(opts.config, io::get_string(cfg, "filter_file", "config"));
  const auto manifest_path =
      cfg.contains("manifest_file")
          ? io::resolve_relative(opts.config, io::get_string(cfg, "manifest_file", "config"))
          : filter_path.parent_path() / "design_manifest.json";
  const Json manifest = io::load_json(manifest_path);

  const std::string expected_hash = io::get_string(manifest, "geometry_hash", "manifest");
  const std::string actual_hash = io::hash_to_hex(geometry_hash(geom));
  if (expected_hash != actual_hash) {
    throw InconsistentInput("geometry hash " + actual_hash +
                            " does not match the filter's design geometry " + expected_hash);
  }

  const io::PatternSpec pattern = io::pattern_from_json(manifest.at("pattern"));
  const FrequencyGrid grid = io::grid_from_json(manifest.at("grid"));
  const PhysicalConstants constants = constants_for(
      cfg, opts, io::get_number(manifest, "speed_of_sound_mps", "manifest"));

  io::FilterTable table = io::read_filter_csv(filter_path);
  if (table.weights.size() != grid.count()) {
    throw InconsistentInput("filter file has " + std::to_string(table.weights.size()) +
                            " rows but the manifest grid has " + std::to_string(grid.count()));
  }
  for (std::size_t k = 0; k < grid.count(); ++k) {
    if (grid.index_of(table.frequencies_hz[k]) != k) {
      throw InconsistentInput("filter row " + std::to_string(k + 1) +
                              " frequency does not match the manifest grid");
    }
    if (static_cast<std::size_t>(table.weights[k].size()) != geom.size()) {
      throw InconsistentInput("filter width does not match the geometry element count");
    }
  }

  BeamformerFilter filter{grid, std::move(table.weights),
                          DesignMetadata{pattern.coefficients.order(),
                                         deg_to_rad(pattern.steer_deg), pattern.family,
                                         geometry_hash(geom),
                                         io::element_model_from_string(io::get_string(
                                             manifest, "element_model", "manifest"))}};

  const double eval_f = io::get_number(cfg, "eval_frequency_hz", "config");
  const double floor_db = io::get_number_or(cfg, "db_floor", kDisplayFloorDb, "config");
  const int angles = angle_count_for(cfg);
  const int points = integration_points_for(cfg);

  const SteeredTarget target = pattern.target();
  const auto thetas = uniform_angles(angles);
  const Eigen::VectorXcd& h = filter.weights_at(eval_f);
  const auto rendered =
      beampattern(h, geom, constants, 2.0 * std::numbers::pi * eval_f, thetas);

  ensure_dir(opts.out_dir);
  std::vector<std::vector<std::string>> bp_rows;
  for (std::size_t a = 0; a < thetas.size(); ++a) {
    bp_rows.push_back({io::format_number(rad_to_deg(thetas[a])),
                       io::format_number(magnitude_db(std::abs(rendered[a]), floor_db)),
                       io::format_number(
                           magnitude_db(std::abs(evaluate_target(target, thetas[a])), floor_db))});
  }
  io::write_csv(opts.out_dir / "beampattern.csv", {"angle_deg", "rendered_db", "target_db"},
                bp_rows);

  std::vector<std::vector<std::string>> wng_rows;
  std::vector<std::vector<std::string>> df_rows;
  for (std::size_t k = 0; k < grid.count(); ++k) {
    const double f = grid.at(k);
    const double omega = 2.0 * std::numbers::pi * f;
    const auto& hk = filter.weights[k];
    wng_rows.push_back({io::format_number(f), io::format_number(power_db(white_noise_gain(
                                                   hk, geom, constants, omega, target.theta_s)))});
    df_rows.push_back({io::format_number(f),
                       io::format_number(power_db(directivity_factor(
                           hk, geom, constants, omega, target.theta_s, points)))});
  }
  io::write_csv(opts.out_dir / "wng.csv", {"freq_hz", "wng_db"}, wng_rows);
  io::write_csv(opts.out_dir / "df.csv", {"freq_hz", "df_db"}, df_rows);

  log << "evaluated " << grid.count() << " frequencies; beampattern at " << eval_f << " Hz -> "
      << opts.out_dir.string() << '\n';
  return 0;
}

int cmd_montecarlo(const RunOptions& opts, std::ostream& log) {
  const Json cfg = io::load_json(opts.config);
  const std::string ctx = "config";

  TrialConfig tc;
  const auto trials = io::get_integer(cfg, "trials", ctx);
  const auto elements = io::get_integer(cfg, "elements", ctx);
  if (trials < 1 || elements < 1) {
    throw ParseError("config: trials and elements must be at least 1", "config.trials");
  }
  tc.trials = static_cast<std::size_t>(trials);
  tc.elements = static_cast<std::size_t>(elements);
  if (!cfg.contains("pattern")) {
    throw ParseError("config: missing field 'pattern'", "config.pattern");
  }
  const io::PatternSpec pattern = io::pattern_from_json(cfg.at("pattern"));
  tc.pattern = pattern.coefficients;
  tc.pattern_id = pattern.family;
  tc.steer_deg = pattern.steer_deg;
  tc.aperture_radius = io::get_number_or(cfg, "aperture_radius_mm", 20.0, ctx) / 1000.0;
  tc.min_spacing = io::get_number_or(cfg, "min_spacing_mm", 8.0, ctx) / 1000.0;
  tc.grid = io::grid_from_json(cfg.value("grid", Json::object()));
  tc.eval_frequency_hz = io::get_number_or(cfg, "eval_frequency_hz", 1000.0, ctx);
  tc.master_seed = seed_for(cfg, opts);
  tc.constants = constants_for(cfg, opts, kDefaultSpeedOfSound);
  tc.element_model =
      io::element_model_from_string(cfg.value("element_model", std::string("first_order")));
  tc.angle_count = angle_count_for(cfg);
  tc.integration_points = integration_points_for(cfg);
  tc.db_floor = io::get_number_or(cfg, "db_floor", kStatisticsFloorDb, ctx);

  const TrialStatistics stats = run_trials(tc, opts.threads);

  ensure_dir(opts.out_dir);
  using io::format_number;
  std::vector<std::vector<std::string>> bp_rows;
  for (std::size_t a = 0; a < stats.angles_deg.size(); ++a) {
    const double mean = stats.bp_mean_db[a];
    const double sd = stats.bp_std_db[a];
    bp_rows.push_back({format_number(stats.angles_deg[a]), format_number(mean), format_number(sd),
                       format_number(mean - sd), format_number(mean + sd)});
  }
  io::write_csv(opts.out_dir / "bp_stats.csv",
                {"angle_deg", "mean_db", "std_db", "lower_ci", "upper_ci"}, bp_rows);

  std::vector<std::vector<std::string>> wng_rows;
  std::vector<std::vector<std::string>> df_rows;
  for (std::size_t k = 0; k < stats.frequencies_hz.size(); ++k) {
    wng_rows.push_back({format_number(stats.frequencies_hz[k]), format_number(stats.wng_mean_db[k]),
                        format_number(stats.wng_std_db[k])});
    df_rows.push_back({format_number(stats.frequencies_hz[k]), format_number(stats.df_mean_db[k]),
                       format_number(stats.df_std_db[k])});
  }
  io::write_csv(opts.out_dir / "wng_stats.csv", {"freq_hz", "mean_wng", "std_wng"}, wng_rows);
  io::write_csv(opts.out_dir / "df_stats.csv", {"freq_hz", "mean_df", "std_df"}, df_rows);

  std::vector<std::vector<std::string>> fail_rows;
  for (const auto& f : stats.failures) {
    std::string reason = f.reason;
    std::replace(reason.begin(), reason.end(), ',', ';');
    fail_rows.push_back({std::to_string(f.trial), std::to_string(f.seed), reason});
  }
  io::write_csv(opts.out_dir / "failures.csv", {"trial", "seed", "reason"}, fail_rows);

  const auto [worst, worst_angle] = stats.worst_std();
  Json summary;
  summary["trials"] = tc.trials;
  summary["successful"] = stats.successful;
  summary["failed"] = stats.failures.size();
  summary["elements"] = tc.elements;
  summary["order"] = tc.pattern.order();
  summary["pattern"] = io::pattern_to_json(pattern);
  summary["seed"] = tc.master_seed;
  summary["eval_frequency_hz"] = stats.eval_frequency_hz;
  summary["eval_wng_mean_db"] = stats.eval_wng_mean_db;
  summary["eval_wng_std_db"] = stats.eval_wng_std_db;
  summary["eval_df_mean_db"] = stats.eval_df_mean_db;
  summary["eval_df_std_db"] = stats.eval_df_std_db;
  summary["worst_bp_std_db"] = worst;
  summary["worst_bp_std_angle_deg"] = worst_angle;
  io::save_json(opts.out_dir / "summary.json", summary);

  log << stats.successful << '/' << tc.trials << " trials succeeded; worst beampattern std "
      << format_number(worst) << " dB at " << format_number(worst_angle) << " deg\n";
  return 0;
}

}  // namespace diffbeam::cli
