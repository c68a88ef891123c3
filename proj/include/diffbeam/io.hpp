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

/// File formats and configuration parsing shared by the command-line tool.
///
/// Every structured input is a JSON document whose field names carry their
/// units (_mm, _deg, _hz, _mps). Internally lengths are meters and angles
/// radians.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "diffbeam/array_model.hpp"
#include "diffbeam/modal_matching.hpp"
#include "diffbeam/solver.hpp"
#include "diffbeam/target_pattern.hpp"

namespace diffbeam::io {

using Json = nlohmann::json;

inline constexpr const char* kToolName = "diffbeam";
inline constexpr const char* kToolVersion = "0.1.0";

/// 9 significant digits, "-0" printed as "0".
std::string format_number(double v);
/// Round-trip precision (17 significant digits).
std::string format_exact(double v);

/// Parses a JSON file; syntax errors become ParseError with the line number.
Json load_json(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const Json& doc);

// Typed field access with ParseError naming the offending field.
double get_number(const Json& obj, const std::string& field, const std::string& context);
double get_number_or(const Json& obj, const std::string& field, double fallback,
                     const std::string& context);
std::int64_t get_integer(const Json& obj, const std::string& field, const std::string& context);
std::string get_string(const Json& obj, const std::string& field, const std::string& context);

/// Geometry file:
///   { "aperture_radius_mm": 20, "min_spacing_mm": 8,
///     "elements": [ { "r_mm": .., "phi_deg": .., "q": .., "theta_steer_deg": .. }, .. ] }
ArrayGeometry geometry_from_json(const Json& doc);
Json geometry_to_json(const ArrayGeometry& geom);
ArrayGeometry read_geometry(const std::filesystem::path& path);
void write_geometry(const std::filesystem::path& path, const ArrayGeometry& geom);

/// Pattern config:
///   { "family": "hypercardioid" | "cardioid_like" | "custom",
///     "order": N, "a": [..] (custom only), "steer_deg": deg }
/// Custom coefficients are normalized to the distortionless form.
struct PatternSpec {
  std::string family;
  PatternCoefficients coefficients;
  double steer_deg;

  SteeredTarget target() const;
};
PatternSpec pattern_from_json(const Json& obj);
Json pattern_to_json(const PatternSpec& spec);

/// Grid config { "f_min_hz", "f_max_hz", "count" }; missing fields take the
/// defaults 50 Hz, 4000 Hz, 80 points.
FrequencyGrid grid_from_json(const Json& obj);
Json grid_to_json(const FrequencyGrid& grid);

ElementModel element_model_from_string(const std::string& name);
std::string to_string(ElementModel model);

/// Filter export: header f_hz,re_h1,im_h1,..,re_hM,im_hM then one row per
/// grid frequency, values at round-trip precision.
void write_filter_csv(const std::filesystem::path& path, const BeamformerFilter& filter);

struct FilterTable {
  std::vector<double> frequencies_hz;
  std::vector<Eigen::VectorXcd> weights;
};
FilterTable read_filter_csv(const std::filesystem::path& path);

/// Writes a CSV with one header row. Cells are preformatted strings.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

std::string hash_to_hex(std::uint64_t hash);

/// Resolves `p` against the directory of `config_path` unless absolute.
std::filesystem::path resolve_relative(const std::filesystem::path& config_path,
                                       const std::string& p);

}  // namespace diffbeam::io
