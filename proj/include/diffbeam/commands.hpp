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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace diffbeam::cli {

/// Flags shared by the subcommands. Overrides win over config values.
struct RunOptions {
  std::filesystem::path config;
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> speed_of_sound;
  unsigned threads = 1;
};

/// `geometry generate`: config fields elements, aperture_radius_mm,
/// min_spacing_mm, seed; the optional fields below override them.
struct GenerateOptions {
  RunOptions run;
  std::optional<std::size_t> elements;
  std::optional<double> aperture_mm;
  std::optional<double> spacing_mm;
};

// Each command returns the process exit status and throws diffbeam::Error
// for malformed input or failed computations.

/// Writes <out>/geometry.json.
int cmd_geometry_generate(const GenerateOptions& opts, std::ostream& log);
/// Prints the violation report; 0 when the geometry is valid, 1 otherwise.
int cmd_geometry_validate(const std::filesystem::path& geometry_file, std::ostream& log);
/// Writes <out>/filter.csv and <out>/design_manifest.json.
int cmd_design(const RunOptions& opts, std::ostream& log);
/// Writes <out>/beampattern.csv, <out>/wng.csv and <out>/df.csv.
int cmd_evaluate(const RunOptions& opts, std::ostream& log);
/// Writes bp_stats.csv, wng_stats.csv, df_stats.csv, failures.csv and
/// summary.json under <out>.
int cmd_montecarlo(const RunOptions& opts, std::ostream& log);

}  // namespace diffbeam::cli
