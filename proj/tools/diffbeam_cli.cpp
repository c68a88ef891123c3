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

#include <iostream>

#include <CLI11.hpp>

#include "diffbeam/commands.hpp"
#include "diffbeam/errors.hpp"
#include "diffbeam/io.hpp"

namespace {

void add_run_flags(CLI::App* cmd, diffbeam::cli::RunOptions& run, bool need_config) {
  auto* cfg = cmd->add_option("--config", run.config, "JSON run configuration");
  if (need_config) {
    cfg->required()->check(CLI::ExistingFile);
  }
  cmd->add_option("--out", run.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--seed", run.seed, "Seed override (unsigned 64-bit)");
  cmd->add_option("--threads", run.threads, "Worker threads; never changes results")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  cmd->add_option("--c-mps", run.speed_of_sound, "Speed of sound override in m/s")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequency-invariant differential beamformer design for planar arrays of "
               "first-order elements"};
  app.set_version_flag("--version", std::string(diffbeam::io::kToolVersion));
  app.require_subcommand(1);

  diffbeam::cli::GenerateOptions gen;
  std::filesystem::path validate_file;
  diffbeam::cli::RunOptions design;
  diffbeam::cli::RunOptions evaluate;
  diffbeam::cli::RunOptions montecarlo;

  auto* geometry = app.add_subcommand("geometry", "Generate or validate array geometries");
  geometry->require_subcommand(1);
  auto* generate = geometry->add_subcommand("generate", "Sample a random geometry");
  add_run_flags(generate, gen.run, false);
  generate->add_option("--elements", gen.elements, "Number of elements M");
  generate->add_option("--aperture-mm", gen.aperture_mm, "Aperture radius in mm");
  generate->add_option("--spacing-mm", gen.spacing_mm, "Minimum inter-element spacing in mm");
  auto* validate = geometry->add_subcommand("validate", "Check aperture and spacing constraints");
  validate->add_option("file", validate_file, "Geometry JSON file")
      ->required()
      ->check(CLI::ExistingFile);

  auto* design_cmd = app.add_subcommand("design", "Design a beamformer over a frequency grid");
  add_run_flags(design_cmd, design, true);
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Beampattern, WNG and DF of a filter");
  add_run_flags(evaluate_cmd, evaluate, true);
  auto* mc_cmd = app.add_subcommand("montecarlo", "Monte Carlo robustness study");
  add_run_flags(mc_cmd, montecarlo, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      return diffbeam::cli::cmd_geometry_generate(gen, std::cout);
    }
    if (validate->parsed()) {
      return diffbeam::cli::cmd_geometry_validate(validate_file, std::cout);
    }
    if (design_cmd->parsed()) {
      return diffbeam::cli::cmd_design(design, std::cout);
    }
    if (evaluate_cmd->parsed()) {
      return diffbeam::cli::cmd_evaluate(evaluate, std::cout);
    }
    if (mc_cmd->parsed()) {
      return diffbeam::cli::cmd_montecarlo(montecarlo, std::cout);
    }
  } catch (const diffbeam::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 3;
  } catch (const diffbeam::RankDeficientSystem& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const diffbeam::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
