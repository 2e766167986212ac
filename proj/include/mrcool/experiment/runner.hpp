// Copyright 2026 The mrcool Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrcool/experiment/config.hpp"
#include "mrcool/lindblad.hpp"
#include "mrcool/operators.hpp"
#include "mrcool/protocol.hpp"

namespace mrcool::experiment {

/// Everything a run needs, with units and defaults resolved.
struct ResolvedRun {
  SystemParams params;
  double nbar0 = 0.0;
  DensityMatrix rho0;
  MeasurementSchedule schedule;
  std::optional<DissipationParams> dissipation;
  IntegratorConfig integrator;
};

/// Throws ConfigError when the config cannot be made concrete (for example an
/// explicit n_max below the thermal tail requirement).
ResolvedRun resolve(const ExperimentConfig& config);

/// Runs a single (non-swept) configuration.
CoolingRecord execute(const ExperimentConfig& config, int threads = 1);

struct OutputFile {
  std::string name;
  std::string content;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::vector<OutputFile> files;
  std::vector<Check> checks;
  bool all_passed() const;
};

/// Plain run, or a sweep when config.sweep is non-empty. Produces the CSV and
/// its manifest. The CSV depends only on the config, never on `threads`.
Report run_config(const ExperimentConfig& config, int threads = 1,
                  const std::string& command = "run");

/// CSV content alone (no manifest, no timing).
std::string run_csv(const ExperimentConfig& config, int threads = 1);

// Presets. `seed` is the master seed for every stochastic element.
ExperimentConfig fig1_config(double delta, std::uint64_t seed = 1);
ExperimentConfig fig2_etim_config(std::uint64_t seed = 1);
/// UTIM seeds seed, seed+1, ..., seed+seeds-1 as a sweep.
ExperimentConfig fig2_utim_config(std::uint64_t seed = 1, int seeds = 100, bool mean = false);
ExperimentConfig robustness_config(double quality_factor, std::uint64_t seed = 1);

Report fig1(std::uint64_t seed = 1, int threads = 1);
Report fig2(std::uint64_t seed = 1, int threads = 1);
Report robustness(std::uint64_t seed = 1, int threads = 1);

struct OracleRow {
  double delta = 0.0;
  double g = 0.0;
  double tau = 0.0;
  double max_lambda_error = 0.0;
  double max_completeness_error = 0.0;
};

/// Closed-form lambda_n versus <g,n|exp(-i H_JC tau)|g,n> over the grid
/// delta in {1, 1.1}, g in {0.01, 0.04}, tau in {1, 8, 10}, n <= n_max.
std::vector<OracleRow> oracle_grid(int n_max = 50);
Report validate(int threads = 1);

struct PresetInfo {
  std::string name;
  std::string description;
};
const std::vector<PresetInfo>& presets();

/// Manifest text for a run config.
std::string manifest_text(const std::string& command, const ExperimentConfig& config,
                          const std::vector<std::string>& outputs, double wall_seconds);

}  // namespace mrcool::experiment
