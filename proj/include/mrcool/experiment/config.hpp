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

// Experiment configuration: a strict YAML schema whose physical quantities
// carry unit suffixes. Accepted units:
//   temperature   K, mK
//   frequency     Hz, kHz, MHz, GHz (cycles; omega = 2 pi f)
//   energy/rate   wm   (multiples of omega_m), or a frequency unit
//   time          /wm  (multiples of 1/omega_m)
// Frequency units and kelvin inputs need system.omega_m.
//
//   name: fig1-resonant
//   system:      {omega_m: 100 MHz, delta: 1 wm, g: 0.04 wm, n_max: auto, tail_tolerance: 1e-12}
//   schedule:    {kind: etim, tau: 10 /wm, count: 60, seed: 1}
//   initial_state: {temperature: 20 mK}      # or {nbar: 3.69} or {populations: [...]}
//   dissipation: {quality_factor: 1e5, nbar_bath: 7.84, dt: 0.02 /wm}   # optional
//   mode: postselected                        # or trajectory
//   trajectory:  {policy: discard, count: 10000}
//   sweep:       {aggregate: none, axes: [{axis: schedule.tau, values: [1, 2]}]}
//   output:      {csv: run.csv, manifest: run.manifest.yaml}

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrcool/jc_model.hpp"
#include "mrcool/lindblad.hpp"
#include "mrcool/protocol.hpp"
#include "mrcool/schedule.hpp"

namespace mrcool::experiment {

struct InitialStateSpec {
  enum class Kind { temperature, nbar, populations };
  Kind kind = Kind::nbar;
  double temperature_kelvin = 0.0;
  double nbar = 0.0;
  std::vector<double> populations;
};

struct DissipationSpec {
  DissipationParams rates;  // gamma_m resolved from quality_factor when given
  std::optional<double> quality_factor;
  std::optional<double> bath_temperature_kelvin;  // overrides rates.nbar_bath
  double dt = 0.02;
};

struct SweepAxis {
  std::string axis;
  std::vector<double> values;
};

enum class Aggregate { none, mean };

struct ExperimentConfig {
  std::string name = "run";
  std::optional<double> omega_m_hz;
  double delta = 1.0;
  double g = 0.04;
  std::optional<int> n_max;  // empty: automatic
  double tail_tolerance = 1e-12;

  ScheduleKind schedule_kind = ScheduleKind::etim;
  double tau = 10.0;
  int count = 60;
  std::uint64_t seed = 1;

  InitialStateSpec initial;
  std::optional<DissipationSpec> dissipation;

  RunMode mode = RunMode::postselected;
  OutcomePolicy policy = OutcomePolicy::discard;
  int trajectories = 1000;

  std::vector<SweepAxis> sweep;
  Aggregate aggregate = Aggregate::none;

  std::string csv = "run.csv";
  std::string manifest = "run.manifest.yaml";
};

inline constexpr std::size_t kMaxSweepCombinations = 10000;

/// Axes accepted in sweep.axes[].axis.
const std::vector<std::string>& sweep_axis_names();

/// Parses a config document, or the `config` section of a manifest.
/// Throws ConfigError with "source:line: field: reason" diagnostics.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

/// A config file or a run manifest. Manifests also name the command that
/// produced them so presets without a run config (validate) can be replayed.
struct ConfigDocument {
  std::string command = "run";
  bool is_manifest = false;
  ExperimentConfig config;
};

ConfigDocument parse_document(const std::string& text, const std::string& source = "<config>");
ConfigDocument load_document(const std::string& path);

/// Canonical YAML for `config`; parse_config(emit_config(c)) == c bit for bit.
std::string emit_config(const ExperimentConfig& config);

/// Applies a sweep axis value (in canonical units) to a copy of config.
ExperimentConfig with_axis_value(const ExperimentConfig& config, const std::string& axis,
                                 double value);

/// Formats a double so that parsing it back yields the same value.
std::string format_double(double v);

}  // namespace mrcool::experiment
