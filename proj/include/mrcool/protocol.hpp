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

// Repeated projective qubit readout: exact post-selected evolution of the MR
// and Born-rule sampling of outcome records.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "mrcool/jc_model.hpp"
#include "mrcool/operators.hpp"
#include "mrcool/schedule.hpp"

namespace mrcool {

enum class RunMode { postselected, trajectory };

/// What a trajectory does after reading |e>.
///  discard: stop the trajectory (it no longer counts as surviving).
///  reset:   keep the collapsed MR state, re-prepare the qubit in |g>.
///  track:   keep the qubit in |e> and evolve with the excited-branch Kraus pair.
enum class OutcomePolicy { discard, reset, track };

std::string_view to_string(RunMode mode);
std::string_view to_string(OutcomePolicy policy);

/// Observables after N = 0..steps measurements (entry 0 is the initial state).
struct CoolingRecord {
  std::vector<double> time;
  std::vector<double> nbar;
  std::vector<double> survival;
  std::vector<double> fidelity;
  MeasurementSchedule schedule;
  RunMode mode = RunMode::postselected;
  std::optional<std::vector<QubitLevel>> outcomes;
  /// Set when the run stopped before schedule.count (survival underflow or a
  /// discarded trajectory).
  bool truncated = false;

  int steps() const { return static_cast<int>(nbar.size()) - 1; }
};

struct Observables {
  double nbar = 0.0;
  double fidelity = 0.0;
};

/// Tr[rho a^dag a] and <0|rho|0> of an MR-only state.
Observables observables(const DensityMatrix& rho);

inline constexpr double kSurvivalUnderflow = 1e-300;

/// rho <- M_g(tau_j) rho M_g(tau_j)^dag / p_j after each measurement; survival is
/// the running product of the p_j. Diagonal inputs take an O(n_max) path.
CoolingRecord postselected_run(const DensityMatrix& rho0, const MeasurementSchedule& schedule,
                               const SystemParams& params);

struct TrajectoryResult {
  CoolingRecord record;
  DensityMatrix final_state;  // conditional MR state after the last step taken
  QubitLevel final_qubit = QubitLevel::ground;
};

/// One Born-rule trajectory starting from |g><g| (x) rho0.
/// record.survival(N) is 1 while every outcome so far was |g>, else 0.
TrajectoryResult sample_trajectory(const DensityMatrix& rho0, const MeasurementSchedule& schedule,
                                   const SystemParams& params, OutcomePolicy policy,
                                   std::uint64_t seed);

/// Many trajectories with streams stream_key(master_seed, i). survival(N) is
/// the fraction of trajectories whose first N outcomes were all |g>; nbar and
/// fidelity average over trajectories still running at N. Results do not
/// depend on `threads`.
CoolingRecord sample_ensemble(const DensityMatrix& rho0, const MeasurementSchedule& schedule,
                              const SystemParams& params, OutcomePolicy policy,
                              std::uint64_t master_seed, int trajectories, int threads = 1);

/// Reduction used by sample_ensemble, exposed for other trajectory sources.
/// Runs are combined in index order.
CoolingRecord aggregate_trajectories(const std::vector<CoolingRecord>& runs,
                                     const MeasurementSchedule& schedule);

struct DecayEnvelope {
  Eigen::VectorXd max_magnitude;   // Lambda_n = max_j |lambda_n(tau_j)|
  Eigen::VectorXd geometric_mean;  // |lambda_bar_n| = (prod_j |lambda_n(tau_j)|)^(1/N)
};

/// Throws DomainError for an empty interval list.
DecayEnvelope decay_envelope(const SystemParams& params, const std::vector<double>& intervals);

/// P_g(N) = sum_n |lambda_bar_n|^(2N) p_n for a diagonal initial state.
double survival_from_envelope(const DecayEnvelope& envelope, const Eigen::VectorXd& populations,
                              int measurements);

}  // namespace mrcool
