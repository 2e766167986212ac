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

// Markovian open-system evolution of the joint qubit (x) MR state:
//
//   d rho/dt = -i[H, rho] + gamma_m (nbar_bath + 1) D[a] rho + gamma_m nbar_bath D[a^dag] rho
//              + gamma_q_relax D[sigma_-~] rho + (gamma_q_phi / 2) D[sigma_z~] rho,
//   D[L] rho = L rho L^dag - {L^dag L, rho} / 2,
//
// integrated with fixed-step classical RK4. When H commutes with the
// excitation number N_c = a^dag a + |e><e| the integration runs in the frame
// rotating with N_c; every dissipator above is invariant under that rotation.
// If in addition rho is block-diagonal in N_c, only the 2x2 blocks
// {|k,g>, |k-1,e>} are propagated.

#include <cstdint>

#include "mrcool/jc_model.hpp"
#include "mrcool/operators.hpp"
#include "mrcool/protocol.hpp"
#include "mrcool/schedule.hpp"

namespace mrcool {

struct DissipationParams {
  double gamma_m = 0.0;
  double nbar_bath = 0.0;
  double gamma_q_relax = 0.0;
  double gamma_q_phi = 0.0;

  /// Throws DomainError for negative rates or occupation.
  void validate() const;
  bool is_zero() const {
    return gamma_m == 0.0 && gamma_q_relax == 0.0 && gamma_q_phi == 0.0;
  }
  /// Largest decay rate of the dissipator on a truncation with n_max levels.
  double stiffness(int n_max) const;
};

/// gamma_m = omega_m / Q_m.
inline double gamma_from_quality(double quality_factor) { return 1.0 / quality_factor; }

struct IntegratorConfig {
  double dt = 0.02;
  /// Allow the N_c block fast path. Off forces the dense generator.
  bool block_fast_path = true;
};

inline constexpr double kPositivityTolerance = 1e-6;

struct LindbladDiagnostics {
  int steps = 0;
  bool rotating_frame = false;
  bool block_path = false;
  double trace_drift = 0.0;
  double min_eigenvalue = 0.0;
};

/// Throws ConfigError when dt > 0.05 / max(1, delta, Omega_{n_max}) or when
/// dt times the dissipator stiffness exceeds the RK4 stability margin.
void validate_step(const IntegratorConfig& cfg, const SystemParams& params,
                   const DissipationParams& diss);

/// Evolves a joint state for `duration`. Throws ConfigError when dt does not
/// resolve the fastest frequency of H in the integration frame (or the
/// dissipator stiffness), NumericalError when the result has an eigenvalue
/// below -kPositivityTolerance or is not finite.
DensityMatrix lindblad_evolve(const DensityMatrix& rho, const ComplexOperator& h,
                              const DissipationParams& diss, double duration,
                              const IntegratorConfig& cfg,
                              LindbladDiagnostics* diagnostics = nullptr);

struct DampedRunOptions {
  RunMode mode = RunMode::postselected;
  OutcomePolicy policy = OutcomePolicy::discard;
  std::uint64_t seed = 0;
};

struct DampedRunResult {
  CoolingRecord record;
  DensityMatrix final_state;  // joint
  double max_trace_drift = 0.0;
  double min_eigenvalue = 0.0;
};

/// Measurement protocol with Lindblad evolution between readouts, starting
/// from |g><g| (x) rho_m0 under the JC Hamiltonian. After each readout the
/// qubit is projected; postselected mode keeps the |g> branch and multiplies
/// survival by its probability, trajectory mode samples the outcome.
DampedRunResult damped_protocol_run(const DensityMatrix& rho_m0,
                                    const MeasurementSchedule& schedule,
                                    const SystemParams& params, const DissipationParams& diss,
                                    const IntegratorConfig& cfg,
                                    const DampedRunOptions& options = {});

}  // namespace mrcool
