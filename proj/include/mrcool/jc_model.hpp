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

// Qubit-resonator Hamiltonians and the closed-form single-interval Kraus
// operators of the Jaynes-Cummings model. Units: omega_m = 1, hbar = 1.

#include <vector>

#include <Eigen/Dense>

#include "mrcool/operators.hpp"

namespace mrcool {

struct SystemParams {
  double delta = 1.0;  // qubit splitting / omega_m
  double g = 0.04;     // coupling / omega_m
  int n_max = 0;

  /// Throws DomainError for g < 0, delta <= 0 or n_max < 0.
  void validate() const;
  /// Coupling strong enough that the rotating-wave approximation is suspect.
  bool rwa_warning() const { return g > 0.1 * delta; }
};

/// Per-level JC diagonalization, n = 1..n_max.
struct DressedSpectrum {
  std::vector<double> theta;       // mixing angle in (0, pi/2)
  std::vector<double> omega_rabi;  // Omega_n
  std::vector<double> eps_plus;
  std::vector<double> eps_minus;

  int levels() const { return static_cast<int>(theta.size()); }
  double theta_at(int n) const { return theta.at(n - 1); }
  double omega_at(int n) const { return omega_rabi.at(n - 1); }
  double eps_plus_at(int n) const { return eps_plus.at(n - 1); }
  double eps_minus_at(int n) const { return eps_minus.at(n - 1); }
};

/// Diagonal of <g| exp(-i H_JC tau) |g> and the matching qubit-flip weights.
struct EffectiveEvolution {
  double tau = 0.0;
  Eigen::VectorXcd lambda;     // n = 0..n_max
  Eigen::VectorXd off_branch;  // m_n = |<n-1,e|U|n,g>|, entry 0 is 0

  double magnitude(int n) const { return std::abs(lambda(n)); }
};

enum class QubitLevel { ground, excited };

/// Kraus operators of one interval followed by a projective qubit readout,
/// for a qubit prepared in `prepared`. `same` is the diagonal amplitude for
/// finding the qubit unchanged. `flip(n)` is the amplitude for leaving MR
/// level n with the qubit flipped; the MR lands on n-1 when prepared in |g>
/// and on n+1 when prepared in |e>.
struct KrausPair {
  QubitLevel prepared = QubitLevel::ground;
  Eigen::VectorXcd same;
  Eigen::VectorXcd flip;

  int n_max() const { return static_cast<int>(same.size()) - 1; }
  /// Dense operator for outcome |g>.
  ComplexOperator ground_operator() const;
  /// Dense operator for outcome |e>.
  ComplexOperator excited_operator() const;
};

/// (Delta/2) sigma_x + a^dag a - g (a + a^dag) sigma_z in the persistent-current
/// basis (qubit index 0 = |up>, 1 = |down>), same Fock ordering as the joint space.
ComplexOperator build_full_hamiltonian(const SystemParams& params);

/// Columns are |g> = (|down> - |up>)/sqrt(2) and |e> = (|down> + |up>)/sqrt(2)
/// written in the (|up>, |down>) basis. With this choice |g> is the lower
/// eigenstate of (Delta/2) sigma_x and the full model reduces to the JC form
/// with a positive coupling.
ComplexOperator persistent_to_energy_basis();

/// Rotate a joint persistent-basis operator into the {|g>, |e>} joint basis.
ComplexOperator to_energy_basis(const ComplexOperator& op);

/// a^dag a + (Delta/2) sigma_z~ + g (a sigma_+~ + a^dag sigma_-~).
ComplexOperator build_jc_hamiltonian(const SystemParams& params);

/// Conserved excitation number a^dag a + |e><e|.
ComplexOperator excitation_number(int n_max);

/// Throws DomainError when g = 0 and delta = 1 (theta undefined).
DressedSpectrum dressed_spectrum(const SystemParams& params);

EffectiveEvolution effective_eigenvalues(const SystemParams& params, double tau);

/// exp(-i H_k tau) on the block {|k,g>, |k-1,e>}, k >= 1.
Eigen::Matrix2cd block_propagator(const SystemParams& params, double tau, int k);

/// Kraus pair for a qubit prepared in |g> (M_g diagonal, M_e lowering).
KrausPair kraus_pair(const SystemParams& params, double tau);

/// Kraus pair for a qubit left in |e> by a previous readout.
KrausPair excited_kraus_pair(const SystemParams& params, double tau);

}  // namespace mrcool
