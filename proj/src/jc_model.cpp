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

#include "mrcool/jc_model.hpp"

#include <cmath>
#include <numbers>

#include "mrcool/errors.hpp"

namespace mrcool {
namespace {

constexpr Complex kI{0.0, 1.0};

// Block k: H_k = (k - 1/2) + Omega (-cos2theta sz + sin2theta sx) in the
// (|k,g>, |k-1,e>) basis. With S = sin(Omega tau) / Omega the propagator is
// exp(-i (k-1/2) tau) [[C + i d S, -i c S], [-i c S, C - i d S]],
// d = (delta - 1)/2, c = g sqrt(k); S stays finite as Omega -> 0.
struct BlockTerms {
  Complex phase;
  double cos_term;
  double detuning_term;  // d S
  double coupling_term;  // c S
};

BlockTerms block_terms(const SystemParams& p, double tau, int k) {
  const double d = 0.5 * (p.delta - 1.0);
  const double c = p.g * std::sqrt(static_cast<double>(k));
  const double omega = std::sqrt(d * d + c * c);
  const double s = omega > 0.0 ? std::sin(omega * tau) / omega : tau;
  return {std::exp(-kI * ((k - 0.5) * tau)), std::cos(omega * tau), d * s, c * s};
}

}  // namespace

void SystemParams::validate() const {
  if (!(g >= 0.0)) throw DomainError("coupling g must be non-negative");
  if (!(delta > 0.0)) throw DomainError("qubit splitting delta must be positive");
  if (n_max < 0) throw DomainError("n_max must be non-negative");
}

ComplexOperator KrausPair::ground_operator() const {
  const int m = n_max();
  ComplexOperator op = ComplexOperator::Zero(m + 1, m + 1);
  if (prepared == QubitLevel::ground) {
    op.diagonal() = same;
  } else {
    for (int n = 0; n < m; ++n) op(n + 1, n) = flip(n);
  }
  return op;
}

ComplexOperator KrausPair::excited_operator() const {
  const int m = n_max();
  ComplexOperator op = ComplexOperator::Zero(m + 1, m + 1);
  if (prepared == QubitLevel::ground) {
    for (int n = 1; n <= m; ++n) op(n - 1, n) = flip(n);
  } else {
    op.diagonal() = same;
  }
  return op;
}

ComplexOperator build_full_hamiltonian(const SystemParams& params) {
  params.validate();
  const ComplexOperator a = annihilation(params.n_max);
  const ComplexOperator id_m = ComplexOperator::Identity(params.n_max + 1, params.n_max + 1);
  return tensor_embed(0.5 * params.delta * pauli_x(), id_m) +
         tensor_embed(qubit_identity(), number_operator(params.n_max)) -
         tensor_embed(params.g * pauli_z(), a + a.adjoint());
}

ComplexOperator persistent_to_energy_basis() {
  const double r = std::numbers::sqrt2 / 2.0;
  ComplexOperator w(2, 2);
  w << -r, r,
        r, r;
  return w;
}

ComplexOperator to_energy_basis(const ComplexOperator& op) {
  const Eigen::Index m = op.rows() / 2;
  const ComplexOperator w =
      tensor_embed(persistent_to_energy_basis(), ComplexOperator::Identity(m, m));
  return w.adjoint() * op * w;
}

ComplexOperator build_jc_hamiltonian(const SystemParams& params) {
  params.validate();
  const ComplexOperator a = annihilation(params.n_max);
  const ComplexOperator id_m = ComplexOperator::Identity(params.n_max + 1, params.n_max + 1);
  return tensor_embed(qubit_identity(), number_operator(params.n_max)) +
         tensor_embed(0.5 * params.delta * sigma_z_tilde(), id_m) +
         params.g * (tensor_embed(sigma_plus_tilde(), a) +
                     tensor_embed(sigma_minus_tilde(), a.adjoint()));
}

ComplexOperator excitation_number(int n_max) {
  const ComplexOperator id_m = ComplexOperator::Identity(n_max + 1, n_max + 1);
  return tensor_embed(qubit_identity(), number_operator(n_max)) +
         tensor_embed(projector_excited(), id_m);
}

DressedSpectrum dressed_spectrum(const SystemParams& params) {
  params.validate();
  const double detuning = params.delta - 1.0;
  if (params.g == 0.0 && detuning == 0.0) {
    throw DomainError("degenerate JC blocks: g = 0 at resonance leaves theta_n undefined");
  }
  DressedSpectrum out;
  out.theta.reserve(params.n_max);
  for (int n = 1; n <= params.n_max; ++n) {
    const double c = params.g * std::sqrt(static_cast<double>(n));
    const double omega = std::sqrt(0.25 * detuning * detuning + c * c);
    // 2 theta = atan2(sin 2theta, cos 2theta) with sin 2theta >= 0
    const double two_theta = std::atan2(c / omega, 0.5 * detuning / omega);
    out.theta.push_back(0.5 * two_theta);
    out.omega_rabi.push_back(omega);
    out.eps_plus.push_back((n - 0.5) + omega);
    out.eps_minus.push_back((n - 0.5) - omega);
  }
  return out;
}

EffectiveEvolution effective_eigenvalues(const SystemParams& params, double tau) {
  params.validate();
  if (!(tau > 0.0)) throw DomainError("tau must be positive");
  EffectiveEvolution out;
  out.tau = tau;
  out.lambda.resize(params.n_max + 1);
  out.off_branch.resize(params.n_max + 1);
  out.lambda(0) = std::exp(kI * (0.5 * params.delta * tau));
  out.off_branch(0) = 0.0;
  for (int n = 1; n <= params.n_max; ++n) {
    const BlockTerms b = block_terms(params, tau, n);
    out.lambda(n) = b.phase * Complex(b.cos_term, b.detuning_term);
    out.off_branch(n) = std::abs(b.coupling_term);
  }
  return out;
}

Eigen::Matrix2cd block_propagator(const SystemParams& params, double tau, int k) {
  if (k < 1) throw DomainError("block index must be >= 1");
  const BlockTerms b = block_terms(params, tau, k);
  Eigen::Matrix2cd u;
  u << Complex(b.cos_term, b.detuning_term), Complex(0.0, -b.coupling_term),
       Complex(0.0, -b.coupling_term), Complex(b.cos_term, -b.detuning_term);
  return b.phase * u;
}

KrausPair kraus_pair(const SystemParams& params, double tau) {
  params.validate();
  if (!(tau > 0.0)) throw DomainError("tau must be positive");
  KrausPair out;
  out.prepared = QubitLevel::ground;
  out.same.resize(params.n_max + 1);
  out.flip = Eigen::VectorXcd::Zero(params.n_max + 1);
  out.same(0) = std::exp(kI * (0.5 * params.delta * tau));
  for (int n = 1; n <= params.n_max; ++n) {
    const Eigen::Matrix2cd u = block_propagator(params, tau, n);
    out.same(n) = u(0, 0);
    out.flip(n) = u(1, 0);
  }
  return out;
}

KrausPair excited_kraus_pair(const SystemParams& params, double tau) {
  params.validate();
  if (!(tau > 0.0)) throw DomainError("tau must be positive");
  const int m = params.n_max;
  KrausPair out;
  out.prepared = QubitLevel::excited;
  out.same.resize(m + 1);
  out.flip = Eigen::VectorXcd::Zero(m + 1);
  for (int n = 0; n < m; ++n) {
    const Eigen::Matrix2cd u = block_propagator(params, tau, n + 1);
    out.same(n) = u(1, 1);
    out.flip(n) = u(0, 1);
  }
  // |n_max, e> has no partner inside the truncation; it only picks up a phase.
  out.same(m) = std::exp(-kI * ((m + 0.5 * params.delta) * tau));
  return out;
}

}  // namespace mrcool
