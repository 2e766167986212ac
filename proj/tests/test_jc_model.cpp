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

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "mrcool/errors.hpp"
#include "mrcool/jc_model.hpp"
#include "mrcool/operators.hpp"

using namespace mrcool;

namespace {

// dense oracle: e^{-i H_JC tau} built from the assembled Hamiltonian
ComplexOperator jc_oracle(const SystemParams& p, double tau) {
  return matrix_exponential(build_jc_hamiltonian(p), tau);
}

ComplexOperator qubit_block(const ComplexOperator& u, int row_q, int col_q, int n_max) {
  const int d = n_max + 1;
  return u.block(row_q * d, col_q * d, d, d);
}

}  // namespace

TEST_CASE("full hamiltonian in the persistent-current basis") {
  SystemParams p{1.1, 0.04, 6};
  auto h = build_full_hamiltonian(p);
  CHECK(is_hermitian(h));
  for (int n = 0; n < p.n_max; ++n) {
    const Complex e = h(joint_index(0, n, p.n_max), joint_index(0, n + 1, p.n_max));
    CHECK(std::abs(e - (-p.g * std::sqrt(n + 1.0))) < 1e-15);
  }
  // qubit tunnelling term Δ/2 between ↑ and ↓
  CHECK(std::abs(h(joint_index(0, 2, 6), joint_index(1, 2, 6)) - 0.55) < 1e-15);
}

TEST_CASE("energy basis: full hamiltonian = JC + counter-rotating terms") {
  for (double delta : {1.0, 1.1, 0.7}) {
    SystemParams p{delta, 0.04, 8};
    auto a = annihilation(p.n_max);
    ComplexOperator counter =
        p.g * (tensor_embed(sigma_plus_tilde(), a.adjoint()) + tensor_embed(sigma_minus_tilde(), a));
    auto diff = to_energy_basis(build_full_hamiltonian(p)) - build_jc_hamiltonian(p);
    CHECK((diff - counter).norm() < 1e-13);
  }
  CHECK(is_unitary(persistent_to_energy_basis()));
}

TEST_CASE("rotating-wave approximation tracks the full dynamics for small g") {
  SystemParams p{1.0, 0.01, 30};
  const double tau = 10.0;
  auto u_full = matrix_exponential(to_energy_basis(build_full_hamiltonian(p)), tau);
  auto u_jc = jc_oracle(p, tau);
  for (int n = 0; n <= 5; ++n) {
    const int i = joint_index(0, n, p.n_max);
    CHECK(std::abs(std::abs(u_full(i, i)) - std::abs(u_jc(i, i))) < 5e-2);
  }
  CHECK_FALSE(p.rwa_warning());
  CHECK(SystemParams{1.0, 0.2, 5}.rwa_warning());
}

TEST_CASE("JC hamiltonian structure") {
  SystemParams p{1.1, 0.04, 10};
  auto h = build_jc_hamiltonian(p);
  CHECK(std::abs(h(0, 0) - (-0.55)) < 1e-15);  // |0,g⟩
  auto nc = excitation_number(p.n_max);
  CHECK((h * nc - nc * h).norm() < 1e-14);

  // each block {|k,g⟩, |k-1,e⟩} has the dressed energies as eigenvalues
  auto spec = dressed_spectrum(p);
  for (int k = 1; k <= p.n_max; ++k) {
    const int a = joint_index(0, k, p.n_max), b = joint_index(1, k - 1, p.n_max);
    Eigen::Matrix2cd blk;
    blk << h(a, a), h(a, b), h(b, a), h(b, b);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(blk);
    CHECK(std::abs(es.eigenvalues()(0) - spec.eps_minus_at(k)) < 1e-13);
    CHECK(std::abs(es.eigenvalues()(1) - spec.eps_plus_at(k)) < 1e-13);
    CHECK(std::abs(h(a, b) - p.g * std::sqrt(double(k))) < 1e-15);
  }
}

TEST_CASE("dressed spectrum") {
  SUBCASE("resonance mixes equally") {
    auto s = dressed_spectrum({1.0, 0.04, 20});
    for (int n = 1; n <= 20; ++n) {
      CHECK(std::abs(s.theta_at(n) - std::numbers::pi / 4) < 1e-15);
      CHECK(std::abs(s.omega_at(n) - 0.04 * std::sqrt(double(n))) < 1e-15);
    }
  }
  SUBCASE("detuned rabi frequency") {
    auto s = dressed_spectrum({1.1, 0.04, 3});
    CHECK(std::abs(s.omega_at(1) - 0.064031) < 1e-6);
    CHECK(std::abs(s.omega_at(1) - std::sqrt(0.05 * 0.05 + 0.04 * 0.04)) < 1e-15);
    for (int n = 1; n <= 3; ++n) {
      CHECK(s.theta_at(n) > 0.0);
      CHECK(s.theta_at(n) < std::numbers::pi / 2);
      CHECK(std::abs(s.eps_plus_at(n) - s.eps_minus_at(n) - 2 * s.omega_at(n)) < 1e-14);
    }
  }
  SUBCASE("uncoupled levels") {
    const double delta = 1.3;
    auto s = dressed_spectrum({delta, 0.0, 4});
    for (int n = 1; n <= 4; ++n) {
      // {n + Δ/2 - 1, n - Δ/2}: energies of |n-1,e⟩ and |n,g⟩
      CHECK(std::abs(s.eps_plus_at(n) - (n - 1 + delta / 2)) < 1e-14);
      CHECK(std::abs(s.eps_minus_at(n) - (n - delta / 2)) < 1e-14);
    }
  }
  SUBCASE("degenerate resonance without coupling") {
    CHECK_THROWS_AS(dressed_spectrum({1.0, 0.0, 4}), DomainError);
  }
}

TEST_CASE("effective eigenvalues match the dense oracle") {
  for (double delta : {1.0, 1.1})
    for (double g : {0.01, 0.04})
      for (double tau : {1.0, 8.0, 10.0}) {
        SystemParams p{delta, g, 50};
        auto u = jc_oracle(p, tau);
        auto ev = effective_eigenvalues(p, tau);
        double worst = 0.0;
        for (int n = 0; n <= p.n_max; ++n) {
          const int i = joint_index(0, n, p.n_max);
          worst = std::max(worst, std::abs(ev.lambda(n) - u(i, i)));
          if (n > 0) {
            const double m = std::abs(u(joint_index(1, n - 1, p.n_max), i));
            CHECK(std::abs(ev.off_branch(n) - m) < 1e-10);
          }
        }
        CHECK(worst < 1e-10);
      }
}

TEST_CASE("effective eigenvalues: closed forms") {
  SystemParams p{1.0, 0.04, 30};
  auto ev = effective_eigenvalues(p, 10.0);
  CHECK(std::abs(ev.magnitude(0) - 1.0) < 1e-15);
  CHECK(std::abs(ev.lambda(0) - std::exp(Complex(0, 0.5 * 10.0))) < 1e-14);
  CHECK(std::abs(ev.magnitude(1) - std::cos(0.4)) < 1e-14);
  CHECK(std::abs(ev.magnitude(1) - 0.92106) < 1e-5);

  // |λ|² = cos²Ωτ + sin²Ωτ cos²2θ away from resonance
  SystemParams q{1.1, 0.04, 30};
  auto s = dressed_spectrum(q);
  auto ew = effective_eigenvalues(q, 8.0);
  for (int n = 1; n <= q.n_max; ++n) {
    const double x = s.omega_at(n) * 8.0, c2 = std::cos(2 * s.theta_at(n));
    const double mag2 = std::cos(x) * std::cos(x) + std::sin(x) * std::sin(x) * c2 * c2;
    CHECK(std::abs(std::norm(ew.lambda(n)) - mag2) < 1e-13);
  }
  CHECK_THROWS_AS(effective_eigenvalues(p, 0.0), DomainError);
}

TEST_CASE("uncoupled qubit: no transitions") {
  SystemParams p{1.2, 0.0, 10};
  auto ev = effective_eigenvalues(p, 5.0);
  for (int n = 0; n <= p.n_max; ++n) {
    CHECK(std::abs(ev.magnitude(n) - 1.0) < 1e-14);
    CHECK(ev.off_branch(n) == 0.0);
  }
  auto k = kraus_pair(p, 5.0);
  CHECK(k.excited_operator().norm() == 0.0);
}

TEST_CASE("kraus completeness and the Zeno bound") {
  for (double delta : {1.0, 1.1})
    for (double g : {0.01, 0.04})
      for (double tau : {1e-4, 1.0, 8.0, 10.0}) {
        SystemParams p{delta, g, 50};
        auto ev = effective_eigenvalues(p, tau);
        for (int n = 0; n <= p.n_max; ++n) {
          CHECK(std::abs(std::norm(ev.lambda(n)) + ev.off_branch(n) * ev.off_branch(n) - 1.0) <
                1e-12);
          // m_n ≤ g√n τ, hence |λ_n| → 1 as τ → 0
          CHECK(ev.off_branch(n) <= g * std::sqrt(double(n)) * tau * (1 + 1e-12));
        }
        auto k = kraus_pair(p, tau);
        ComplexOperator sum = k.ground_operator().adjoint() * k.ground_operator() +
                              k.excited_operator().adjoint() * k.excited_operator();
        CHECK(sum.isIdentity(1e-12));
      }
  auto zeno = effective_eigenvalues({1.0, 0.04, 50}, 1e-6);
  CHECK(zeno.lambda.cwiseAbs().minCoeff() > 1 - 1e-12);
}

TEST_CASE("kraus operators are blocks of the propagator") {
  for (double delta : {1.0, 1.1}) {
    SystemParams p{delta, 0.04, 12};
    const double tau = 8.0;
    auto u = jc_oracle(p, tau);

    auto kg = kraus_pair(p, tau);
    CHECK((kg.ground_operator() - qubit_block(u, 0, 0, p.n_max)).norm() < 1e-12);
    CHECK((kg.excited_operator() - qubit_block(u, 1, 0, p.n_max)).norm() < 1e-12);

    auto ke = excited_kraus_pair(p, tau);
    CHECK((ke.excited_operator() - qubit_block(u, 1, 1, p.n_max)).norm() < 1e-12);
    CHECK((ke.ground_operator() - qubit_block(u, 0, 1, p.n_max)).norm() < 1e-12);
    ComplexOperator sum = ke.ground_operator().adjoint() * ke.ground_operator() +
                          ke.excited_operator().adjoint() * ke.excited_operator();
    CHECK(sum.isIdentity(1e-12));
  }
}

TEST_CASE("one quantum: e outcome weight") {
  SystemParams p{1.0, 0.04, 5};
  auto k = kraus_pair(p, 10.0);
  // M_e|1⟩ = amplitude on |0⟩ with modulus |sin gτ|
  CHECK(std::abs(std::abs(k.excited_operator()(0, 1)) - std::abs(std::sin(0.4))) < 1e-14);
}

TEST_CASE("block propagator") {
  SystemParams p{1.1, 0.04, 8};
  auto u = jc_oracle(p, 3.0);
  for (int k = 1; k <= p.n_max; ++k) {
    auto b = block_propagator(p, 3.0, k);
    CHECK(is_unitary(b, 1e-13));
    const int i0 = joint_index(0, k, p.n_max), i1 = joint_index(1, k - 1, p.n_max);
    CHECK(std::abs(b(0, 0) - u(i0, i0)) < 1e-12);
    CHECK(std::abs(b(0, 1) - u(i0, i1)) < 1e-12);
    CHECK(std::abs(b(1, 0) - u(i1, i0)) < 1e-12);
    CHECK(std::abs(b(1, 1) - u(i1, i1)) < 1e-12);
  }
  CHECK_THROWS_AS(block_propagator(p, 3.0, 0), DomainError);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(SystemParams({1.0, -0.1, 5}).validate(), DomainError);
  CHECK_THROWS_AS(SystemParams({0.0, 0.1, 5}).validate(), DomainError);
  CHECK_THROWS_AS(SystemParams({1.0, 0.1, -1}).validate(), DomainError);
}
