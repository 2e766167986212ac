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

// Dense operators on the truncated MR space and the joint qubit (x) MR space.
//
// Joint basis ordering, qubit factor leftmost:
//   index(q, n) = q * (n_max + 1) + n,   q = 0 for |g>, q = 1 for |e>,
// i.e. |g,0>, |g,1>, ..., |g,n_max>, |e,0>, ..., |e,n_max>.
// Energy-basis qubit operators use sigma_z|g> = -|g>, sigma_+ = |e><g|.

#include <complex>

#include <Eigen/Dense>

namespace mrcool {

using Complex = std::complex<double>;
using ComplexOperator = Eigen::MatrixXcd;

enum class Space { mr, joint };

inline int joint_index(int qubit, int n, int n_max) { return qubit * (n_max + 1) + n; }

/// Numerical sanity of a candidate density matrix.
struct DensityCheck {
  double trace_error = 0.0;
  double hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;

  bool ok(double trace_tol = 1e-10, double herm_tol = 1e-12,
          double eig_tol = 1e-10) const {
    return trace_error < trace_tol && hermiticity_error < herm_tol &&
           min_eigenvalue >= -eig_tol;
  }
};

class DensityMatrix {
 public:
  DensityMatrix() = default;
  /// Joint matrices must have even dimension. Contents are not validated here;
  /// use check() on anything that crosses a module boundary.
  DensityMatrix(Space space, ComplexOperator entries);

  Space space() const { return space_; }
  int dim() const { return static_cast<int>(entries_.rows()); }
  int n_max() const { return space_ == Space::mr ? dim() - 1 : dim() / 2 - 1; }
  const ComplexOperator& matrix() const { return entries_; }
  ComplexOperator& matrix() { return entries_; }

  /// True when every off-diagonal entry is exactly zero.
  bool is_diagonal() const;
  DensityCheck check() const;
  /// Throws DomainError when check() fails the default tolerances.
  void validate() const;

 private:
  Space space_ = Space::mr;
  ComplexOperator entries_;
};

DensityMatrix fock_state(int n, int n_max);
/// Diagonal MR state from populations (renormalized to unit trace).
DensityMatrix diagonal_state(const Eigen::VectorXd& populations);
/// |g><g| (x) rho_m.
DensityMatrix qubit_ground_product(const DensityMatrix& rho_m);

double hermiticity_error(const ComplexOperator& a);
bool is_hermitian(const ComplexOperator& a, double tol = 1e-12);
bool is_unitary(const ComplexOperator& u, double tol = 1e-10);

// MR operators, dimension n_max + 1.
ComplexOperator annihilation(int n_max);
ComplexOperator creation(int n_max);
ComplexOperator number_operator(int n_max);

// Qubit operators in the {|g>, |e>} basis.
ComplexOperator qubit_identity();
ComplexOperator sigma_z_tilde();
ComplexOperator sigma_plus_tilde();
ComplexOperator sigma_minus_tilde();
ComplexOperator projector_ground();
ComplexOperator projector_excited();

// Pauli operators in the persistent-current basis {|up>, |down>}.
ComplexOperator pauli_x();
ComplexOperator pauli_z();

/// Kronecker product qubit_op (x) mr_op; throws DomainError unless qubit_op is 2x2.
ComplexOperator tensor_embed(const ComplexOperator& qubit_op, const ComplexOperator& mr_op);

/// Tr_qubit of a joint state; throws DomainError for MR-only input.
DensityMatrix partial_trace_qubit(const DensityMatrix& rho);

/// Returns exp(-i H t) via the eigendecomposition of the Hermitian H.
/// Throws DomainError when H is not Hermitian within 1e-12 (relative to its norm).
ComplexOperator matrix_exponential(const ComplexOperator& h, double t);

/// Tr[rho A].
Complex expectation(const DensityMatrix& rho, const ComplexOperator& op);

}  // namespace mrcool
