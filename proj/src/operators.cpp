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

#include "mrcool/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "mrcool/errors.hpp"

namespace mrcool {

DensityMatrix::DensityMatrix(Space space, ComplexOperator entries)
    : space_(space), entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw DomainError("density matrix must be square and non-empty");
  }
  if (space_ == Space::joint && entries_.rows() % 2 != 0) {
    throw DomainError("joint density matrix must have even dimension");
  }
}

bool DensityMatrix::is_diagonal() const {
  for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
    for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
      if (i != j && entries_(i, j) != Complex(0.0, 0.0)) return false;
    }
  }
  return true;
}

DensityCheck DensityMatrix::check() const {
  DensityCheck out;
  out.trace_error = std::abs(entries_.trace() - Complex(1.0, 0.0));
  out.hermiticity_error = hermiticity_error(entries_);
  if (is_diagonal()) {
    out.min_eigenvalue = entries_.diagonal().real().minCoeff();
  } else {
    const ComplexOperator sym = 0.5 * (entries_ + entries_.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexOperator> es(sym, Eigen::EigenvaluesOnly);
    out.min_eigenvalue = es.eigenvalues().minCoeff();
  }
  return out;
}

void DensityMatrix::validate() const {
  const DensityCheck c = check();
  if (!c.ok()) {
    std::ostringstream msg;
    msg << "invalid density matrix: trace error " << c.trace_error << ", hermiticity error "
        << c.hermiticity_error << ", min eigenvalue " << c.min_eigenvalue;
    throw DomainError(msg.str());
  }
}

DensityMatrix fock_state(int n, int n_max) {
  if (n < 0 || n > n_max) throw DomainError("Fock level outside truncation");
  ComplexOperator m = ComplexOperator::Zero(n_max + 1, n_max + 1);
  m(n, n) = 1.0;
  return {Space::mr, std::move(m)};
}

DensityMatrix diagonal_state(const Eigen::VectorXd& populations) {
  if (populations.size() == 0) throw DomainError("empty population vector");
  if ((populations.array() < 0.0).any()) throw DomainError("negative population");
  const double total = populations.sum();
  if (!(total > 0.0)) throw DomainError("populations sum to zero");
  ComplexOperator m = ComplexOperator::Zero(populations.size(), populations.size());
  m.diagonal() = (populations / total).cast<Complex>();
  return {Space::mr, std::move(m)};
}

DensityMatrix qubit_ground_product(const DensityMatrix& rho_m) {
  if (rho_m.space() != Space::mr) throw DomainError("expected an MR-only state");
  return {Space::joint, tensor_embed(projector_ground(), rho_m.matrix())};
}

double hermiticity_error(const ComplexOperator& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexOperator& a, double tol) {
  return a.rows() == a.cols() && hermiticity_error(a) < tol;
}

bool is_unitary(const ComplexOperator& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const ComplexOperator defect = u.adjoint() * u - ComplexOperator::Identity(u.rows(), u.cols());
  return defect.cwiseAbs().maxCoeff() < tol;
}

ComplexOperator annihilation(int n_max) {
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  ComplexOperator a = ComplexOperator::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

ComplexOperator creation(int n_max) { return annihilation(n_max).adjoint(); }

ComplexOperator number_operator(int n_max) {
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  ComplexOperator num = ComplexOperator::Zero(n_max + 1, n_max + 1);
  for (int n = 0; n <= n_max; ++n) num(n, n) = static_cast<double>(n);
  return num;
}

ComplexOperator qubit_identity() { return ComplexOperator::Identity(2, 2); }

ComplexOperator sigma_z_tilde() {
  ComplexOperator s = ComplexOperator::Zero(2, 2);
  s(0, 0) = -1.0;
  s(1, 1) = 1.0;
  return s;
}

ComplexOperator sigma_plus_tilde() {
  ComplexOperator s = ComplexOperator::Zero(2, 2);
  s(1, 0) = 1.0;
  return s;
}

ComplexOperator sigma_minus_tilde() { return sigma_plus_tilde().adjoint(); }

ComplexOperator projector_ground() {
  ComplexOperator p = ComplexOperator::Zero(2, 2);
  p(0, 0) = 1.0;
  return p;
}

ComplexOperator projector_excited() {
  ComplexOperator p = ComplexOperator::Zero(2, 2);
  p(1, 1) = 1.0;
  return p;
}

ComplexOperator pauli_x() {
  ComplexOperator s = ComplexOperator::Zero(2, 2);
  s(0, 1) = 1.0;
  s(1, 0) = 1.0;
  return s;
}

ComplexOperator pauli_z() {
  ComplexOperator s = ComplexOperator::Zero(2, 2);
  s(0, 0) = 1.0;
  s(1, 1) = -1.0;
  return s;
}

ComplexOperator tensor_embed(const ComplexOperator& qubit_op, const ComplexOperator& mr_op) {
  if (qubit_op.rows() != 2 || qubit_op.cols() != 2) {
    throw DomainError("tensor_embed: qubit operator must be 2x2");
  }
  if (mr_op.rows() != mr_op.cols() || mr_op.rows() == 0) {
    throw DomainError("tensor_embed: MR operator must be square and non-empty");
  }
  const Eigen::Index m = mr_op.rows();
  ComplexOperator out(2 * m, 2 * m);
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) out.block(p * m, q * m, m, m) = qubit_op(p, q) * mr_op;
  }
  return out;
}

DensityMatrix partial_trace_qubit(const DensityMatrix& rho) {
  if (rho.space() != Space::joint) throw DomainError("partial_trace_qubit needs a joint state");
  const Eigen::Index m = rho.dim() / 2;
  const auto& r = rho.matrix();
  return {Space::mr, r.topLeftCorner(m, m) + r.bottomRightCorner(m, m)};
}

ComplexOperator matrix_exponential(const ComplexOperator& h, double t) {
  if (h.rows() != h.cols()) throw DomainError("matrix_exponential: operator is not square");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (hermiticity_error(h) >= 1e-12 * scale) {
    throw DomainError("matrix_exponential: operator is not Hermitian");
  }
  const ComplexOperator sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexOperator> es(sym);
  if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<Complex>() * Complex(0.0, -t)).array().exp().matrix();
  const ComplexOperator& v = es.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

Complex expectation(const DensityMatrix& rho, const ComplexOperator& op) {
  if (op.rows() != rho.dim() || op.cols() != rho.dim()) {
    throw DomainError("expectation: dimension mismatch");
  }
  return (rho.matrix() * op).trace();
}

}  // namespace mrcool
