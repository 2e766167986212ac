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

#include "mrcool/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "mrcool/errors.hpp"

namespace mrcool {
namespace {

using SparseOp = Eigen::SparseMatrix<Complex>;
constexpr Complex kI{0.0, 1.0};
constexpr double kRk4StabilityMargin = 2.5;

// Excitation number of joint basis index i.
int excitations(int i, int n_max) {
  const int q = i / (n_max + 1);
  return i % (n_max + 1) + q;
}

bool commutes_with_excitation_number(const ComplexOperator& h, int n_max) {
  const double tol = 1e-14 * std::max(1.0, h.cwiseAbs().maxCoeff());
  for (Eigen::Index j = 0; j < h.cols(); ++j) {
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
      if (excitations(i, n_max) != excitations(j, n_max) && std::abs(h(i, j)) > tol) return false;
    }
  }
  return true;
}

bool block_diagonal_in_excitations(const ComplexOperator& rho, int n_max) {
  for (Eigen::Index j = 0; j < rho.cols(); ++j) {
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
      if (excitations(i, n_max) != excitations(j, n_max) && rho(i, j) != Complex(0.0, 0.0)) {
        return false;
      }
    }
  }
  return true;
}

// Upper bound on the largest transition frequency of h (Gershgorin discs).
double frequency_bound(const ComplexOperator& h) {
  double hi = -1e300, lo = 1e300;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    double radius = 0.0;
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      if (j != i) radius += std::abs(h(i, j));
    }
    hi = std::max(hi, h(i, i).real() + radius);
    lo = std::min(lo, h(i, i).real() - radius);
  }
  return hi - lo;
}

void check_step(double dt, double frequency, double stiffness) {
  if (!(dt > 0.0)) throw ConfigError("integrator dt must be positive");
  const double limit = 0.05 / std::max(1.0, frequency);
  if (dt > limit) {
    std::ostringstream msg;
    msg << "integrator dt = " << dt << " does not resolve frequency " << frequency
        << " (need dt <= " << limit << ")";
    throw ConfigError(msg.str());
  }
  if (dt * stiffness > kRk4StabilityMargin) {
    std::ostringstream msg;
    msg << "integrator dt = " << dt << " is unstable for dissipator stiffness " << stiffness
        << " (need dt <= " << kRk4StabilityMargin / stiffness << ")";
    throw ConfigError(msg.str());
  }
}

double min_eigenvalue_2x2(const Eigen::Matrix2cd& m) {
  const double a = m(0, 0).real(), d = m(1, 1).real();
  const double half = 0.5 * (a - d);
  return 0.5 * (a + d) - std::sqrt(half * half + std::norm(m(1, 0)));
}

// ---------------------------------------------------------------------------
// N_c block representation. Block k holds the 2x2 density matrix on
// (|k,g>, |k-1,e>), k = 0..n_max+1; components outside the truncation
// (|0-1,e> and |n_max+1,g>) are identically zero.

using Blocks = std::vector<Eigen::Matrix2cd>;

class BlockGenerator {
 public:
  BlockGenerator(const ComplexOperator& h, const DissipationParams& diss, int n_max)
      : n_max_(n_max), h_eff_(n_max + 2), gain_down_(n_max + 2), gain_up_(n_max + 2) {
    const double down = diss.gamma_m * (diss.nbar_bath + 1.0);
    const double up = diss.gamma_m * diss.nbar_bath;
    relax_ = diss.gamma_q_relax;
    dephase_ = 0.5 * diss.gamma_q_phi;
    for (int k = 0; k <= n_max + 1; ++k) {
      const bool has_g = k <= n_max;
      const bool has_e = k >= 1;
      Eigen::Matrix2cd hk = Eigen::Matrix2cd::Zero();
      const int ig = joint_index(0, std::min(k, n_max), n_max);
      const int ie = joint_index(1, std::max(k - 1, 0), n_max);
      if (has_g) hk(0, 0) = h(ig, ig) - static_cast<double>(k);
      if (has_e) hk(1, 1) = h(ie, ie) - static_cast<double>(k);
      if (has_g && has_e) {
        hk(0, 1) = h(ig, ie);
        hk(1, 0) = h(ie, ig);
      }
      // sum_L rate L^dag L restricted to block k
      const double n_g = k, n_e = k - 1;
      double loss_g = 0.0, loss_e = 0.0;
      if (has_g) loss_g = down * n_g + up * (k < n_max ? n_g + 1.0 : 0.0);
      if (has_e) loss_e = down * n_e + up * (k - 1 < n_max ? n_e + 1.0 : 0.0) + relax_;
      h_eff_[k] = hk;
      h_eff_[k](0, 0) -= 0.5 * kI * loss_g;
      h_eff_[k](1, 1) -= 0.5 * kI * loss_e;
      // a: block k+1 -> k, amplitudes sqrt(k+1) (g) and sqrt(k) (e)
      gain_down_[k] = std::sqrt(down) * Eigen::Vector2d(has_g ? std::sqrt(k + 1.0) : 0.0,
                                                        std::sqrt(static_cast<double>(k)));
      // a^dag: block k-1 -> k, amplitudes sqrt(k) (g) and sqrt(k-1) (e)
      gain_up_[k] = std::sqrt(up) * Eigen::Vector2d(has_g && k >= 1 ? std::sqrt(1.0 * k) : 0.0,
                                                    k >= 2 ? std::sqrt(k - 1.0) : 0.0);
    }
  }

  void apply(const Blocks& r, Blocks& out) const {
    const int last = n_max_ + 1;
    for (int k = 0; k <= last; ++k) {
      const Eigen::Matrix2cd a = h_eff_[k] * r[k];
      Eigen::Matrix2cd d = -kI * a + kI * a.adjoint();
      if (k < last) {
        const Eigen::Vector2d& s = gain_down_[k];
        d += s.asDiagonal() * r[k + 1] * s.asDiagonal();
        // sigma_-: e component of block k+1 feeds the g component of block k
        d(0, 0) += relax_ * r[k + 1](1, 1);
      }
      if (k > 0) {
        const Eigen::Vector2d& s = gain_up_[k];
        d += s.asDiagonal() * r[k - 1] * s.asDiagonal();
      }
      if (dephase_ != 0.0) {
        d(0, 1) -= 2.0 * dephase_ * r[k](0, 1);
        d(1, 0) -= 2.0 * dephase_ * r[k](1, 0);
      }
      out[k] = d;
    }
  }

  double frequency_bound() const {
    double hi = -1e300, lo = 1e300;
    for (const auto& hk : h_eff_) {
      const double radius = std::abs(hk(0, 1));
      for (int c = 0; c < 2; ++c) {
        hi = std::max(hi, hk(c, c).real() + radius);
        lo = std::min(lo, hk(c, c).real() - radius);
      }
    }
    return hi - lo;
  }

 private:
  int n_max_;
  double relax_ = 0.0;
  double dephase_ = 0.0;
  std::vector<Eigen::Matrix2cd> h_eff_;
  std::vector<Eigen::Vector2d> gain_down_;
  std::vector<Eigen::Vector2d> gain_up_;
};

Blocks to_blocks(const ComplexOperator& rho, int n_max) {
  Blocks b(n_max + 2, Eigen::Matrix2cd::Zero());
  for (int k = 0; k <= n_max + 1; ++k) {
    const bool has_g = k <= n_max, has_e = k >= 1;
    const int ig = joint_index(0, std::min(k, n_max), n_max);
    const int ie = joint_index(1, std::max(k - 1, 0), n_max);
    if (has_g) b[k](0, 0) = rho(ig, ig);
    if (has_e) b[k](1, 1) = rho(ie, ie);
    if (has_g && has_e) {
      b[k](0, 1) = rho(ig, ie);
      b[k](1, 0) = rho(ie, ig);
    }
  }
  return b;
}

ComplexOperator from_blocks(const Blocks& b, int n_max) {
  const int dim = 2 * (n_max + 1);
  ComplexOperator rho = ComplexOperator::Zero(dim, dim);
  for (int k = 0; k <= n_max + 1; ++k) {
    const bool has_g = k <= n_max, has_e = k >= 1;
    const int ig = joint_index(0, std::min(k, n_max), n_max);
    const int ie = joint_index(1, std::max(k - 1, 0), n_max);
    if (has_g) rho(ig, ig) = b[k](0, 0);
    if (has_e) rho(ie, ie) = b[k](1, 1);
    if (has_g && has_e) {
      rho(ig, ie) = b[k](0, 1);
      rho(ie, ig) = b[k](1, 0);
    }
  }
  return rho;
}

void evolve_blocks(Blocks& r, const BlockGenerator& gen, double duration, double dt, int& steps) {
  const int n_steps = static_cast<int>(std::ceil(duration / dt - 1e-12));
  if (n_steps == 0) return;
  const double h = duration / n_steps;
  const std::size_t nb = r.size();
  Blocks k1(nb), k2(nb), k3(nb), k4(nb), tmp(nb);
  for (int s = 0; s < n_steps; ++s) {
    gen.apply(r, k1);
    for (std::size_t i = 0; i < nb; ++i) tmp[i] = r[i] + 0.5 * h * k1[i];
    gen.apply(tmp, k2);
    for (std::size_t i = 0; i < nb; ++i) tmp[i] = r[i] + 0.5 * h * k2[i];
    gen.apply(tmp, k3);
    for (std::size_t i = 0; i < nb; ++i) tmp[i] = r[i] + h * k3[i];
    gen.apply(tmp, k4);
    for (std::size_t i = 0; i < nb; ++i) {
      r[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      r[i] = 0.5 * (r[i] + r[i].adjoint()).eval();
    }
  }
  steps += n_steps;
}

// ---------------------------------------------------------------------------
// Dense generator with sparse operators.

class DenseGenerator {
 public:
  DenseGenerator(const ComplexOperator& h_frame, const DissipationParams& diss, int n_max) {
    const int m = n_max + 1;
    const ComplexOperator id_m = ComplexOperator::Identity(m, m);
    const ComplexOperator a = annihilation(n_max);
    std::vector<std::pair<double, ComplexOperator>> channels = {
        {diss.gamma_m * (diss.nbar_bath + 1.0), tensor_embed(qubit_identity(), a)},
        {diss.gamma_m * diss.nbar_bath, tensor_embed(qubit_identity(), a.adjoint())},
        {diss.gamma_q_relax, tensor_embed(sigma_minus_tilde(), id_m)},
        {0.5 * diss.gamma_q_phi, tensor_embed(sigma_z_tilde(), id_m)},
    };
    ComplexOperator h_eff = h_frame;
    for (const auto& [rate, op] : channels) {
      if (rate == 0.0) continue;
      const ComplexOperator jump = std::sqrt(rate) * op;
      h_eff -= 0.5 * kI * (jump.adjoint() * jump);
      jumps_.push_back(jump.sparseView());
      jumps_adj_.push_back(SparseOp(jumps_.back().adjoint()));
    }
    h_eff_ = h_eff.sparseView();
  }

  void apply(const ComplexOperator& r, ComplexOperator& out) const {
    const ComplexOperator a = h_eff_ * r;
    out = -kI * a + kI * a.adjoint();
    for (std::size_t i = 0; i < jumps_.size(); ++i) {
      const ComplexOperator lr = jumps_[i] * r;
      out += lr * jumps_adj_[i];
    }
  }

 private:
  SparseOp h_eff_;
  std::vector<SparseOp> jumps_;
  std::vector<SparseOp> jumps_adj_;
};

void evolve_dense(ComplexOperator& r, const DenseGenerator& gen, double duration, double dt,
                  int& steps) {
  const int n_steps = static_cast<int>(std::ceil(duration / dt - 1e-12));
  if (n_steps == 0) return;
  const double h = duration / n_steps;
  ComplexOperator k1, k2, k3, k4;
  for (int s = 0; s < n_steps; ++s) {
    gen.apply(r, k1);
    gen.apply(r + 0.5 * h * k1, k2);
    gen.apply(r + 0.5 * h * k2, k3);
    gen.apply(r + h * k3, k4);
    r += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    r = 0.5 * (r + r.adjoint()).eval();
  }
  steps += n_steps;
}

void check_positivity(double min_eig, const LindbladDiagnostics& d) {
  if (!std::isfinite(min_eig) || min_eig < -kPositivityTolerance) {
    std::ostringstream msg;
    msg << "Lindblad integration lost positivity: min eigenvalue " << min_eig << " after "
        << d.steps << " steps (" << (d.block_path ? "block" : "dense") << " path, "
        << (d.rotating_frame ? "rotating" : "lab") << " frame, trace drift " << d.trace_drift
        << ")";
    throw NumericalError(msg.str());
  }
}

}  // namespace

void DissipationParams::validate() const {
  if (!(gamma_m >= 0.0 && nbar_bath >= 0.0 && gamma_q_relax >= 0.0 && gamma_q_phi >= 0.0)) {
    throw DomainError("dissipation rates and bath occupation must be non-negative");
  }
}

// Gershgorin bound on the dissipator's decay rates; the truncated ladder really does
// reach ~2 gamma_m (2 nbar + 1)(n_max + 1).
double DissipationParams::stiffness(int n_max) const {
  return 2.0 * (gamma_m * (2.0 * nbar_bath + 1.0) * (n_max + 1.0) + gamma_q_relax + gamma_q_phi);
}

void validate_step(const IntegratorConfig& cfg, const SystemParams& params,
                   const DissipationParams& diss) {
  const double detuning = params.delta - 1.0;
  const double omega_top =
      std::sqrt(0.25 * detuning * detuning + params.g * params.g * params.n_max);
  check_step(cfg.dt, std::max(params.delta, omega_top), diss.stiffness(params.n_max));
}

DensityMatrix lindblad_evolve(const DensityMatrix& rho, const ComplexOperator& h,
                              const DissipationParams& diss, double duration,
                              const IntegratorConfig& cfg, LindbladDiagnostics* diagnostics) {
  if (rho.space() != Space::joint) throw DomainError("lindblad_evolve needs a joint state");
  if (h.rows() != rho.dim() || h.cols() != rho.dim()) {
    throw DomainError("lindblad_evolve: Hamiltonian and state dimensions differ");
  }
  if (!is_hermitian(h, 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff()))) {
    throw DomainError("lindblad_evolve: Hamiltonian is not Hermitian");
  }
  if (!(duration >= 0.0)) throw DomainError("lindblad_evolve: duration must be non-negative");
  diss.validate();

  const int n_max = rho.n_max();
  LindbladDiagnostics diag;
  diag.rotating_frame = commutes_with_excitation_number(h, n_max);
  diag.block_path = diag.rotating_frame && cfg.block_fast_path &&
                    block_diagonal_in_excitations(rho.matrix(), n_max);
  const Complex trace0 = rho.matrix().trace();
  const double stiffness = diss.stiffness(n_max);

  ComplexOperator out;
  if (diag.block_path) {
    const BlockGenerator gen(h, diss, n_max);
    check_step(cfg.dt, gen.frequency_bound(), stiffness);
    Blocks r = to_blocks(rho.matrix(), n_max);
    evolve_blocks(r, gen, duration, cfg.dt, diag.steps);
    diag.min_eigenvalue = 1e300;
    for (const auto& b : r) {
      const double e = min_eigenvalue_2x2(b);
      if (!(e >= diag.min_eigenvalue)) diag.min_eigenvalue = e;  // NaN sticks
    }
    out = from_blocks(r, n_max);
  } else {
    ComplexOperator h_frame = h;
    if (diag.rotating_frame) h_frame -= excitation_number(n_max);
    check_step(cfg.dt, frequency_bound(h_frame), stiffness);
    const DenseGenerator gen(h_frame, diss, n_max);
    out = rho.matrix();
    evolve_dense(out, gen, duration, cfg.dt, diag.steps);
    if (diag.rotating_frame) {
      // rho = exp(-i N_c T) rho_frame exp(i N_c T)
      const int dim = rho.dim();
      Eigen::VectorXcd phase(dim);
      for (int i = 0; i < dim; ++i) phase(i) = std::exp(-kI * (excitations(i, n_max) * duration));
      out = phase.asDiagonal() * out * phase.conjugate().asDiagonal();
    }
    if (out.allFinite()) {
      Eigen::SelfAdjointEigenSolver<ComplexOperator> es(out, Eigen::EigenvaluesOnly);
      diag.min_eigenvalue = es.eigenvalues().minCoeff();
    } else {
      diag.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
    }
  }
  diag.trace_drift = std::abs(out.trace() - trace0);
  if (diagnostics != nullptr) *diagnostics = diag;
  check_positivity(diag.min_eigenvalue, diag);
  return {Space::joint, std::move(out)};
}

DampedRunResult damped_protocol_run(const DensityMatrix& rho_m0,
                                    const MeasurementSchedule& schedule,
                                    const SystemParams& params, const DissipationParams& diss,
                                    const IntegratorConfig& cfg,
                                    const DampedRunOptions& options) {
  params.validate();
  diss.validate();
  if (rho_m0.space() != Space::mr || rho_m0.n_max() != params.n_max) {
    throw DomainError("damped_protocol_run: initial MR state does not match params.n_max");
  }
  validate_step(cfg, params, diss);

  const int m = params.n_max + 1;
  const ComplexOperator h = build_jc_hamiltonian(params);
  DampedRunResult result;
  CoolingRecord& rec = result.record;
  rec.schedule = schedule;
  rec.mode = options.mode;
  if (options.mode == RunMode::trajectory) rec.outcomes.emplace();

  auto record = [&](double t, const DensityMatrix& rho_m, double survival) {
    const Observables o = observables(rho_m);
    rec.time.push_back(t);
    rec.nbar.push_back(o.nbar);
    rec.fidelity.push_back(o.fidelity);
    rec.survival.push_back(survival);
  };

  DensityMatrix joint = qubit_ground_product(rho_m0);
  CounterRng rng(options.seed);
  double survival = 1.0;
  double t = 0.0;
  result.min_eigenvalue = rho_m0.check().min_eigenvalue;
  record(t, rho_m0, survival);

  for (double tau_j : schedule.intervals()) {
    LindbladDiagnostics diag;
    joint = lindblad_evolve(joint, h, diss, tau_j, cfg, &diag);
    result.max_trace_drift = std::max(result.max_trace_drift, diag.trace_drift);
    result.min_eigenvalue = std::min(result.min_eigenvalue, diag.min_eigenvalue);
    t += tau_j;

    const ComplexOperator& r = joint.matrix();
    const ComplexOperator rho_g = r.topLeftCorner(m, m);
    const ComplexOperator rho_e = r.bottomRightCorner(m, m);
    const double p_g = rho_g.trace().real();
    const double p_e = rho_e.trace().real();

    QubitLevel outcome = QubitLevel::ground;
    if (options.mode == RunMode::trajectory) {
      outcome = rng.uniform_open() * (p_g + p_e) < p_g ? QubitLevel::ground : QubitLevel::excited;
      rec.outcomes->push_back(outcome);
    }
    if (outcome == QubitLevel::ground) {
      if (options.mode == RunMode::postselected) {
        survival *= p_g;
        if (!(survival >= kSurvivalUnderflow)) {
          rec.truncated = true;
          break;
        }
      }
      const DensityMatrix rho_m(Space::mr, rho_g / p_g);
      joint = qubit_ground_product(rho_m);
      record(t, rho_m, survival);
      continue;
    }
    survival = 0.0;
    const DensityMatrix rho_m(Space::mr, rho_e / p_e);
    if (options.policy == OutcomePolicy::discard) {
      rec.truncated = true;
      joint = DensityMatrix(Space::joint, tensor_embed(projector_excited(), rho_m.matrix()));
      break;
    }
    joint = options.policy == OutcomePolicy::reset
                ? qubit_ground_product(rho_m)
                : DensityMatrix(Space::joint, tensor_embed(projector_excited(), rho_m.matrix()));
    record(t, rho_m, survival);
  }
  result.final_state = std::move(joint);
  return result;
}

}  // namespace mrcool
