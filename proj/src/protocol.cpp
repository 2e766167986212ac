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

#include "mrcool/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "mrcool/errors.hpp"
#include "mrcool/parallel.hpp"

namespace mrcool {
namespace {

// MR state conditioned on an outcome record, kept as populations while the
// state is diagonal. Every Kraus operator here is either diagonal or a pure
// shift, so diagonal states stay diagonal.
class ConditionalState {
 public:
  explicit ConditionalState(const DensityMatrix& rho) : diagonal_(rho.is_diagonal()) {
    if (rho.space() != Space::mr) throw DomainError("expected an MR-only state");
    if (diagonal_) {
      pops_ = rho.matrix().diagonal().real();
    } else {
      full_ = rho.matrix();
    }
  }

  int n_max() const {
    return static_cast<int>(diagonal_ ? pops_.size() : full_.rows()) - 1;
  }

  ConditionalState branch(const KrausPair& k, QubitLevel outcome) const {
    if (k.n_max() != n_max()) throw DomainError("Kraus pair and state truncations differ");
    ConditionalState out = zero_like();
    const int m = n_max();
    if (outcome == k.prepared) {
      if (diagonal_) {
        out.pops_ = k.same.cwiseAbs2().cwiseProduct(pops_);
      } else {
        out.full_ = k.same.asDiagonal() * full_ * k.same.conjugate().asDiagonal();
      }
      return out;
    }
    // Shift: |g> prepared lowers n -> n-1, |e> prepared raises n -> n+1.
    const int shift = k.prepared == QubitLevel::ground ? -1 : 1;
    const int lo = shift < 0 ? 1 : 0;
    const int hi = shift < 0 ? m : m - 1;
    const int len = hi - lo + 1;
    if (len <= 0) return out;
    if (diagonal_) {
      out.pops_.segment(lo + shift, len) =
          k.flip.segment(lo, len).cwiseAbs2().cwiseProduct(pops_.segment(lo, len));
    } else {
      const Eigen::VectorXcd f = k.flip.segment(lo, len);
      out.full_.block(lo + shift, lo + shift, len, len) =
          f.asDiagonal() * full_.block(lo, lo, len, len) * f.conjugate().asDiagonal();
    }
    return out;
  }

  double trace() const { return diagonal_ ? pops_.sum() : full_.trace().real(); }

  void scale(double f) {
    if (diagonal_) {
      pops_ *= f;
    } else {
      full_ *= f;
    }
  }

  Observables observe() const {
    Observables o;
    if (diagonal_) {
      o.nbar = Eigen::VectorXd::LinSpaced(pops_.size(), 0.0, pops_.size() - 1.0).dot(pops_);
      o.fidelity = pops_(0);
    } else {
      const Eigen::VectorXd d = full_.diagonal().real();
      o.nbar = Eigen::VectorXd::LinSpaced(d.size(), 0.0, d.size() - 1.0).dot(d);
      o.fidelity = d(0);
    }
    return o;
  }

  DensityMatrix to_density() const {
    if (!diagonal_) return {Space::mr, full_};
    ComplexOperator m = ComplexOperator::Zero(pops_.size(), pops_.size());
    m.diagonal() = pops_.cast<Complex>();
    return {Space::mr, std::move(m)};
  }

 private:
  ConditionalState() = default;

  ConditionalState zero_like() const {
    ConditionalState z;
    z.diagonal_ = diagonal_;
    if (diagonal_) {
      z.pops_ = Eigen::VectorXd::Zero(pops_.size());
    } else {
      z.full_ = ComplexOperator::Zero(full_.rows(), full_.cols());
    }
    return z;
  }

  bool diagonal_ = true;
  Eigen::VectorXd pops_;
  ComplexOperator full_;
};

void push_observables(CoolingRecord& rec, double t, const Observables& o, double survival) {
  rec.time.push_back(t);
  rec.nbar.push_back(o.nbar);
  rec.fidelity.push_back(o.fidelity);
  rec.survival.push_back(survival);
}

void check_inputs(const DensityMatrix& rho0, const MeasurementSchedule& schedule,
                  const SystemParams& params) {
  params.validate();
  if (rho0.space() != Space::mr) throw DomainError("initial state must be MR-only");
  if (rho0.n_max() != params.n_max) throw DomainError("initial state truncation != params.n_max");
  if (static_cast<int>(schedule.jitter.size()) != schedule.count || schedule.count < 1) {
    throw DomainError("malformed measurement schedule");
  }
}

}  // namespace

std::string_view to_string(RunMode mode) {
  return mode == RunMode::postselected ? "postselected" : "trajectory";
}

std::string_view to_string(OutcomePolicy policy) {
  switch (policy) {
    case OutcomePolicy::discard:
      return "discard";
    case OutcomePolicy::reset:
      return "reset";
    case OutcomePolicy::track:
      return "track";
  }
  return "discard";
}

Observables observables(const DensityMatrix& rho) { return ConditionalState(rho).observe(); }

CoolingRecord postselected_run(const DensityMatrix& rho0, const MeasurementSchedule& schedule,
                               const SystemParams& params) {
  check_inputs(rho0, schedule, params);
  CoolingRecord rec;
  rec.schedule = schedule;
  rec.mode = RunMode::postselected;
  ConditionalState state(rho0);
  double survival = 1.0;
  double t = 0.0;
  push_observables(rec, t, state.observe(), survival);
  for (double tau_j : schedule.intervals()) {
    const KrausPair k = kraus_pair(params, tau_j);
    state = state.branch(k, QubitLevel::ground);
    const double p = state.trace();
    survival *= p;
    if (!(survival >= kSurvivalUnderflow)) {
      rec.truncated = true;
      break;
    }
    state.scale(1.0 / p);
    t += tau_j;
    push_observables(rec, t, state.observe(), survival);
  }
  return rec;
}

TrajectoryResult sample_trajectory(const DensityMatrix& rho0, const MeasurementSchedule& schedule,
                                   const SystemParams& params, OutcomePolicy policy,
                                   std::uint64_t seed) {
  check_inputs(rho0, schedule, params);
  CoolingRecord rec;
  rec.schedule = schedule;
  rec.mode = RunMode::trajectory;
  rec.outcomes.emplace();
  CounterRng rng(seed);
  ConditionalState state(rho0);
  QubitLevel qubit = QubitLevel::ground;
  double survival = 1.0;
  double t = 0.0;
  push_observables(rec, t, state.observe(), survival);
  for (double tau_j : schedule.intervals()) {
    const KrausPair k = qubit == QubitLevel::ground ? kraus_pair(params, tau_j)
                                                    : excited_kraus_pair(params, tau_j);
    ConditionalState next = state.branch(k, QubitLevel::ground);
    const double p_g = next.trace();
    QubitLevel outcome = QubitLevel::ground;
    if (rng.uniform_open() < p_g) {
      next.scale(1.0 / p_g);
    } else {
      outcome = QubitLevel::excited;
      next = state.branch(k, QubitLevel::excited);
      next.scale(1.0 / next.trace());
    }
    rec.outcomes->push_back(outcome);
    if (outcome == QubitLevel::excited) {
      survival = 0.0;
      if (policy == OutcomePolicy::discard) {
        rec.truncated = true;
        state = std::move(next);
        qubit = QubitLevel::excited;
        break;
      }
    }
    state = std::move(next);
    qubit = (outcome == QubitLevel::excited && policy == OutcomePolicy::track)
                ? QubitLevel::excited
                : QubitLevel::ground;
    t += tau_j;
    push_observables(rec, t, state.observe(), survival);
  }
  return {std::move(rec), state.to_density(), qubit};
}

CoolingRecord sample_ensemble(const DensityMatrix& rho0, const MeasurementSchedule& schedule,
                              const SystemParams& params, OutcomePolicy policy,
                              std::uint64_t master_seed, int trajectories, int threads) {
  check_inputs(rho0, schedule, params);
  if (trajectories < 1) throw DomainError("need at least one trajectory");
  std::vector<CoolingRecord> runs(trajectories);
  parallel_for(trajectories, threads, [&](int i) {
    runs[i] = sample_trajectory(rho0, schedule, params, policy,
                                stream_key(master_seed, static_cast<std::uint64_t>(i)))
                  .record;
  });
  return aggregate_trajectories(runs, schedule);
}

CoolingRecord aggregate_trajectories(const std::vector<CoolingRecord>& runs,
                                     const MeasurementSchedule& schedule) {
  if (runs.empty()) throw DomainError("no trajectories to aggregate");
  const double trajectories = static_cast<double>(runs.size());
  CoolingRecord out;
  out.schedule = schedule;
  out.mode = RunMode::trajectory;
  const std::vector<double> intervals = schedule.intervals();
  double t = 0.0;
  for (int step = 0; step <= schedule.count; ++step) {
    if (step > 0) t += intervals[step - 1];
    double survivors = 0.0, nbar = 0.0, fidelity = 0.0;
    int running = 0;
    for (const auto& r : runs) {
      if (r.steps() < step) continue;
      ++running;
      survivors += r.survival[step];
      nbar += r.nbar[step];
      fidelity += r.fidelity[step];
    }
    if (running == 0) {
      out.truncated = true;
      break;
    }
    out.time.push_back(t);
    out.survival.push_back(survivors / trajectories);
    out.nbar.push_back(nbar / running);
    out.fidelity.push_back(fidelity / running);
  }
  return out;
}

DecayEnvelope decay_envelope(const SystemParams& params, const std::vector<double>& intervals) {
  params.validate();
  if (intervals.empty()) throw DomainError("decay_envelope needs at least one interval");
  const int levels = params.n_max + 1;
  DecayEnvelope env;
  env.max_magnitude = Eigen::VectorXd::Zero(levels);
  Eigen::VectorXd log_sum = Eigen::VectorXd::Zero(levels);
  for (double tau_j : intervals) {
    const Eigen::VectorXd mag = effective_eigenvalues(params, tau_j).lambda.cwiseAbs();
    env.max_magnitude = env.max_magnitude.cwiseMax(mag);
    log_sum += mag.array().log().matrix();
  }
  env.geometric_mean = (log_sum / static_cast<double>(intervals.size())).array().exp().matrix();
  return env;
}

double survival_from_envelope(const DecayEnvelope& envelope, const Eigen::VectorXd& populations,
                              int measurements) {
  if (envelope.geometric_mean.size() != populations.size()) {
    throw DomainError("envelope and population sizes differ");
  }
  const Eigen::ArrayXd decay = envelope.geometric_mean.array().pow(2.0 * measurements);
  return (decay * populations.array()).sum();
}

}  // namespace mrcool
