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

// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "mrcool/experiment/config.hpp"
#include "mrcool/experiment/csv.hpp"
#include "mrcool/experiment/runner.hpp"
#include "mrcool/jc_model.hpp"
#include "mrcool/lindblad.hpp"
#include "mrcool/protocol.hpp"
#include "mrcool/thermal.hpp"

using namespace mrcool;
using namespace mrcool::experiment;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    passed = passed && ok;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.passed = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0.0) out.require(secs < budget_s, fmt("runtime %.2fs < %.0fs", secs, budget_s));
  else out.detail += fmt("; runtime %.2fs", secs);
  if (!out.passed) ++failures;
  std::printf("[%s] %d. %s -- %s\n", out.passed ? "PASS" : "FAIL", id, title, out.detail.c_str());
  std::fflush(stdout);
}

double nbar_at(double mk) { return thermal_occupation(millikelvin(mk), megahertz(100)); }

}  // namespace

int main() {
  criterion(1, "closed-form lambda_n vs dense matrix exponential", 10.0, [] {
    Outcome o;
    double worst = 0.0;
    for (double delta : {1.0, 1.1})
      for (double g : {0.01, 0.04})
        for (double tau : {1.0, 8.0, 10.0}) {
          SystemParams p{delta, g, 50};
          const ComplexOperator u = matrix_exponential(build_jc_hamiltonian(p), tau);
          const auto ev = effective_eigenvalues(p, tau);
          for (int n = 0; n <= 50; ++n) {
            const int i = joint_index(0, n, 50);
            worst = std::max(worst, std::abs(ev.lambda(n) - u(i, i)));
          }
        }
    o.require(worst < 1e-10, fmt("max |lambda - oracle| = %.2e < 1e-10", worst));
    return o;
  });

  criterion(2, "Kraus completeness |lambda_n|^2 + m_n^2 = 1", 0.0, [] {
    Outcome o;
    double worst = 0.0;
    for (double delta : {1.0, 1.1})
      for (double g : {0.01, 0.04})
        for (double tau : {1.0, 8.0, 10.0}) {
          const auto ev = effective_eigenvalues({delta, g, 50}, tau);
          for (int n = 0; n <= 50; ++n)
            worst = std::max(worst, std::abs(std::norm(ev.lambda(n)) +
                                             ev.off_branch(n) * ev.off_branch(n) - 1.0));
        }
    o.require(worst < 1e-12, fmt("max deviation %.2e < 1e-12", worst));
    return o;
  });

  criterion(3, "thermal occupation at 2pi x 100 MHz", 0.0, [] {
    Outcome o;
    const double a = nbar_at(20), b = nbar_at(40);
    o.require(std::abs(a - 3.69) <= 0.01, fmt("20 mK -> %.4f (3.69 +/- 0.01)", a));
    o.require(std::abs(b - 7.84) <= 0.01, fmt("40 mK -> %.4f (7.84 +/- 0.01)", b));
    return o;
  });

  criterion(4, "ETIM cooling at resonance, tau = 10, g = 0.04", 1.0, [] {
    Outcome o;
    const double n0 = nbar_at(20);
    auto rho = thermal_density_matrix(n0, auto_truncation(n0));
    const SystemParams p{1.0, 0.04, rho.n_max()};
    const auto rec = postselected_run(rho, generate_schedule(ScheduleKind::etim, 10.0, 60, 1), p);
    o.require(rec.nbar[5] <= 0.1 * rec.nbar[0],
              fmt("nbar(5) = %.4f <= 0.1 nbar(0) = %.4f", rec.nbar[5], 0.1 * rec.nbar[0]));
    int reached = 0;
    while (reached < rec.steps() && rec.nbar[reached] > 0.1 * rec.nbar[0]) ++reached;
    o.detail += fmt(" (90%% drop first reached at N = %.0f)", reached);
    o.require(rec.nbar[60] <= 1e-3, fmt("nbar(60) = %.3e <= 1e-3", rec.nbar[60]));
    const double limit = 1.0 / (1.0 + n0);
    o.require(std::abs(rec.survival[60] - limit) <= 1e-3,
              fmt("P_g(60) = %.6f vs 1/(1+nbar0) = %.6f", rec.survival[60], limit));
    return o;
  });

  criterion(5, "UTIM (100 seeds) beats ETIM at N = 20, tau = 8", 30.0, [] {
    Outcome o;
    const double etim = std::stod(parse_csv(run_csv(fig2_etim_config())).rows.at(20).at(2));
    const auto mean = parse_csv(run_csv(fig2_utim_config(1, 100, true), 4));
    const double utim = std::stod(mean.rows.at(20).at(2));
    const int samples = std::stoi(mean.rows.at(20).back());
    o.require(samples >= 100, fmt("%.0f seeds", samples));
    o.require(utim <= etim, fmt("UTIM mean nbar(20) = %.4f <= ETIM %.4f", utim, etim));
    return o;
  });

  criterion(6, "Monte Carlo all-g fraction vs P_g(20), 1e4 trajectories", 0.0, [] {
    Outcome o;
    const double n0 = nbar_at(20);
    auto rho = thermal_density_matrix(n0, auto_truncation(n0));
    const SystemParams p{1.0, 0.04, rho.n_max()};
    const auto s = generate_schedule(ScheduleKind::etim, 10.0, 20, 1);
    const double pg = postselected_run(rho, s, p).survival[20];
    const int m = 10000;
    const double frac = sample_ensemble(rho, s, p, OutcomePolicy::discard, 1, m, 4).survival[20];
    const double se = std::sqrt(pg * (1 - pg) / m);
    o.require(std::abs(frac - pg) <= 3 * se,
              fmt("empirical %.4f vs %.4f, |diff| = %.2f standard errors", frac, pg,
                  std::abs(frac - pg) / se));
    return o;
  });

  criterion(7, "open-system robustness, Q = 1e5, 10 UTIM measurements", 0.0, [] {
    Outcome o;
    const auto closed = parse_csv(run_csv(robustness_config(0.0)));
    const auto report = run_config(robustness_config(1e5));
    const auto damped = parse_csv(report.files.at(0).content);
    const double a = std::stod(closed.rows.at(10).at(2)), b = std::stod(damped.rows.at(10).at(2));
    const double t_total = std::stod(damped.rows.at(10).at(1));
    o.require(std::abs(b - a) <= 0.1 * a,
              fmt("nbar(10) damped %.4f vs closed %.4f (%.2f%%)", b, a, 100 * std::abs(b - a) / a));
    o.require(t_total > 50 && t_total < 150, fmt("total time %.1f /wm", t_total));

    const double n0 = nbar_at(40);
    auto rho = thermal_density_matrix(n0, auto_truncation(n0));
    const SystemParams p{1.0, 0.04, rho.n_max()};
    const auto run = damped_protocol_run(rho, generate_schedule(ScheduleKind::utim, 10.0, 10, 1), p,
                                         {gamma_from_quality(1e5), n0, 0.0, 0.0}, {});
    o.require(run.max_trace_drift < 1e-8, fmt("trace drift %.2e < 1e-8", run.max_trace_drift));

    // damped oscillator alone relaxes to the bath
    const int n_max = 120;
    LindbladDiagnostics diag;
    auto out = lindblad_evolve(qubit_ground_product(fock_state(0, n_max)),
                               build_jc_hamiltonian({1.0, 0.0, n_max}), {0.05, n0, 0.0, 0.0},
                               150.0, {0.01, true}, &diag);
    const double fixed =
        expectation(partial_trace_qubit(out), number_operator(n_max)).real();
    o.require(std::abs(fixed - n0) <= 0.01 * n0, fmt("fixed point %.4f vs bath %.4f", fixed, n0));
    return o;
  });

  criterion(8, "manifest replay gives byte-identical CSV for 1, 4 and 8 threads", 0.0, [] {
    Outcome o;
    auto c = fig2_utim_config(1, 20, true);
    c.count = 20;
    auto traj = fig1_config(1.0);
    traj.mode = RunMode::trajectory;
    traj.trajectories = 2000;
    traj.count = 20;
    int identical = 0, total = 0;
    for (const auto& cfg : {c, traj, robustness_config(1e5)}) {
      const auto report = run_config(cfg, 1);
      const auto doc = parse_document(report.files.at(1).content, "manifest");
      for (int threads : {4, 8}) {
        ++total;
        if (run_csv(doc.config, threads) == report.files.at(0).content) ++identical;
      }
    }
    o.require(identical == total, fmt("%.0f/%.0f replays identical", identical, total));
    return o;
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
