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

#include "mrcool/experiment/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mrcool/errors.hpp"
#include "mrcool/experiment/csv.hpp"
#include "mrcool/jc_model.hpp"
#include "mrcool/parallel.hpp"
#include "mrcool/thermal.hpp"

#ifndef MRCOOL_VERSION
#define MRCOOL_VERSION "dev"
#endif

namespace mrcool::experiment {
namespace {

constexpr double kFigureOmegaHz = 100e6;

struct DetailedRun {
  CoolingRecord record;
  double max_trace_drift = 0.0;
};

DetailedRun execute_detailed(const ExperimentConfig& config, int threads) {
  if (!config.sweep.empty()) throw ConfigError("execute: config has sweep axes; use run_config");
  const ResolvedRun r = resolve(config);
  DetailedRun out;
  if (!r.dissipation) {
    if (config.mode == RunMode::postselected) {
      out.record = postselected_run(r.rho0, r.schedule, r.params);
    } else {
      out.record = sample_ensemble(r.rho0, r.schedule, r.params, config.policy, config.seed,
                                   config.trajectories, threads);
    }
    return out;
  }
  if (config.mode == RunMode::postselected) {
    const DampedRunResult d =
        damped_protocol_run(r.rho0, r.schedule, r.params, *r.dissipation, r.integrator);
    out.record = d.record;
    out.max_trace_drift = d.max_trace_drift;
    return out;
  }
  std::vector<CoolingRecord> runs(config.trajectories);
  std::vector<double> drift(config.trajectories, 0.0);
  parallel_for(config.trajectories, threads, [&](int i) {
    DampedRunOptions opt;
    opt.mode = RunMode::trajectory;
    opt.policy = config.policy;
    opt.seed = stream_key(config.seed, static_cast<std::uint64_t>(i));
    DampedRunResult d =
        damped_protocol_run(r.rho0, r.schedule, r.params, *r.dissipation, r.integrator, opt);
    runs[i] = std::move(d.record);
    drift[i] = d.max_trace_drift;
  });
  out.record = aggregate_trajectories(runs, r.schedule);
  out.max_trace_drift = *std::max_element(drift.begin(), drift.end());
  return out;
}

struct SweepResult {
  std::vector<std::vector<double>> combos;  // axis values per combination
  std::vector<CoolingRecord> records;
};

SweepResult run_sweep(const ExperimentConfig& config, int threads) {
  SweepResult out;
  std::vector<std::vector<double>> combos{{}};
  for (const auto& axis : config.sweep) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : combos) {
      for (double v : axis.values) {
        auto c = prefix;
        c.push_back(v);
        next.push_back(std::move(c));
      }
    }
    combos = std::move(next);
    if (combos.size() > kMaxSweepCombinations) {
      throw ConfigError("sweep refused: " + std::to_string(combos.size()) +
                        " combinations exceed the cap of " +
                        std::to_string(kMaxSweepCombinations));
    }
  }
  std::vector<ExperimentConfig> configs;
  configs.reserve(combos.size());
  for (const auto& combo : combos) {
    ExperimentConfig c = config;
    for (std::size_t a = 0; a < combo.size(); ++a) {
      c = with_axis_value(c, config.sweep[a].axis, combo[a]);
    }
    c.sweep.clear();
    configs.push_back(std::move(c));
  }
  // Resolve everything up front so config errors surface before any work.
  for (const auto& c : configs) (void)resolve(c);
  out.records.resize(configs.size());
  const bool fan_out = configs.size() > 1;
  parallel_for(static_cast<int>(configs.size()), fan_out ? threads : 1, [&](int i) {
    out.records[i] = execute_detailed(configs[i], fan_out ? 1 : threads).record;
  });
  out.combos = std::move(combos);
  return out;
}

std::string sweep_long_csv(const ExperimentConfig& config, const SweepResult& s) {
  CsvWriter w;
  std::vector<std::string> header;
  for (const auto& axis : config.sweep) header.push_back(axis.axis);
  for (const char* col : {"N", "t", "nbar", "survival", "fidelity", "mode"}) header.emplace_back(col);
  w.row(header);
  for (std::size_t i = 0; i < s.records.size(); ++i) {
    for (int n = 0; n <= s.records[i].steps(); ++n) {
      std::vector<std::string> row;
      for (double v : s.combos[i]) row.push_back(format_double(v));
      const auto fields = series_fields(s.records[i], n);
      row.insert(row.end(), fields.begin(), fields.end());
      w.row(row);
    }
  }
  return w.str();
}

std::string sweep_mean_csv(const SweepResult& s, int count) {
  CsvWriter w;
  w.row({"N", "t", "nbar", "survival", "fidelity", "mode", "nbar_std", "samples"});
  const std::string mode(to_string(s.records.front().mode));
  for (int n = 0; n <= count; ++n) {
    double t = 0, nbar = 0, surv = 0, fid = 0;
    std::vector<double> values;
    for (const auto& r : s.records) {
      if (r.steps() < n) continue;
      t += r.time[n];
      nbar += r.nbar[n];
      surv += r.survival[n];
      fid += r.fidelity[n];
      values.push_back(r.nbar[n]);
    }
    if (values.empty()) break;
    const double k = static_cast<double>(values.size());
    const double mean = nbar / k;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    const double sd = values.size() > 1 ? std::sqrt(var / (k - 1.0)) : 0.0;
    w.row({std::to_string(n), format_double(t / k), format_double(mean), format_double(surv / k),
           format_double(fid / k), mode, format_double(sd), std::to_string(values.size())});
  }
  return w.str();
}

std::string csv_for(const ExperimentConfig& config, int threads) {
  if (config.sweep.empty()) return series_csv(execute_detailed(config, threads).record);
  const SweepResult s = run_sweep(config, threads);
  return config.aggregate == Aggregate::mean ? sweep_mean_csv(s, config.count)
                                             : sweep_long_csv(config, s);
}

void add_run_files(Report& report, const ExperimentConfig& config, const std::string& csv,
                   double seconds, const std::string& command = "run") {
  report.files.push_back({config.csv, csv});
  report.files.push_back(
      {config.manifest, manifest_text(command, config, {config.csv}, seconds)});
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

// 1e5 -> "q1e5"; other values use the shortest decimal form.
std::string quality_tag(double q) {
  const double e = std::round(std::log10(q));
  if (e >= 1.0 && std::pow(10.0, e) == q) return "1e" + std::to_string(static_cast<int>(e));
  return format_double(q);
}

ExperimentConfig figure_base(double delta, double tau, int count, double temperature_mk,
                             std::uint64_t seed) {
  ExperimentConfig c;
  c.omega_m_hz = kFigureOmegaHz;
  c.delta = delta;
  c.g = 0.04;
  c.tau = tau;
  c.count = count;
  c.seed = seed;
  c.initial.kind = InitialStateSpec::Kind::temperature;
  c.initial.temperature_kelvin = temperature_mk * 1e-3;
  return c;
}

}  // namespace

bool Report::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

ResolvedRun resolve(const ExperimentConfig& config) {
  ResolvedRun r;
  const auto& init = config.initial;
  switch (init.kind) {
    case InitialStateSpec::Kind::temperature:
      if (!config.omega_m_hz) throw ConfigError("initial_state.temperature: needs system.omega_m");
      r.nbar0 = thermal_occupation(Kelvin{init.temperature_kelvin},
                                   AngularFrequency{2.0 * std::numbers::pi * *config.omega_m_hz});
      break;
    case InitialStateSpec::Kind::nbar:
      r.nbar0 = init.nbar;
      break;
    case InitialStateSpec::Kind::populations: {
      double total = 0.0, weighted = 0.0;
      for (std::size_t n = 0; n < init.populations.size(); ++n) {
        total += init.populations[n];
        weighted += n * init.populations[n];
      }
      r.nbar0 = weighted / total;
      break;
    }
  }

  int n_max = 0;
  if (config.n_max) {
    n_max = *config.n_max;
  } else if (init.kind == InitialStateSpec::Kind::populations) {
    n_max = static_cast<int>(init.populations.size()) - 1 + kGuardLevels;
  } else {
    n_max = auto_truncation(r.nbar0, config.tail_tolerance).n_max;
  }
  r.params = SystemParams{config.delta, config.g, n_max};
  try {
    r.params.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("system: ") + e.what());
  }

  if (init.kind == InitialStateSpec::Kind::populations) {
    if (static_cast<int>(init.populations.size()) > n_max + 1) {
      throw ConfigError("initial_state.populations: more levels than system.n_max + 1");
    }
    Eigen::VectorXd p = Eigen::VectorXd::Zero(n_max + 1);
    for (std::size_t n = 0; n < init.populations.size(); ++n) p(n) = init.populations[n];
    r.rho0 = diagonal_state(p);
  } else {
    try {
      r.rho0 = thermal_density_matrix(r.nbar0, {n_max, config.tail_tolerance});
    } catch (const TruncationError& e) {
      throw ConfigError(std::string("system.n_max: ") + e.what());
    }
  }

  r.schedule = generate_schedule(config.schedule_kind, config.tau, config.count, config.seed);

  if (config.dissipation) {
    DissipationParams d = config.dissipation->rates;
    if (config.dissipation->bath_temperature_kelvin) {
      if (!config.omega_m_hz) throw ConfigError("dissipation.bath_temperature: needs system.omega_m");
      d.nbar_bath = thermal_occupation(Kelvin{*config.dissipation->bath_temperature_kelvin},
                                       AngularFrequency{2.0 * std::numbers::pi * *config.omega_m_hz});
    }
    r.dissipation = d;
    r.integrator.dt = config.dissipation->dt;
    validate_step(r.integrator, r.params, d);
  }
  return r;
}

CoolingRecord execute(const ExperimentConfig& config, int threads) {
  return execute_detailed(config, threads).record;
}

std::string run_csv(const ExperimentConfig& config, int threads) { return csv_for(config, threads); }

Report run_config(const ExperimentConfig& config, int threads, const std::string& command) {
  const auto start = std::chrono::steady_clock::now();
  const std::string csv = csv_for(config, threads);
  Report report;
  add_run_files(report, config, csv, seconds_since(start), command);
  return report;
}

std::string manifest_text(const std::string& command, const ExperimentConfig& config,
                          const std::vector<std::string>& outputs, double wall_seconds) {
  std::ostringstream m;
  m << "tool: mrcool\n";
  m << "version: " << MRCOOL_VERSION << "\n";
  m << "command: " << command << "\n";
  m << "master_seed: " << config.seed << "\n";
  m << "derived:\n";
  try {
    ExperimentConfig base = config;
    base.sweep.clear();
    const ResolvedRun r = resolve(base);
    m << "  nbar0: " << format_double(r.nbar0) << "\n";
    m << "  n_max: " << r.params.n_max << "\n";
    if (config.omega_m_hz) {
      m << "  omega_m_rad_per_s: " << format_double(2.0 * std::numbers::pi * *config.omega_m_hz)
        << "\n";
    }
    if (r.dissipation) {
      m << "  gamma_m: " << format_double(r.dissipation->gamma_m) << "\n";
      m << "  nbar_bath: " << format_double(r.dissipation->nbar_bath) << "\n";
    }
  } catch (const std::exception&) {
    m << "  unresolved: true\n";
  }
  m << "wall_clock_seconds: " << format_double(wall_seconds) << "\n";
  m << "outputs:\n";
  for (const auto& o : outputs) m << "  - " << o << "\n";
  m << "config:\n";
  std::istringstream body(emit_config(config));
  for (std::string line; std::getline(body, line);) {
    if (!line.empty()) m << "  " << line << "\n";
  }
  return m.str();
}

ExperimentConfig fig1_config(double delta, std::uint64_t seed) {
  ExperimentConfig c = figure_base(delta, 10.0, 60, 20.0, seed);
  const std::string tag = format_double(delta);
  c.name = "fig1-delta-" + tag;
  c.csv = "fig1_delta_" + tag + ".csv";
  c.manifest = "fig1_delta_" + tag + ".manifest.yaml";
  return c;
}

ExperimentConfig fig2_etim_config(std::uint64_t seed) {
  ExperimentConfig c = figure_base(1.0, 8.0, 60, 40.0, seed);
  c.name = "fig2-etim";
  c.csv = "fig2_etim.csv";
  c.manifest = "fig2_etim.manifest.yaml";
  return c;
}

ExperimentConfig fig2_utim_config(std::uint64_t seed, int seeds, bool mean) {
  ExperimentConfig c = figure_base(1.0, 8.0, 60, 40.0, seed);
  c.schedule_kind = ScheduleKind::utim;
  SweepAxis axis{"schedule.seed", {}};
  for (int i = 0; i < seeds; ++i) axis.values.push_back(static_cast<double>(seed + i));
  c.sweep.push_back(axis);
  c.aggregate = mean ? Aggregate::mean : Aggregate::none;
  c.name = mean ? "fig2-utim-mean" : "fig2-utim-seeds";
  c.csv = mean ? "fig2_utim_mean.csv" : "fig2_utim_seeds.csv";
  c.manifest = mean ? "fig2_utim_mean.manifest.yaml" : "fig2_utim_seeds.manifest.yaml";
  return c;
}

ExperimentConfig robustness_config(double quality_factor, std::uint64_t seed) {
  ExperimentConfig c = figure_base(1.0, 10.0, 10, 40.0, seed);
  c.schedule_kind = ScheduleKind::utim;
  if (quality_factor > 0.0) {
    DissipationSpec d;
    d.quality_factor = quality_factor;
    d.rates.gamma_m = gamma_from_quality(quality_factor);
    d.bath_temperature_kelvin = 40e-3;
    c.dissipation = d;
    const std::string tag = quality_tag(quality_factor);
    c.name = "robustness-q-" + tag;
    c.csv = "robustness_q_" + tag + ".csv";
    c.manifest = "robustness_q_" + tag + ".manifest.yaml";
  } else {
    c.name = "robustness-closed";
    c.csv = "robustness_closed.csv";
    c.manifest = "robustness_closed.manifest.yaml";
  }
  return c;
}

Report fig1(std::uint64_t seed, int threads) {
  Report report;
  for (double delta : {1.0, 1.1}) {
    const auto start = std::chrono::steady_clock::now();
    const ExperimentConfig c = fig1_config(delta, seed);
    const CoolingRecord rec = execute(c, threads);
    add_run_files(report, c, series_csv(rec), seconds_since(start));
    if (delta != 1.0) continue;
    const double n0 = rec.nbar[0];
    report.checks.push_back({"fig1 resonant nbar(5) <= 0.1 nbar(0)", rec.nbar[5] <= 0.1 * n0,
                             "nbar(5) = " + fmt(rec.nbar[5]) + ", nbar(0) = " + fmt(n0)});
    report.checks.push_back({"fig1 resonant nbar(60) <= 1e-3", rec.nbar[60] <= 1e-3,
                             "nbar(60) = " + fmt(rec.nbar[60])});
    const double p0 = 1.0 / (1.0 + n0);
    report.checks.push_back({"fig1 resonant P_g(60) = 1/(1+nbar(0)) within 1e-3",
                             std::abs(rec.survival[60] - p0) < 1e-3,
                             "P_g(60) = " + fmt(rec.survival[60]) + ", limit " + fmt(p0)});
  }
  return report;
}

Report fig2(std::uint64_t seed, int threads) {
  Report report;
  auto start = std::chrono::steady_clock::now();
  const ExperimentConfig etim = fig2_etim_config(seed);
  const CoolingRecord etim_rec = execute(etim, threads);
  add_run_files(report, etim, series_csv(etim_rec), seconds_since(start));

  start = std::chrono::steady_clock::now();
  const ExperimentConfig seeds = fig2_utim_config(seed, 100, false);
  const SweepResult s = run_sweep(seeds, threads);
  const double sweep_seconds = seconds_since(start);
  add_run_files(report, seeds, sweep_long_csv(seeds, s), sweep_seconds);
  const ExperimentConfig mean = fig2_utim_config(seed, 100, true);
  add_run_files(report, mean, sweep_mean_csv(s, mean.count), sweep_seconds);

  double utim20 = 0.0;
  for (const auto& r : s.records) utim20 += r.nbar[20];
  utim20 /= static_cast<double>(s.records.size());
  report.checks.push_back({"fig2 seed-averaged UTIM nbar(20) <= ETIM nbar(20)",
                           utim20 <= etim_rec.nbar[20],
                           "UTIM mean " + fmt(utim20) + " over " +
                               std::to_string(s.records.size()) + " seeds, ETIM " +
                               fmt(etim_rec.nbar[20])});
  return report;
}

Report robustness(std::uint64_t seed, int threads) {
  Report report;
  std::vector<DetailedRun> runs;
  for (double q : {0.0, 1e5, 1e3}) {
    const auto start = std::chrono::steady_clock::now();
    const ExperimentConfig c = robustness_config(q, seed);
    runs.push_back(execute_detailed(c, threads));
    add_run_files(report, c, series_csv(runs.back().record), seconds_since(start));
  }
  const int n = runs[0].record.steps();
  const double closed = runs[0].record.nbar[n];
  const double damped = runs[1].record.nbar[n];
  const double lossy = runs[2].record.nbar[n];
  const double rel = std::abs(damped - closed) / closed;
  report.checks.push_back({"robustness Q=1e5 nbar(10) within 10% of closed system", rel < 0.1,
                           "closed " + fmt(closed) + ", damped " + fmt(damped) +
                               ", relative difference " + fmt(rel)});
  report.checks.push_back({"robustness Q=1e3 nbar(10) >= 2x closed system", lossy >= 2.0 * closed,
                           "Q=1e3 " + fmt(lossy) + ", closed " + fmt(closed)});
  const double drift = std::max(runs[1].max_trace_drift, runs[2].max_trace_drift);
  report.checks.push_back({"robustness Lindblad trace drift < 1e-8", drift < 1e-8,
                           "max drift per interval " + fmt(drift)});
  return report;
}

std::vector<OracleRow> oracle_grid(int n_max) {
  std::vector<OracleRow> rows;
  for (double delta : {1.0, 1.1}) {
    for (double g : {0.01, 0.04}) {
      const SystemParams p{delta, g, n_max};
      const ComplexOperator h = build_jc_hamiltonian(p);
      for (double tau : {1.0, 8.0, 10.0}) {
        const ComplexOperator u = matrix_exponential(h, tau);
        const EffectiveEvolution ev = effective_eigenvalues(p, tau);
        OracleRow row{delta, g, tau, 0.0, 0.0};
        for (int n = 0; n <= n_max; ++n) {
          const int i = joint_index(0, n, n_max);
          row.max_lambda_error = std::max(row.max_lambda_error, std::abs(ev.lambda(n) - u(i, i)));
          const double c = std::norm(ev.lambda(n)) + ev.off_branch(n) * ev.off_branch(n);
          row.max_completeness_error = std::max(row.max_completeness_error, std::abs(c - 1.0));
        }
        rows.push_back(row);
      }
    }
  }
  return rows;
}

Report validate(int /*threads*/) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<OracleRow> rows = oracle_grid(50);
  CsvWriter w;
  w.row({"delta", "g", "tau", "max_lambda_error", "max_completeness_error"});
  double worst_lambda = 0.0, worst_completeness = 0.0;
  for (const auto& r : rows) {
    w.row({format_double(r.delta), format_double(r.g), format_double(r.tau),
           format_double(r.max_lambda_error), format_double(r.max_completeness_error)});
    worst_lambda = std::max(worst_lambda, r.max_lambda_error);
    worst_completeness = std::max(worst_completeness, r.max_completeness_error);
  }
  Report report;
  report.files.push_back({"validate.csv", w.str()});
  ExperimentConfig none;
  none.name = "validate";
  none.initial.kind = InitialStateSpec::Kind::nbar;
  none.csv = "validate.csv";
  none.manifest = "validate.manifest.yaml";
  report.files.push_back({none.manifest, manifest_text("validate", none, {"validate.csv"},
                                                       seconds_since(start))});
  report.checks.push_back({"validate closed-form lambda_n vs oracle < 1e-10", worst_lambda < 1e-10,
                           "max error " + fmt(worst_lambda)});
  report.checks.push_back({"validate |lambda_n|^2 + m_n^2 = 1 within 1e-12",
                           worst_completeness < 1e-12, "max error " + fmt(worst_completeness)});
  return report;
}

const std::vector<PresetInfo>& presets() {
  static const std::vector<PresetInfo> list = {
      {"fig1",
       "ETIM cooling curves for delta = 1 and 1.1 omega_m (g = 0.04, tau = 10/omega_m, "
       "T = 20 mK, nbar(0) = 3.69, N = 60)"},
      {"fig2",
       "ETIM vs 100 UTIM seeds at resonance (g = 0.04, tau = 8/omega_m, T = 40 mK, "
       "nbar(0) = 7.84, N = 60)"},
      {"robustness",
       "Lindblad MR damping during 10 UTIM readouts (tau = 10/omega_m, Q_m = 1e5 and 1e3, "
       "bath at 40 mK) against the closed system"},
      {"validate", "closed-form lambda_n against the dense matrix-exponential oracle"},
  };
  return list;
}

}  // namespace mrcool::experiment
