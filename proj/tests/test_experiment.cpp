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
#include <string>

#include <doctest.h>

#include "mrcool/errors.hpp"
#include "mrcool/experiment/config.hpp"
#include "mrcool/experiment/csv.hpp"
#include "mrcool/experiment/runner.hpp"
#include "mrcool/thermal.hpp"

using namespace mrcool;
using namespace mrcool::experiment;

namespace {

const char* kBasic = R"(name: basic
system:
  omega_m: 100 MHz
  delta: 1 wm
  g: 0.04 wm
schedule:
  kind: utim
  tau: 8 /wm
  count: 20
  seed: 7
initial_state:
  temperature: 40 mK
output:
  csv: basic.csv
  manifest: basic.manifest.yaml
)";

std::string error_of(const std::string& text) {
  try {
    parse_config(text, "cfg.yaml");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("config parsing and units") {
  auto c = parse_config(kBasic);
  CHECK(c.name == "basic");
  CHECK(*c.omega_m_hz == 1e8);
  CHECK(c.schedule_kind == ScheduleKind::utim);
  CHECK(c.tau == 8.0);
  CHECK(c.count == 20);
  CHECK(c.seed == 7);
  CHECK(c.initial.kind == InitialStateSpec::Kind::temperature);
  CHECK(std::abs(c.initial.temperature_kelvin - 0.04) < 1e-15);
  CHECK_FALSE(c.n_max.has_value());
  CHECK_FALSE(c.dissipation.has_value());

  // 80 ns at ω_m = 2π·100 MHz is 80e-9·2π·1e8 ≈ 50.27 /ω_m
  auto ns = parse_config(replace(kBasic, "tau: 8 /wm", "tau: 80 ns"));
  CHECK(std::abs(ns.tau - 80e-9 * 2 * M_PI * 1e8) < 1e-12);
  auto ghz = parse_config(replace(kBasic, "omega_m: 100 MHz", "omega_m: 0.1 GHz"));
  CHECK(std::abs(*ghz.omega_m_hz - 1e8) < 1e-6);
  // detuning given in Hz is divided by ω_m/2π
  auto hz = parse_config(replace(kBasic, "delta: 1 wm", "delta: 110 MHz"));
  CHECK(std::abs(hz.delta - 1.1) < 1e-12);
}

TEST_CASE("config errors name the field and the line") {
  auto e = error_of(replace(kBasic, "  count: 20\n", "  count: 20\n  bogus: 3\n"));
  CHECK(e.find("cfg.yaml:10") != std::string::npos);
  CHECK(e.find("bogus") != std::string::npos);

  e = error_of(replace(kBasic, "tau: 8 /wm", "tau: 8"));
  CHECK(e.find("schedule.tau") != std::string::npos);
  CHECK(e.find("cfg.yaml:8") != std::string::npos);

  CHECK(error_of(replace(kBasic, "tau: 8 /wm", "tau: 8 furlongs")).find("schedule.tau") !=
        std::string::npos);
  CHECK(error_of(replace(kBasic, "kind: utim", "kind: sometimes")).find("schedule.kind") !=
        std::string::npos);
  CHECK(error_of(replace(kBasic, "temperature: 40 mK", "temperature: -1 K")) != "");
  CHECK(error_of(replace(kBasic, "  omega_m: 100 MHz\n", "")).find("omega_m") != std::string::npos);
  CHECK(error_of("system: [1, 2\n") != "");
  // the sweep cap is enforced before anything runs
  const std::string huge = std::string(kBasic) +
                           "sweep:\n  axes:\n"
                           "    - axis: schedule.tau\n      range: {from: 1, to: 20, steps: 200}\n"
                           "    - axis: schedule.seed\n      range: {from: 1, to: 100, steps: 100}\n";
  CHECK(error_of(huge).find("10000") != std::string::npos);
  CHECK(error_of(std::string(kBasic) + "sweep:\n  axes:\n    - axis: system.nope\n      values: [1]\n")
            .find("unknown axis") != std::string::npos);
}

TEST_CASE("emitted config parses back to the same config") {
  std::string text = kBasic;
  text += R"(dissipation:
  quality_factor: 100000
  bath_temperature: 40 mK
  gamma_q_phi: 0.001 wm
  dt: 0.01 /wm
mode: trajectory
trajectory:
  policy: track
  count: 250
sweep:
  aggregate: mean
  axes:
    - axis: schedule.seed
      values: [1, 2, 3]
)";
  auto a = parse_config(text);
  const std::string once = emit_config(a);
  auto b = parse_config(once);
  CHECK(emit_config(b) == once);
  CHECK(b.dissipation->quality_factor == a.dissipation->quality_factor);
  CHECK(b.dissipation->rates.gamma_q_phi == a.dissipation->rates.gamma_q_phi);
  CHECK(b.dissipation->dt == 0.01);
  CHECK(b.policy == OutcomePolicy::track);
  CHECK(b.trajectories == 250);
  CHECK(b.sweep.size() == 1);
  CHECK(b.sweep[0].values == std::vector<double>{1, 2, 3});
  CHECK(b.aggregate == Aggregate::mean);

  // awkward doubles survive the round trip exactly
  ExperimentConfig c = a;
  c.tau = 0.1 + 0.2;
  c.g = 1.0 / 3.0;
  auto d = parse_config(emit_config(c));
  CHECK(d.tau == c.tau);
  CHECK(d.g == c.g);
  CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("csv formatting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");

  auto c = parse_config(kBasic);
  c.count = 3;
  const std::string csv = run_csv(c);
  CHECK(csv.rfind("N,t,nbar,survival,fidelity,mode\r\n", 0) == 0);
  auto table = parse_csv(csv);
  CHECK(table.header == std::vector<std::string>{"N", "t", "nbar", "survival", "fidelity", "mode"});
  REQUIRE(table.rows.size() == 4);
  CHECK(table.rows[0][0] == "0");
  CHECK(table.rows[3][5] == "postselected");
  const double nbar0 = thermal_occupation(millikelvin(40), megahertz(100));
  // n̄ of the truncated, renormalised state
  CHECK(std::abs(std::stod(table.rows[0][2]) - nbar0) < 1e-9);
}

TEST_CASE("resolution") {
  auto r = resolve(parse_config(kBasic));
  CHECK(std::abs(r.nbar0 - 7.84) < 0.01);
  CHECK(r.params.n_max == auto_truncation(r.nbar0).n_max);
  CHECK(r.schedule.kind == ScheduleKind::utim);
  CHECK(r.schedule.seed == 7);

  auto bad = parse_config(kBasic);
  bad.n_max = 50;  // far too small for n̄ = 7.84
  CHECK_THROWS_AS(resolve(bad), ConfigError);
}

TEST_CASE("sweeps") {
  auto base = parse_config(kBasic);
  base.count = 5;

  SUBCASE("an empty axis is the plain run") {
    auto text = std::string(kBasic) + "sweep:\n  axes:\n    - axis: schedule.tau\n      values: []\n";
    auto c = parse_config(text);
    c.count = 5;
    CHECK(c.sweep.empty());
    CHECK(run_csv(c) == run_csv(base));
  }

  SUBCASE("rows carry the axis values; each row matches a single run") {
    auto c = base;
    c.sweep = {{"schedule.tau", {6.0, 8.0}}};
    auto table = parse_csv(run_csv(c));
    CHECK(table.header.front() == "schedule.tau");
    REQUIRE(table.rows.size() == 12);
    auto single = parse_csv(run_csv(with_axis_value(base, "schedule.tau", 6.0)));
    for (int i = 0; i < 6; ++i) {
      CHECK(table.rows[i][0] == "6");
      CHECK(std::vector<std::string>(table.rows[i].begin() + 1, table.rows[i].end()) ==
            single.rows[i]);
    }
  }

  SUBCASE("seed averaging") {
    auto c = base;
    c.sweep = {{"schedule.seed", {1, 2, 3, 4}}};
    c.aggregate = Aggregate::mean;
    auto table = parse_csv(run_csv(c));
    CHECK(table.header.back() == "samples");
    REQUIRE(table.rows.size() == 6);
    double mean = 0.0;
    for (int s = 1; s <= 4; ++s) {
      auto one = parse_csv(run_csv(with_axis_value(base, "schedule.seed", s)));
      mean += std::stod(one.rows[5][2]) / 4.0;
    }
    CHECK(std::abs(std::stod(table.rows[5][2]) - mean) < 1e-12);
    CHECK(table.rows[5].back() == "4");
  }
}

TEST_CASE("tau sweep finds the stalling intervals") {
  auto c = parse_config(kBasic);
  c.schedule_kind = ScheduleKind::etim;
  c.initial = {InitialStateSpec::Kind::nbar, 0.0, 3.69, {}};
  c.count = 20;
  std::vector<double> taus;
  for (int t = 1; t <= 20; ++t) taus.push_back(t);
  c.sweep = {{"schedule.tau", taus}};
  auto table = parse_csv(run_csv(c));

  double worst_tau = 0.0, worst = -1.0, best = 1e300;
  for (const auto& row : table.rows) {
    if (row[1] != "20") continue;
    const double nbar = std::stod(row[3]);
    if (nbar > worst) worst = nbar, worst_tau = std::stod(row[0]);
    best = std::min(best, nbar);
  }
  CHECK(worst > 10 * best);
  // a thermally populated level has |λ_n| ≈ 1 at the worst interval (g√n τ near π)
  const auto r = resolve(with_axis_value(c, "schedule.tau", worst_tau));
  auto env = decay_envelope(r.params, {worst_tau});
  bool stalled = false;
  for (int n = 1; n <= r.params.n_max; ++n)
    if (r.rho0.matrix()(n, n).real() > 1e-3 && env.max_magnitude(n) > 0.99) stalled = true;
  CHECK(stalled);
}

TEST_CASE("results do not depend on the thread count") {
  auto c = parse_config(kBasic);
  c.count = 10;
  c.mode = RunMode::trajectory;
  c.trajectories = 300;
  CHECK(run_csv(c, 1) == run_csv(c, 4));
  c.mode = RunMode::postselected;
  c.sweep = {{"schedule.seed", {1, 2, 3, 4, 5}}};
  c.aggregate = Aggregate::mean;
  CHECK(run_csv(c, 1) == run_csv(c, 3));
}

TEST_CASE("manifest replay is byte-identical") {
  auto c = parse_config(kBasic);
  c.count = 8;
  c.dissipation = DissipationSpec{{1e-3, 2.0, 0.0, 0.0}, std::nullopt, std::nullopt, 0.02};
  auto report = run_config(c);
  REQUIRE(report.files.size() == 2);
  const std::string manifest = report.files[1].content;
  CHECK(manifest.find("master_seed: 7") != std::string::npos);
  CHECK(manifest.find("wall_clock_seconds:") != std::string::npos);

  auto doc = parse_document(manifest, "replay.yaml");
  CHECK(doc.is_manifest);
  CHECK(doc.command == "run");
  CHECK(run_csv(doc.config) == report.files[0].content);
}

TEST_CASE("preset configurations") {
  auto f = fig1_config(1.0);
  CHECK(f.tau == 10.0);
  CHECK(f.count == 60);
  CHECK(f.schedule_kind == ScheduleKind::etim);
  CHECK(fig1_config(1.1).delta == 1.1);
  auto u = fig2_utim_config(1, 100, true);
  CHECK(u.sweep.at(0).values.size() == 100);
  CHECK(robustness_config(1e5).dissipation->quality_factor == 1e5);
  CHECK_FALSE(robustness_config(0.0).dissipation.has_value());
  CHECK(presets().size() >= 4);
}

TEST_CASE("oracle grid") {
  auto rows = oracle_grid(20);
  CHECK(rows.size() == 12);
  for (const auto& r : rows) {
    CHECK(r.max_lambda_error < 1e-10);
    CHECK(r.max_completeness_error < 1e-12);
  }
}

TEST_CASE("shipped example configs load") {
  for (const char* name : {"resonant_etim.yaml", "tau_sweep.yaml"}) {
    CAPTURE(name);
    CHECK_NOTHROW(resolve(load_config(std::string(MRCOOL_SOURCE_DIR "/configs/") + name)));
  }
}
