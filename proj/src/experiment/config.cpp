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

#include "mrcool/experiment/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "mrcool/errors.hpp"

namespace mrcool::experiment {
namespace {

class Parser {
 public:
  explicit Parser(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& field,
                         const std::string& why) const {
    std::ostringstream msg;
    msg << source_;
    if (node.IsDefined() && node.Mark().line >= 0) msg << ":" << node.Mark().line + 1;
    msg << ": " << field << ": " << why;
    throw ConfigError(msg.str());
  }

  void expect_map(const YAML::Node& node, const std::string& field,
                  const std::set<std::string>& allowed) const {
    if (!node.IsMap()) fail(node, field, "expected a mapping");
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.contains(key)) {
        fail(kv.first, field.empty() ? key : field + "." + key, "unknown key");
      }
    }
  }

  std::string scalar(const YAML::Node& node, const std::string& field) const {
    if (!node.IsScalar()) fail(node, field, "expected a scalar");
    return node.Scalar();
  }

  double number(const YAML::Node& node, const std::string& field) const {
    return to_double(node, field, scalar(node, field));
  }

  long long integer(const YAML::Node& node, const std::string& field) const {
    const std::string s = scalar(node, field);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail(node, field, "expected an integer");
    return v;
  }

  std::uint64_t unsigned_integer(const YAML::Node& node, const std::string& field) const {
    const std::string s = scalar(node, field);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      fail(node, field, "expected a non-negative integer");
    }
    return v;
  }

  // "<number> <unit>"
  std::pair<double, std::string> quantity(const YAML::Node& node, const std::string& field) const {
    const std::string s = scalar(node, field);
    const auto space = s.find_first_of(" \t");
    if (space == std::string::npos) {
      fail(node, field, "missing unit suffix in '" + s + "'");
    }
    const std::string num = s.substr(0, space);
    const auto unit_start = s.find_first_not_of(" \t", space);
    const std::string unit = s.substr(unit_start);
    return {to_double(node, field, num), unit};
  }

  double temperature_kelvin(const YAML::Node& node, const std::string& field) const {
    const auto [v, unit] = quantity(node, field);
    if (unit == "K") return v;
    if (unit == "mK") return v * 1e-3;
    fail(node, field, "temperature unit must be K or mK, got '" + unit + "'");
  }

  double frequency_hz(const YAML::Node& node, const std::string& field) const {
    const auto [v, unit] = quantity(node, field);
    const auto scale = frequency_scale(unit);
    if (!scale) fail(node, field, "frequency unit must be Hz, kHz, MHz or GHz, got '" + unit + "'");
    return v * *scale;
  }

  // Energies and rates, in units of omega_m.
  double energy(const YAML::Node& node, const std::string& field,
                const std::optional<double>& omega_m_hz) const {
    const auto [v, unit] = quantity(node, field);
    if (unit == "wm") return v;
    if (const auto scale = frequency_scale(unit)) {
      if (!omega_m_hz) fail(node, field, "frequency units need system.omega_m");
      return v * *scale / *omega_m_hz;
    }
    fail(node, field, "unit must be wm or a frequency unit, got '" + unit + "'");
  }

  // Times, in units of 1/omega_m.
  double time(const YAML::Node& node, const std::string& field,
              const std::optional<double>& omega_m_hz) const {
    const auto [v, unit] = quantity(node, field);
    if (unit == "/wm") return v;
    double seconds = 0.0;
    if (unit == "ns") {
      seconds = v * 1e-9;
    } else if (unit == "us") {
      seconds = v * 1e-6;
    } else {
      fail(node, field, "time unit must be /wm, ns or us, got '" + unit + "'");
    }
    if (!omega_m_hz) fail(node, field, "time units need system.omega_m");
    return seconds * 2.0 * std::numbers::pi * *omega_m_hz;
  }

 private:
  static std::optional<double> frequency_scale(const std::string& unit) {
    if (unit == "Hz") return 1.0;
    if (unit == "kHz") return 1e3;
    if (unit == "MHz") return 1e6;
    if (unit == "GHz") return 1e9;
    return std::nullopt;
  }

  double to_double(const YAML::Node& node, const std::string& field, const std::string& s) const {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
      fail(node, field, "expected a finite number, got '" + s + "'");
    }
    return v;
  }

  std::string source_;
};

ScheduleKind parse_kind(const Parser& p, const YAML::Node& n) {
  const std::string s = p.scalar(n, "schedule.kind");
  if (s == "etim") return ScheduleKind::etim;
  if (s == "utim") return ScheduleKind::utim;
  p.fail(n, "schedule.kind", "expected etim or utim");
}

RunMode parse_mode(const Parser& p, const YAML::Node& n) {
  const std::string s = p.scalar(n, "mode");
  if (s == "postselected") return RunMode::postselected;
  if (s == "trajectory") return RunMode::trajectory;
  p.fail(n, "mode", "expected postselected or trajectory");
}

OutcomePolicy parse_policy(const Parser& p, const YAML::Node& n) {
  const std::string s = p.scalar(n, "trajectory.policy");
  if (s == "discard") return OutcomePolicy::discard;
  if (s == "reset") return OutcomePolicy::reset;
  if (s == "track") return OutcomePolicy::track;
  p.fail(n, "trajectory.policy", "expected discard, reset or track");
}

ExperimentConfig parse_config_node(const Parser& p, const YAML::Node& root) {
  ExperimentConfig c;
  p.expect_map(root, "",
               {"name", "system", "schedule", "initial_state", "dissipation", "mode", "trajectory",
                "sweep", "output"});
  if (root["name"]) c.name = p.scalar(root["name"], "name");

  const YAML::Node sys = root["system"];
  if (!sys) p.fail(root, "system", "missing section");
  p.expect_map(sys, "system", {"omega_m", "delta", "g", "n_max", "tail_tolerance"});
  if (sys["omega_m"]) {
    c.omega_m_hz = p.frequency_hz(sys["omega_m"], "system.omega_m");
    if (!(*c.omega_m_hz > 0.0)) p.fail(sys["omega_m"], "system.omega_m", "must be positive");
  }
  if (!sys["delta"]) p.fail(sys, "system.delta", "missing");
  c.delta = p.energy(sys["delta"], "system.delta", c.omega_m_hz);
  if (!(c.delta > 0.0)) p.fail(sys["delta"], "system.delta", "must be positive");
  if (!sys["g"]) p.fail(sys, "system.g", "missing");
  c.g = p.energy(sys["g"], "system.g", c.omega_m_hz);
  if (!(c.g >= 0.0)) p.fail(sys["g"], "system.g", "must be non-negative");
  if (sys["n_max"] && p.scalar(sys["n_max"], "system.n_max") != "auto") {
    const long long n = p.integer(sys["n_max"], "system.n_max");
    if (n < 0 || n > 5000) p.fail(sys["n_max"], "system.n_max", "must be 'auto' or in [0, 5000]");
    c.n_max = static_cast<int>(n);
  }
  if (sys["tail_tolerance"]) {
    c.tail_tolerance = p.number(sys["tail_tolerance"], "system.tail_tolerance");
    if (!(c.tail_tolerance > 0.0 && c.tail_tolerance < 1.0)) {
      p.fail(sys["tail_tolerance"], "system.tail_tolerance", "must lie in (0, 1)");
    }
  }

  const YAML::Node sch = root["schedule"];
  if (!sch) p.fail(root, "schedule", "missing section");
  p.expect_map(sch, "schedule", {"kind", "tau", "count", "seed"});
  if (sch["kind"]) c.schedule_kind = parse_kind(p, sch["kind"]);
  if (!sch["tau"]) p.fail(sch, "schedule.tau", "missing");
  c.tau = p.time(sch["tau"], "schedule.tau", c.omega_m_hz);
  if (!(c.tau > 0.0)) p.fail(sch["tau"], "schedule.tau", "must be positive");
  if (!sch["count"]) p.fail(sch, "schedule.count", "missing");
  const long long count = p.integer(sch["count"], "schedule.count");
  if (count < 1 || count > 1000000) p.fail(sch["count"], "schedule.count", "must be in [1, 1e6]");
  c.count = static_cast<int>(count);
  if (sch["seed"]) c.seed = p.unsigned_integer(sch["seed"], "schedule.seed");

  const YAML::Node init = root["initial_state"];
  if (!init) p.fail(root, "initial_state", "missing section");
  p.expect_map(init, "initial_state", {"temperature", "nbar", "populations"});
  if (init.size() != 1) {
    p.fail(init, "initial_state", "give exactly one of temperature, nbar, populations");
  }
  if (init["temperature"]) {
    c.initial.kind = InitialStateSpec::Kind::temperature;
    c.initial.temperature_kelvin = p.temperature_kelvin(init["temperature"], "initial_state.temperature");
    if (!(c.initial.temperature_kelvin >= 0.0)) {
      p.fail(init["temperature"], "initial_state.temperature", "must be non-negative");
    }
    if (!c.omega_m_hz) p.fail(init["temperature"], "initial_state.temperature", "needs system.omega_m");
  } else if (init["nbar"]) {
    c.initial.kind = InitialStateSpec::Kind::nbar;
    c.initial.nbar = p.number(init["nbar"], "initial_state.nbar");
    if (!(c.initial.nbar >= 0.0)) p.fail(init["nbar"], "initial_state.nbar", "must be non-negative");
  } else {
    c.initial.kind = InitialStateSpec::Kind::populations;
    const YAML::Node pops = init["populations"];
    if (!pops.IsSequence() || pops.size() == 0) {
      p.fail(pops, "initial_state.populations", "expected a non-empty list");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < pops.size(); ++i) {
      const double v = p.number(pops[i], "initial_state.populations");
      if (v < 0.0) p.fail(pops[i], "initial_state.populations", "populations must be non-negative");
      total += v;
      c.initial.populations.push_back(v);
    }
    if (!(total > 0.0)) p.fail(pops, "initial_state.populations", "populations sum to zero");
  }

  if (const YAML::Node d = root["dissipation"]) {
    p.expect_map(d, "dissipation",
                 {"gamma_m", "quality_factor", "nbar_bath", "bath_temperature", "gamma_q_relax",
                  "gamma_q_phi", "dt"});
    DissipationSpec spec;
    if (d["gamma_m"] && d["quality_factor"]) {
      p.fail(d, "dissipation", "give gamma_m or quality_factor, not both");
    }
    if (d["gamma_m"]) spec.rates.gamma_m = p.energy(d["gamma_m"], "dissipation.gamma_m", c.omega_m_hz);
    if (d["quality_factor"]) {
      spec.quality_factor = p.number(d["quality_factor"], "dissipation.quality_factor");
      if (!(*spec.quality_factor > 0.0)) {
        p.fail(d["quality_factor"], "dissipation.quality_factor", "must be positive");
      }
      spec.rates.gamma_m = gamma_from_quality(*spec.quality_factor);
    }
    if (d["nbar_bath"] && d["bath_temperature"]) {
      p.fail(d, "dissipation", "give nbar_bath or bath_temperature, not both");
    }
    if (d["nbar_bath"]) spec.rates.nbar_bath = p.number(d["nbar_bath"], "dissipation.nbar_bath");
    if (d["bath_temperature"]) {
      if (!c.omega_m_hz) p.fail(d["bath_temperature"], "dissipation.bath_temperature", "needs system.omega_m");
      spec.bath_temperature_kelvin =
          p.temperature_kelvin(d["bath_temperature"], "dissipation.bath_temperature");
    }
    if (d["gamma_q_relax"]) {
      spec.rates.gamma_q_relax = p.energy(d["gamma_q_relax"], "dissipation.gamma_q_relax", c.omega_m_hz);
    }
    if (d["gamma_q_phi"]) {
      spec.rates.gamma_q_phi = p.energy(d["gamma_q_phi"], "dissipation.gamma_q_phi", c.omega_m_hz);
    }
    if (d["dt"]) spec.dt = p.time(d["dt"], "dissipation.dt", c.omega_m_hz);
    if (!(spec.dt > 0.0)) p.fail(d["dt"], "dissipation.dt", "must be positive");
    if (!(spec.rates.gamma_m >= 0.0 && spec.rates.nbar_bath >= 0.0 &&
          spec.rates.gamma_q_relax >= 0.0 && spec.rates.gamma_q_phi >= 0.0)) {
      p.fail(d, "dissipation", "rates and bath occupation must be non-negative");
    }
    c.dissipation = spec;
  }

  if (root["mode"]) c.mode = parse_mode(p, root["mode"]);
  if (const YAML::Node t = root["trajectory"]) {
    p.expect_map(t, "trajectory", {"policy", "count"});
    if (t["policy"]) c.policy = parse_policy(p, t["policy"]);
    if (t["count"]) {
      const long long n = p.integer(t["count"], "trajectory.count");
      if (n < 1 || n > 10000000) p.fail(t["count"], "trajectory.count", "must be in [1, 1e7]");
      c.trajectories = static_cast<int>(n);
    }
  }

  if (const YAML::Node s = root["sweep"]) {
    p.expect_map(s, "sweep", {"aggregate", "axes"});
    if (s["aggregate"]) {
      const std::string a = p.scalar(s["aggregate"], "sweep.aggregate");
      if (a == "none") {
        c.aggregate = Aggregate::none;
      } else if (a == "mean") {
        c.aggregate = Aggregate::mean;
      } else {
        p.fail(s["aggregate"], "sweep.aggregate", "expected none or mean");
      }
    }
    const YAML::Node axes = s["axes"];
    if (axes) {
      if (!axes.IsSequence()) p.fail(axes, "sweep.axes", "expected a list");
      if (axes.size() > 2) p.fail(axes, "sweep.axes", "at most two axes");
      std::size_t combos = 1;
      for (const auto& ax : axes) {
        p.expect_map(ax, "sweep.axes[]", {"axis", "values", "range"});
        SweepAxis axis;
        axis.axis = p.scalar(ax["axis"], "sweep.axes[].axis");
        const auto& names = sweep_axis_names();
        if (std::find(names.begin(), names.end(), axis.axis) == names.end()) {
          p.fail(ax["axis"], "sweep.axes[].axis", "unknown axis '" + axis.axis + "'");
        }
        if (ax["values"] && ax["range"]) p.fail(ax, "sweep.axes[]", "give values or range, not both");
        if (const YAML::Node v = ax["values"]) {
          if (!v.IsSequence()) p.fail(v, "sweep.axes[].values", "expected a list");
          for (const auto& x : v) axis.values.push_back(p.number(x, "sweep.axes[].values"));
        } else if (const YAML::Node r = ax["range"]) {
          p.expect_map(r, "sweep.axes[].range", {"from", "to", "steps"});
          const double from = p.number(r["from"], "sweep.axes[].range.from");
          const double to = p.number(r["to"], "sweep.axes[].range.to");
          const long long steps = p.integer(r["steps"], "sweep.axes[].range.steps");
          if (steps < 1 || steps > static_cast<long long>(kMaxSweepCombinations)) {
            p.fail(r["steps"], "sweep.axes[].range.steps", "must be in [1, 10000]");
          }
          for (long long i = 0; i < steps; ++i) {
            axis.values.push_back(steps == 1 ? from : from + (to - from) * i / (steps - 1.0));
          }
        } else {
          p.fail(ax, "sweep.axes[]", "needs values or range");
        }
        if (axis.values.empty()) continue;  // empty axis: no sweep along it
        combos *= axis.values.size();
        if (combos > kMaxSweepCombinations) {
          p.fail(ax, "sweep.axes", "sweep has more than " + std::to_string(kMaxSweepCombinations) +
                                       " combinations (" + std::to_string(combos) + "+)");
        }
        c.sweep.push_back(std::move(axis));
      }
    }
  }

  if (const YAML::Node o = root["output"]) {
    p.expect_map(o, "output", {"csv", "manifest"});
    if (o["csv"]) c.csv = p.scalar(o["csv"], "output.csv");
    if (o["manifest"]) c.manifest = p.scalar(o["manifest"], "output.manifest");
  }
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

YAML::Node load_yaml(const std::string& text, const std::string& source) {
  try {
    return YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream msg;
    msg << source << ":" << e.mark.line + 1 << ": syntax error: " << e.msg;
    throw ConfigError(msg.str());
  }
}

void emit_config_body(YAML::Emitter& out, const ExperimentConfig& c) {
  auto q = [](double v, const char* unit) { return format_double(v) + " " + unit; };
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << c.name;
  out << YAML::Key << "system" << YAML::Value << YAML::BeginMap;
  if (c.omega_m_hz) out << YAML::Key << "omega_m" << YAML::Value << q(*c.omega_m_hz, "Hz");
  out << YAML::Key << "delta" << YAML::Value << q(c.delta, "wm");
  out << YAML::Key << "g" << YAML::Value << q(c.g, "wm");
  out << YAML::Key << "n_max" << YAML::Value
      << (c.n_max ? std::to_string(*c.n_max) : std::string("auto"));
  out << YAML::Key << "tail_tolerance" << YAML::Value << format_double(c.tail_tolerance);
  out << YAML::EndMap;

  out << YAML::Key << "schedule" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "kind" << YAML::Value << std::string(to_string(c.schedule_kind));
  out << YAML::Key << "tau" << YAML::Value << q(c.tau, "/wm");
  out << YAML::Key << "count" << YAML::Value << std::to_string(c.count);
  out << YAML::Key << "seed" << YAML::Value << std::to_string(c.seed);
  out << YAML::EndMap;

  out << YAML::Key << "initial_state" << YAML::Value << YAML::BeginMap;
  switch (c.initial.kind) {
    case InitialStateSpec::Kind::temperature:
      out << YAML::Key << "temperature" << YAML::Value << q(c.initial.temperature_kelvin, "K");
      break;
    case InitialStateSpec::Kind::nbar:
      out << YAML::Key << "nbar" << YAML::Value << format_double(c.initial.nbar);
      break;
    case InitialStateSpec::Kind::populations:
      out << YAML::Key << "populations" << YAML::Value << YAML::Flow << YAML::BeginSeq;
      for (double v : c.initial.populations) out << format_double(v);
      out << YAML::EndSeq;
      break;
  }
  out << YAML::EndMap;

  if (c.dissipation) {
    const DissipationSpec& d = *c.dissipation;
    out << YAML::Key << "dissipation" << YAML::Value << YAML::BeginMap;
    if (d.quality_factor) {
      out << YAML::Key << "quality_factor" << YAML::Value << format_double(*d.quality_factor);
    } else {
      out << YAML::Key << "gamma_m" << YAML::Value << q(d.rates.gamma_m, "wm");
    }
    if (d.bath_temperature_kelvin) {
      out << YAML::Key << "bath_temperature" << YAML::Value << q(*d.bath_temperature_kelvin, "K");
    } else {
      out << YAML::Key << "nbar_bath" << YAML::Value << format_double(d.rates.nbar_bath);
    }
    out << YAML::Key << "gamma_q_relax" << YAML::Value << q(d.rates.gamma_q_relax, "wm");
    out << YAML::Key << "gamma_q_phi" << YAML::Value << q(d.rates.gamma_q_phi, "wm");
    out << YAML::Key << "dt" << YAML::Value << q(d.dt, "/wm");
    out << YAML::EndMap;
  }

  out << YAML::Key << "mode" << YAML::Value << std::string(to_string(c.mode));
  out << YAML::Key << "trajectory" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "policy" << YAML::Value << std::string(to_string(c.policy));
  out << YAML::Key << "count" << YAML::Value << std::to_string(c.trajectories);
  out << YAML::EndMap;

  if (!c.sweep.empty()) {
    out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "aggregate" << YAML::Value
        << (c.aggregate == Aggregate::mean ? "mean" : "none");
    out << YAML::Key << "axes" << YAML::Value << YAML::BeginSeq;
    for (const auto& ax : c.sweep) {
      out << YAML::BeginMap << YAML::Key << "axis" << YAML::Value << ax.axis;
      out << YAML::Key << "values" << YAML::Value << YAML::Flow << YAML::BeginSeq;
      for (double v : ax.values) out << format_double(v);
      out << YAML::EndSeq << YAML::EndMap;
    }
    out << YAML::EndSeq << YAML::EndMap;
  }

  out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "csv" << YAML::Value << c.csv;
  out << YAML::Key << "manifest" << YAML::Value << c.manifest;
  out << YAML::EndMap;
  out << YAML::EndMap;
}

}  // namespace

const std::vector<std::string>& sweep_axis_names() {
  static const std::vector<std::string> names = {
      "system.delta",       "system.g",           "schedule.tau",
      "schedule.count",     "schedule.seed",      "initial_state.nbar",
      "dissipation.gamma_m", "dissipation.nbar_bath"};
  return names;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  return parse_document(text, source).config;
}

ExperimentConfig load_config(const std::string& path) { return load_document(path).config; }

ConfigDocument parse_document(const std::string& text, const std::string& source) {
  const Parser p(source);
  const YAML::Node root = load_yaml(text, source);
  ConfigDocument doc;
  if (root.IsMap() && root["tool"]) {
    p.expect_map(root, "", {"tool", "version", "command", "master_seed", "derived",
                            "wall_clock_seconds", "outputs", "config"});
    if (p.scalar(root["tool"], "tool") != "mrcool") p.fail(root["tool"], "tool", "not an mrcool manifest");
    doc.is_manifest = true;
    if (root["command"]) doc.command = p.scalar(root["command"], "command");
    if (root["config"]) doc.config = parse_config_node(p, root["config"]);
    return doc;
  }
  if (!root.IsMap()) p.fail(root, "", "expected a mapping at top level");
  doc.config = parse_config_node(p, root);
  return doc;
}

ConfigDocument load_document(const std::string& path) { return parse_document(read_file(path), path); }

std::string emit_config(const ExperimentConfig& config) {
  YAML::Emitter out;
  emit_config_body(out, config);
  return std::string(out.c_str()) + "\n";
}

ExperimentConfig with_axis_value(const ExperimentConfig& config, const std::string& axis,
                                 double value) {
  ExperimentConfig c = config;
  auto require_integer = [&](double lo) {
    if (!(value >= lo) || value != std::floor(value) || value > 9007199254740992.0) {
      throw ConfigError("sweep axis " + axis + ": value " + format_double(value) +
                        " is not a valid integer");
    }
  };
  if (axis == "system.delta") {
    if (!(value > 0.0)) throw ConfigError("sweep axis system.delta: must be positive");
    c.delta = value;
  } else if (axis == "system.g") {
    if (!(value >= 0.0)) throw ConfigError("sweep axis system.g: must be non-negative");
    c.g = value;
  } else if (axis == "schedule.tau") {
    if (!(value > 0.0)) throw ConfigError("sweep axis schedule.tau: must be positive");
    c.tau = value;
  } else if (axis == "schedule.count") {
    require_integer(1.0);
    c.count = static_cast<int>(value);
  } else if (axis == "schedule.seed") {
    require_integer(0.0);
    c.seed = static_cast<std::uint64_t>(value);
  } else if (axis == "initial_state.nbar") {
    if (!(value >= 0.0)) throw ConfigError("sweep axis initial_state.nbar: must be non-negative");
    c.initial = InitialStateSpec{};
    c.initial.kind = InitialStateSpec::Kind::nbar;
    c.initial.nbar = value;
  } else if (axis == "dissipation.gamma_m" || axis == "dissipation.nbar_bath") {
    if (!c.dissipation) throw ConfigError("sweep axis " + axis + " needs a dissipation section");
    if (!(value >= 0.0)) throw ConfigError("sweep axis " + axis + ": must be non-negative");
    if (axis == "dissipation.gamma_m") {
      c.dissipation->rates.gamma_m = value;
      c.dissipation->quality_factor.reset();
    } else {
      c.dissipation->rates.nbar_bath = value;
      c.dissipation->bath_temperature_kelvin.reset();
    }
  } else {
    throw ConfigError("unknown sweep axis '" + axis + "'");
  }
  c.sweep.clear();
  return c;
}

}  // namespace mrcool::experiment
