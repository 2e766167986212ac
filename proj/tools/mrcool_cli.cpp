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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mrcool/errors.hpp"
#include "mrcool/experiment/config.hpp"
#include "mrcool/experiment/runner.hpp"

namespace fs = std::filesystem;
using namespace mrcool;
using namespace mrcool::experiment;

namespace {

enum ExitCode { kOk = 0, kConfigError = 2, kNumericalFailure = 3, kCheckFailed = 4 };

void write_files(const Report& report, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  for (const auto& f : report.files) {
    const fs::path path = out_dir / f.name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << f.content;
    std::cout << "wrote " << path.string() << "\n";
  }
}

int finish(const Report& report, const fs::path& out_dir) {
  write_files(report, out_dir);
  for (const auto& c : report.checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
  }
  return report.all_passed() ? kOk : kCheckFailed;
}

std::string preset_footer() {
  std::string text = "\nPresets:\n";
  for (const auto& p : presets()) text += "  " + p.name + ": " + p.description + "\n";
  text += "\nExit codes: 0 success, 2 config error, 3 numerical failure, 4 preset check failed\n";
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mrcool: ground-state cooling of a mechanical resonator by repeated qubit readout"};
  app.footer(preset_footer());
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  int threads = 1;
  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", config_path, "YAML config or run manifest");
    if (needs_config) opt->required();
    sub->add_option("--seed", seed, "master seed (overrides the config)");
    sub->add_option("--out-dir", out_dir, "directory for CSV and manifest files");
    sub->add_option("--threads", threads, "worker threads for ensembles and sweeps")
        ->check(CLI::Range(1, 1024));
  };

  auto* run = app.add_subcommand("run", "run a config (or replay a manifest)");
  add_common(run, true);
  auto* sweep = app.add_subcommand("sweep", "run a config with one or two swept axes");
  add_common(sweep, true);
  std::map<std::string, CLI::App*> preset_cmds;
  for (const auto& p : presets()) {
    auto* sub = app.add_subcommand(p.name, p.description);
    add_common(sub, false);
    preset_cmds[p.name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  auto run_preset = [&](const std::string& name, std::uint64_t s) -> Report {
    if (name == "fig1") return fig1(s, threads);
    if (name == "fig2") return fig2(s, threads);
    if (name == "robustness") return robustness(s, threads);
    if (name == "validate") return validate(threads);
    throw ConfigError("unknown command '" + name + "' in manifest");
  };

  try {
    for (const auto& [name, sub] : preset_cmds) {
      if (sub->parsed()) return finish(run_preset(name, seed.value_or(1)), out_dir);
    }
    ConfigDocument doc = load_document(config_path);
    if (seed) doc.config.seed = *seed;
    if (doc.command != "run" && doc.command != "sweep") {
      return finish(run_preset(doc.command, doc.config.seed), out_dir);
    }
    if (sweep->parsed() && doc.config.sweep.empty()) {
      std::cout << "sweep: no swept axes, running a plain configuration\n";
    }
    const std::string command = doc.config.sweep.empty() ? "run" : "sweep";
    return finish(run_config(doc.config, threads, command), out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const TruncationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const DomainError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalFailure;
  }
}
