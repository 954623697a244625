// Copyright 2026 The fockstab Authors
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

#include "fockstab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "fockstab/bundle.hpp"
#include "fockstab/config.hpp"
#include "fockstab/errors.hpp"
#include "fockstab/kernels.hpp"
#include "fockstab/rate.hpp"

#ifndef FOCKSTAB_VERSION
#define FOCKSTAB_VERSION "0.0.0"
#endif

namespace fockstab::cli {

namespace {

struct RunArgs {
  std::string config;
  std::string out;
  std::vector<std::string> overrides;
  std::size_t workers = 1;
  std::optional<std::uint64_t> seed;
};

struct ValidateArgs {
  std::string config;
  std::vector<std::string> overrides;
};

struct WignerArgs {
  std::string bundle;
  std::string scenario;
  std::string out;
  double alpha_max = 2.5;
  std::size_t points = 61;
  std::size_t truncation = 0;
  bool normalize = false;
  std::optional<double> w0;
};

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int report_config_error(const ConfigError& e, std::ostream& err) {
  err << "config error: " << e.what() << '\n';
  return kConfig;
}

// --- run ---------------------------------------------------------------------

ScenarioRecord run_one(const ScenarioSpec& spec, const std::filesystem::path& root) {
  ScenarioRecord rec;
  rec.label = spec.label;
  rec.kind = to_string(spec.kind);
  rec.model = to_string(spec.model);
  const auto start = std::chrono::steady_clock::now();
  try {
    const ScenarioOutput output = run_scenario(spec);
    BundleWriter writer{root};
    rec.files = write_scenario_bundle(writer, spec, output);
    rec.diagnostics_json = scenario_diagnostics_json(output);
    rec.warnings = scenario_warnings(output);
    rec.status = "ok";
  } catch (const NumericalError& e) {
    rec.status = "error";
    rec.error = e.diagnostics().empty() ? e.what() : std::string(e.what()) + " [" + e.diagnostics() + "]";
    rec.exit_code = kNumerics;
  } catch (const ConfigError& e) {
    rec.status = "error";
    rec.error = e.what();
    rec.exit_code = kConfig;
  } catch (const DomainError& e) {
    rec.status = "error";
    rec.error = e.what();
    rec.exit_code = kConfig;
  } catch (const std::exception& e) {
    rec.status = "error";
    rec.error = e.what();
    rec.exit_code = kFailure;
  }
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = load_config(args.config, args.overrides);
  } catch (const ConfigError& e) {
    return report_config_error(e, err);
  }

  std::filesystem::path root = args.out;
  if (root.empty()) {
    const char* env = std::getenv(kOutputDirEnv);
    root = (env && *env) ? env : "fockstab-out";
  }

  BundleWriter top{root};
  top.write("config.toml", cfg.canonical);

  const std::size_t n = cfg.scenarios.size();
  std::vector<ScenarioRecord> records(n);
  const std::size_t workers = std::clamp<std::size_t>(args.workers, 1, n);
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      records[i] = run_one(cfg.scenarios[i], root);
      const std::lock_guard lock{log_mutex};
      const auto& r = records[i];
      out << '[' << r.status << "] " << r.label << " (" << r.kind << ", " << r.model << ") " << std::fixed
          << std::setprecision(2) << r.wall_seconds << " s" << std::defaultfloat << '\n';
      for (const auto& w : r.warnings) out << "  warning: " << w << '\n';
      if (!r.error.empty()) err << r.label << ": " << r.error << '\n';
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  RunManifest m;
  m.tool_version = FOCKSTAB_VERSION;
  m.config_source = cfg.source;
  m.config_sha256 = cfg.sha256;
  m.seed = args.seed;
  m.kernel = kernels::active().name;
  m.workers = workers;
  m.created_utc = utc_now();
  m.files = top.files();
  for (const auto& r : records) m.files.insert(m.files.end(), r.files.begin(), r.files.end());
  m.scenarios = std::move(records);
  write_atomically(root / "manifest.json", manifest_json(m));

  for (const auto& r : m.scenarios)
    if (r.exit_code != kOk) return r.exit_code;
  return kOk;
}

// --- validate ----------------------------------------------------------------

int cmd_validate(const ValidateArgs& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = load_config(args.config, args.overrides);
  } catch (const ConfigError& e) {
    return report_config_error(e, err);
  }
  out << "config " << cfg.source << " ok (sha256 " << cfg.sha256.substr(0, 12) << ")\n";
  const auto& p = cfg.params;
  out << std::fixed << std::setprecision(2) << "cavity T1 = " << 1.0 / p.kappa_c.rad_per_us()
      << " us, qubit T_phi = " << (p.pure_dephasing_rate() > 0 ? 1.0 / p.pure_dephasing_rate() : INFINITY)
      << " us\n";
  auto print_comb = [&](const DriveComb& comb, const SystemParams& params) {
    if (comb.empty() || comb.kind != CombKind::Addition) return;
    const auto lambdas = pump_rates_khz(comb, params);
    out << "  comb " << comb.lowest_level() << ".." << comb.highest_level() << " -> " << comb.target_level() << ":";
    for (const auto& t : comb.sorted_tones())
      out << " lambda_" << t.level << "/2pi = " << std::setprecision(2) << lambdas[t.level] << " kHz";
    if (comb.lowest_level() == 0)
      out << std::setprecision(4) << ", F_" << comb.target_level() << " = "
          << steady_fidelity(lambdas, params.kappa_c.khz(), comb.target_level());
    out << '\n';
  };
  for (const auto& s : cfg.scenarios) {
    out << "scenario " << s.label << ": " << to_string(s.kind) << ", model " << to_string(s.model) << ", initial "
        << s.initial.describe() << '\n';
    print_comb(s.comb, s.params);
    for (const auto& c : s.analytics) {
      if (!c.comb.empty()) {
        print_comb(c.comb, s.params);
      } else {
        out << "  rates " << (c.label.empty() ? "(unnamed)" : c.label) << ":";
        for (std::size_t i = 0; i < c.lambdas_khz.size(); ++i)
          out << " lambda_" << i << "/2pi = " << std::setprecision(2) << c.lambdas_khz[i] << " kHz";
        out << '\n';
      }
    }
  }
  out << std::defaultfloat;
  return kOk;
}

// --- wigner ------------------------------------------------------------------

struct MissingArtifact : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::filesystem::path locate_snapshot(const WignerArgs& args) {
  const std::filesystem::path bundle = args.bundle;
  if (!args.scenario.empty()) {
    auto p = bundle / args.scenario / "state.json";
    if (!std::filesystem::exists(p)) throw MissingArtifact("no state snapshot at " + p.string());
    return p;
  }
  if (std::filesystem::is_regular_file(bundle)) return bundle;
  if (std::filesystem::exists(bundle / "state.json")) return bundle / "state.json";
  if (!std::filesystem::is_directory(bundle)) throw MissingArtifact("bundle " + bundle.string() + " does not exist");
  std::vector<std::filesystem::path> found;
  for (const auto& e : std::filesystem::directory_iterator(bundle))
    if (e.is_directory() && std::filesystem::exists(e.path() / "state.json")) found.push_back(e.path() / "state.json");
  if (found.empty()) throw MissingArtifact("bundle " + bundle.string() + " holds no state snapshot");
  if (found.size() > 1) {
    std::sort(found.begin(), found.end());
    std::string names;
    for (const auto& f : found) names += " " + f.parent_path().filename().string();
    throw ConfigError("--scenario", "bundle holds several snapshots; choose one of:" + names);
  }
  return found.front();
}

int cmd_wigner(const WignerArgs& args, std::ostream& out, std::ostream& err) {
  StateSnapshot snap;
  try {
    const auto path = locate_snapshot(args);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingArtifact("cannot read " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    snap = parse_state_json(text.str());
  } catch (const MissingArtifact& e) {
    err << "missing artifact: " << e.what() << '\n';
    return kMissingArtifact;
  } catch (const ConfigError& e) {
    return report_config_error(e, err);
  } catch (const DomainError& e) {
    err << "missing artifact: unusable snapshot: " << e.what() << '\n';
    return kMissingArtifact;
  }

  try {
    WignerGridSpec spec{args.alpha_max, args.points, args.truncation};
    if (!(spec.alpha_max > 0.0) || spec.points < 2) throw DomainError("grid needs --alpha-max > 0 and --points >= 2");
    WignerGrid grid = wigner(snap.state, spec);
    if (args.normalize) {
      ReadoutCalibration cal;
      cal.w0 = args.w0.value_or(snap.w0.value_or(cal.w0));
      grid = wigner_normalize(grid, cal);
    }
    for (const auto& w : grid.warnings) err << "warning: " << w << '\n';
    const std::string csv = wigner_csv(grid);
    if (args.out.empty()) {
      out << csv;
    } else {
      write_atomically(args.out, csv);
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << ' ' << e.diagnostics() << '\n';
    return kNumerics;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fock-state stabilization simulator", "fockstab"};
  app.set_version_flag("--version", FOCKSTAB_VERSION);
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Run every scenario of a configuration and write a result bundle");
  run_cmd->add_option("--config,-c", run_args.config, "Configuration file (TOML)")->required();
  run_cmd->add_option("--out,-o", run_args.out, std::string("Output directory (default: $") + kOutputDirEnv + " or ./fockstab-out)");
  run_cmd->add_option("--override", run_args.overrides, "key.path=value, applied before validation")->take_all();
  run_cmd->add_option("--workers,-j", run_args.workers, "Scenarios run concurrently")->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", run_args.seed, "Reserved; the pipeline is deterministic");

  ValidateArgs val_args;
  auto* val_cmd = app.add_subcommand("validate", "Check a configuration and print derived rates");
  val_cmd->add_option("--config,-c", val_args.config, "Configuration file (TOML)")->required();
  val_cmd->add_option("--override", val_args.overrides, "key.path=value")->take_all();

  WignerArgs wig_args;
  auto* wig_cmd = app.add_subcommand("wigner", "Evaluate a Wigner grid from a bundle's cavity-state snapshot");
  wig_cmd->add_option("--bundle,-b", wig_args.bundle, "Bundle directory, scenario directory or state.json")->required();
  wig_cmd->add_option("--scenario,-s", wig_args.scenario, "Scenario label inside the bundle");
  wig_cmd->add_option("--out,-o", wig_args.out, "CSV output file (default: stdout)");
  wig_cmd->add_option("--alpha-max", wig_args.alpha_max, "Grid half-width in |alpha|");
  wig_cmd->add_option("--points", wig_args.points, "Points per axis");
  wig_cmd->add_option("--truncation", wig_args.truncation, "Fock truncation (0: automatic)");
  wig_cmd->add_flag("--normalize", wig_args.normalize, "Divide by the vacuum parity contrast w0");
  wig_cmd->add_option("--w0", wig_args.w0, "Contrast used by --normalize (default: snapshot value or 0.924)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << FOCKSTAB_VERSION << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "usage error: " << e.what() << '\n';
    return kConfig;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_args, out, err);
    if (val_cmd->parsed()) return cmd_validate(val_args, out, err);
    if (wig_cmd->parsed()) return cmd_wigner(wig_args, out, err);
  } catch (const ConfigError& e) {
    return report_config_error(e, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace fockstab::cli
