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

#include "fockstab/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "fockstab/bundle.hpp"
#include "fockstab/errors.hpp"

namespace fockstab {

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string join(const std::string& path, std::size_t index) { return path + "." + std::to_string(index); }

/// View of one TOML table that rejects keys outside an allowed set.
class Reader {
 public:
  Reader(const toml::table& t, std::string path, std::initializer_list<std::string_view> allowed)
      : t_(t), path_(std::move(path)) {
    for (auto&& [k, v] : t_) {
      const std::string_view key = k.str();
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        throw ConfigError(join(path_, std::string(key)), "unknown key");
    }
  }

  const std::string& path() const { return path_; }
  std::string path(const std::string& key) const { return join(path_, key); }
  bool has(const std::string& key) const { return t_.contains(key); }

  std::optional<double> number(const std::string& key) const {
    const toml::node* n = t_.get(key);
    if (!n) return std::nullopt;
    if (!n->is_number()) throw ConfigError(path(key), "expected a number");
    return n->value<double>();
  }
  double number_or(const std::string& key, double fallback) const { return number(key).value_or(fallback); }

  std::optional<bool> boolean(const std::string& key) const {
    const toml::node* n = t_.get(key);
    if (!n) return std::nullopt;
    if (!n->is_boolean()) throw ConfigError(path(key), "expected true or false");
    return n->value<bool>();
  }

  std::optional<std::string> string(const std::string& key) const {
    const toml::node* n = t_.get(key);
    if (!n) return std::nullopt;
    if (!n->is_string()) throw ConfigError(path(key), "expected a string");
    return n->value<std::string>();
  }

  std::optional<std::size_t> count(const std::string& key) const {
    const toml::node* n = t_.get(key);
    if (!n) return std::nullopt;
    if (!n->is_integer() || *n->value<std::int64_t>() < 0)
      throw ConfigError(path(key), "expected a non-negative integer");
    return static_cast<std::size_t>(*n->value<std::int64_t>());
  }

  const toml::table* table(const std::string& key) const {
    const toml::node* n = t_.get(key);
    if (!n) return nullptr;
    if (!n->is_table()) throw ConfigError(path(key), "expected a table");
    return n->as_table();
  }

  const toml::array* array(const std::string& key) const {
    const toml::node* n = t_.get(key);
    if (!n) return nullptr;
    if (!n->is_array()) throw ConfigError(path(key), "expected an array");
    return n->as_array();
  }

  const toml::node* node(const std::string& key) const { return t_.get(key); }

 private:
  const toml::table& t_;
  std::string path_;
};

const toml::table& table_at(const toml::array& arr, std::size_t i, const std::string& path) {
  const toml::node* n = arr.get(i);
  if (!n || !n->is_table()) throw ConfigError(join(path, i), "expected a table");
  return *n->as_table();
}

double positive(const Reader& r, const std::string& key, double fallback) {
  const double v = r.number_or(key, fallback);
  if (!(v > 0.0)) throw ConfigError(r.path(key), "must be > 0");
  return v;
}

double non_negative(const Reader& r, const std::string& key, double fallback) {
  const double v = r.number_or(key, fallback);
  if (!(v >= 0.0)) throw ConfigError(r.path(key), "must be >= 0");
  return v;
}

// --- sections ------------------------------------------------------------

SystemParams read_system(const toml::table* t, const std::string& path, SystemParams p) {
  if (!t) return p;
  const Reader r{*t, path,
                 {"omega_c_ghz", "omega_q_ghz", "omega_r_ghz", "chi_qc_mhz", "chi_qr_mhz", "zeta_c_khz", "kappa_c_khz",
                  "kappa_r_mhz", "qubit_t1_us", "qubit_t2_us", "qubit_heat_khz", "cavity_thermal_pop"}};
  if (auto v = r.number("omega_c_ghz")) p.omega_c = AngularRate::from_ghz(*v);
  if (auto v = r.number("omega_q_ghz")) p.omega_q = AngularRate::from_ghz(*v);
  if (auto v = r.number("omega_r_ghz")) p.omega_r = AngularRate::from_ghz(*v);
  if (auto v = r.number("chi_qc_mhz")) p.chi_qc = AngularRate::from_mhz(*v);
  if (auto v = r.number("chi_qr_mhz")) p.chi_qr = AngularRate::from_mhz(*v);
  if (auto v = r.number("zeta_c_khz")) p.zeta_c = AngularRate::from_khz(*v);
  if (auto v = r.number("kappa_c_khz")) p.kappa_c = AngularRate::from_khz(*v);
  if (auto v = r.number("kappa_r_mhz")) p.kappa_r = AngularRate::from_mhz(*v);
  if (auto v = r.number("qubit_t1_us")) p.qubit_t1_us = *v;
  if (auto v = r.number("qubit_t2_us")) p.qubit_t2_us = *v;
  if (auto v = r.number("qubit_heat_khz")) p.qubit_heat_rate = AngularRate::from_khz(*v);
  if (auto v = r.number("cavity_thermal_pop")) p.cavity_thermal_pop = *v;
  try {
    p.validate();
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  }
  return p;
}

DissipationChannels read_channels(const toml::table* t, const std::string& path, DissipationChannels c) {
  if (!t) return c;
  const Reader r{*t, path,
                 {"cavity_decay", "resonator_decay", "qubit_relaxation", "qubit_dephasing", "qubit_heating",
                  "cavity_thermal"}};
  if (auto v = r.boolean("cavity_decay")) c.cavity_decay = *v;
  if (auto v = r.boolean("resonator_decay")) c.resonator_decay = *v;
  if (auto v = r.boolean("qubit_relaxation")) c.qubit_relaxation = *v;
  if (auto v = r.boolean("qubit_dephasing")) c.qubit_dephasing = *v;
  if (auto v = r.boolean("qubit_heating")) c.qubit_heating = *v;
  if (auto v = r.boolean("cavity_thermal")) c.cavity_thermal = *v;
  return c;
}

std::vector<Tone> read_tones(const toml::array& arr, const std::string& path) {
  std::vector<Tone> tones;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const Reader r{table_at(arr, i, path), join(path, i), {"level", "omega_khz", "j_khz", "detuning_khz"}};
    const auto level = r.count("level");
    if (!level) throw ConfigError(r.path("level"), "missing required key");
    if (!r.has("omega_khz")) throw ConfigError(r.path("omega_khz"), "missing required key");
    if (!r.has("j_khz")) throw ConfigError(r.path("j_khz"), "missing required key");
    tones.push_back({*level, AngularRate::from_khz(positive(r, "omega_khz", 0.0)),
                     AngularRate::from_khz(positive(r, "j_khz", 0.0)),
                     AngularRate::from_khz(r.number_or("detuning_khz", 0.0))});
  }
  return tones;
}

DriveComb read_comb(const toml::table* t, const std::string& path, DriveComb fallback) {
  if (!t) return fallback;
  const Reader r{*t, path, {"kind", "tones"}};
  DriveComb c;
  const std::string kind = r.string("kind").value_or("addition");
  if (kind == "addition") {
    c.kind = CombKind::Addition;
  } else if (kind == "subtraction") {
    c.kind = CombKind::Subtraction;
  } else {
    throw ConfigError(r.path("kind"), "expected \"addition\" or \"subtraction\"");
  }
  if (const auto* tones = r.array("tones")) c.tones = read_tones(*tones, r.path("tones"));
  try {
    if (!c.empty()) c.validate();
  } catch (const DomainError& e) {
    throw ConfigError(r.path("tones"), e.what());
  }
  return c;
}

WignerGridSpec read_wigner(const toml::table* t, const std::string& path, WignerGridSpec w) {
  if (!t) return w;
  const Reader r{*t, path, {"alpha_max", "points", "truncation_dim"}};
  w.alpha_max = positive(r, "alpha_max", w.alpha_max);
  w.points = r.count("points").value_or(w.points);
  if (w.points < 2) throw ConfigError(r.path("points"), "must be >= 2");
  w.truncation_dim = r.count("truncation_dim").value_or(w.truncation_dim);
  return w;
}

ReadoutCalibration read_calibration_table(const Reader& r, ReadoutCalibration c) {
  c.f_g = r.number_or("f_g", c.f_g);
  c.f_e = r.number_or("f_e", c.f_e);
  if (auto v = r.number("a0")) c.a0 = *v;
  if (auto v = r.number("a1")) c.a1 = *v;
  if (auto v = r.number("p_b")) c.p_b = *v;
  c.w0 = r.number_or("w0", c.w0);
  try {
    c.validate();
  } catch (const DomainError& e) {
    throw ConfigError(r.path(), e.what());
  }
  return c;
}

struct Integrator {
  double dt_us = 0.0;
  std::optional<double> sample_every_us;
  double steady_horizon_us = 400.0;
};

Integrator read_integrator(const toml::table* t, const std::string& path) {
  Integrator in;
  if (!t) return in;
  const Reader r{*t, path, {"dt_us", "sample_every_us", "steady_horizon_us"}};
  in.dt_us = non_negative(r, "dt_us", 0.0);
  if (r.has("sample_every_us")) in.sample_every_us = positive(r, "sample_every_us", 1.0);
  in.steady_horizon_us = positive(r, "steady_horizon_us", in.steady_horizon_us);
  return in;
}

InitialState read_initial(const Reader& r, InitialState fallback) {
  const toml::node* n = r.node("initial");
  if (!n) return fallback;
  if (n->is_integer()) {
    const auto v = *n->value<std::int64_t>();
    if (v < 0) throw ConfigError(r.path("initial"), "Fock index must be >= 0");
    return InitialState::number(static_cast<std::size_t>(v));
  }
  if (n->is_string()) {
    const auto s = *n->value<std::string>();
    if (s == "vacuum") return InitialState::vacuum();
    if (s == "logical0") return {InitialState::Kind::Logical0, 0};
    if (s == "logical1") return {InitialState::Kind::Logical1, 0};
    if (s == "logical_plus_i") return {InitialState::Kind::LogicalPlusI, 0};
  }
  throw ConfigError(r.path("initial"),
                    "expected a Fock index or one of \"vacuum\", \"logical0\", \"logical1\", \"logical_plus_i\"");
}

std::vector<AnalyticsConfig> read_analytics(const toml::array& arr, const std::string& path) {
  std::vector<AnalyticsConfig> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const Reader r{table_at(arr, i, path), join(path, i), {"label", "tones", "lambdas_khz"}};
    AnalyticsConfig c;
    c.label = r.string("label").value_or("");
    if (const auto* tones = r.array("tones")) {
      c.comb = DriveComb::addition(read_tones(*tones, r.path("tones")));
      try {
        c.comb.validate();
      } catch (const DomainError& e) {
        throw ConfigError(r.path("tones"), e.what());
      }
    }
    if (const auto* lam = r.array("lambdas_khz")) {
      for (std::size_t k = 0; k < lam->size(); ++k) {
        const toml::node* n = lam->get(k);
        if (!n->is_number() || !(*n->value<double>() >= 0.0))
          throw ConfigError(join(r.path("lambdas_khz"), k), "expected a number >= 0");
        c.lambdas_khz.push_back(*n->value<double>());
      }
    }
    if (c.comb.empty() == c.lambdas_khz.empty())
      throw ConfigError(r.path(), "give exactly one of tones or lambdas_khz");
    out.push_back(std::move(c));
  }
  return out;
}

bool valid_label(const std::string& s) {
  if (s.empty() || s == "." || s == "..") return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '_' ||
           ch == '-' || ch == '.';
  });
}

ScenarioSpec read_scenario(const toml::table& t, const std::string& path, const RunConfig& base,
                           const Integrator& integ, const WignerGridSpec& wigner_defaults, std::size_t index) {
  const Reader r{t,
                 path,
                 {"label", "kind", "model", "initial", "duration_us", "sample_every_us", "dt_us", "cavity_dim",
                  "steady_horizon_us", "final_wigner", "wigner", "comb", "channels", "system", "fit_drop_fraction",
                  "fit_residual_threshold", "include_csps", "csps", "configs", "max_n"}};
  ScenarioSpec s;
  const auto kind_name = r.string("kind");
  if (!kind_name) throw ConfigError(r.path("kind"), "missing required key");
  const auto kind = parse_scenario_kind(*kind_name);
  if (!kind)
    throw ConfigError(r.path("kind"),
                      "expected one of stabilize, protect, reset, rate-analytics, wigner-snapshot");
  s.kind = *kind;
  s.label = r.string("label").value_or(std::string(to_string(s.kind)) + "-" + std::to_string(index));
  if (!valid_label(s.label)) throw ConfigError(r.path("label"), "labels may only use [A-Za-z0-9_.-]");

  const bool timed_lindblad_default = s.kind == ScenarioKind::Reset || s.kind == ScenarioKind::WignerSnapshot;
  const std::string model_name = r.string("model").value_or(timed_lindblad_default ? "lindblad-ideal" : "rate");
  const auto model = parse_model_level(model_name);
  if (!model) throw ConfigError(r.path("model"), "expected one of rate, lindblad-ideal, lindblad-spurious");
  s.model = *model;

  s.params = read_system(r.table("system"), r.path("system"), base.params);
  s.channels = read_channels(r.table("channels"), r.path("channels"), base.channels);
  // Protect scenarios do not inherit the top-level comb: no comb means bare decay.
  s.comb = read_comb(r.table("comb"), r.path("comb"), s.kind == ScenarioKind::Protect ? DriveComb{} : base.comb);
  InitialState fallback = InitialState::vacuum();
  if (s.kind == ScenarioKind::Protect && !s.comb.empty()) fallback = InitialState::number(s.comb.target_level());
  if (s.kind == ScenarioKind::Reset) fallback = {InitialState::Kind::Logical0, 0};
  if (s.kind == ScenarioKind::Protect && !r.has("initial") && s.comb.empty())
    throw ConfigError(r.path("initial"), "protect without a comb needs an initial Fock index");
  s.initial = read_initial(r, fallback);

  const double default_duration = s.kind == ScenarioKind::Protect ? 300.0 : 100.0;
  s.duration_us = positive(r, "duration_us", default_duration);
  s.sample_every_us = positive(r, "sample_every_us", integ.sample_every_us.value_or(1.0));
  s.dt_us = non_negative(r, "dt_us", integ.dt_us);
  s.cavity_dim = r.count("cavity_dim").value_or(0);
  s.steady_horizon_us = positive(r, "steady_horizon_us", integ.steady_horizon_us);
  s.final_wigner = r.boolean("final_wigner").value_or(true);
  s.wigner = read_wigner(r.table("wigner"), r.path("wigner"), wigner_defaults);
  s.fit_drop_fraction = r.number_or("fit_drop_fraction", s.fit_drop_fraction);
  if (!(s.fit_drop_fraction >= 0.0 && s.fit_drop_fraction < 1.0))
    throw ConfigError(r.path("fit_drop_fraction"), "must lie in [0, 1)");
  s.fit_residual_threshold = positive(r, "fit_residual_threshold", s.fit_residual_threshold);
  s.include_csps = r.boolean("include_csps").value_or(false);
  if (const auto* c = r.table("csps")) {
    s.csps = read_comb(c, r.path("csps"), {});
    if (s.csps.kind != CombKind::Subtraction) throw ConfigError(r.path("csps.kind"), "must be \"subtraction\"");
  }
  if (const auto* cfgs = r.array("configs")) s.analytics = read_analytics(*cfgs, r.path("configs"));
  s.analytics_max_n = r.count("max_n").value_or(s.analytics.empty() ? 3 : 0);
  s.calibration = base.calibration;

  try {
    s.validate();
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  }
  return s;
}

// --- overrides -----------------------------------------------------------

bool is_index(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    out.emplace_back(path.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start));
    if (out.back().empty()) throw ConfigError(std::string(path), "empty segment in override key");
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return out;
}

toml::table parse_override_value(const std::string& value) {
  try {
    return toml::parse("v = " + value);
  } catch (const toml::parse_error&) {
    toml::table t;
    t.insert("v", value);
    return t;
  }
}

void apply_override(toml::table& root, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError(spec, "override must have the form key.path=value");
  const std::string key = spec.substr(0, eq);
  const auto segments = split_path(key);
  toml::table parsed = parse_override_value(spec.substr(eq + 1));
  toml::node& value = *parsed.get("v");

  toml::node* cur = &root;
  std::string path;
  for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
    const std::string& seg = segments[i];
    path = join(path, seg);
    if (auto* tbl = cur->as_table()) {
      toml::node* next = tbl->get(seg);
      if (!next) {
        if (is_index(segments[i + 1])) throw ConfigError(path, "override indexes a missing array");
        next = &tbl->insert_or_assign(seg, toml::table{}).first->second;
      }
      cur = next;
    } else if (auto* arr = cur->as_array()) {
      if (!is_index(seg)) throw ConfigError(path, "expected an array index");
      const auto idx = std::stoul(seg);
      if (idx >= arr->size()) throw ConfigError(path, "array index out of range");
      cur = arr->get(idx);
    } else {
      throw ConfigError(path, "cannot descend into a scalar");
    }
  }
  const std::string& last = segments.back();
  path = join(path, last);
  if (auto* tbl = cur->as_table()) {
    tbl->insert_or_assign(last, std::move(value));
  } else if (auto* arr = cur->as_array()) {
    if (!is_index(last)) throw ConfigError(path, "expected an array index");
    const auto idx = std::stoul(last);
    if (idx >= arr->size()) throw ConfigError(path, "array index out of range");
    arr->replace(arr->cbegin() + static_cast<std::ptrdiff_t>(idx), std::move(value));
  } else {
    throw ConfigError(path, "cannot descend into a scalar");
  }
}

toml::table parse_toml(std::string_view text, const std::string& source) {
  try {
    return toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << e.description() << " (line " << e.source().begin.line << ", column " << e.source().begin.column << ")";
    throw ConfigError("", source + ": " + os.str());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

RunConfig parse_config(std::string_view text, std::span<const std::string> overrides, const std::string& source,
                       const std::filesystem::path& base_dir) {
  toml::table root = parse_toml(text, source);
  for (const auto& o : overrides) apply_override(root, o);

  RunConfig cfg;
  cfg.source = source;
  {
    std::ostringstream os;
    os << root;
    cfg.canonical = os.str() + "\n";
  }
  cfg.sha256 = sha256_hex(cfg.canonical);

  const Reader r{root, "", {"system", "channels", "comb", "integrator", "wigner", "mitigation", "scenario"}};
  cfg.params = read_system(r.table("system"), "system", SystemParams::device_defaults());
  cfg.channels = read_channels(r.table("channels"), "channels", {});
  cfg.comb = read_comb(r.table("comb"), "comb", {});
  const Integrator integ = read_integrator(r.table("integrator"), "integrator");
  const WignerGridSpec wig = read_wigner(r.table("wigner"), "wigner", {});

  if (const auto* m = r.table("mitigation")) {
    const Reader mr{*m, "mitigation", {"file", "f_g", "f_e", "a0", "a1", "p_b", "w0"}};
    ReadoutCalibration base;
    if (auto file = mr.string("file")) {
      std::filesystem::path p = *file;
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      try {
        base = load_calibration(p);
      } catch (const ConfigError& e) {
        throw ConfigError("mitigation.file", e.what());
      }
    }
    cfg.calibration = read_calibration_table(mr, base);
  }

  const auto* scen = r.array("scenario");
  if (!scen || scen->empty()) throw ConfigError("scenario", "no scenarios configured");
  std::set<std::string> labels;
  for (std::size_t i = 0; i < scen->size(); ++i) {
    const std::string path = join("scenario", i);
    auto spec = read_scenario(table_at(*scen, i, "scenario"), path, cfg, integ, wig, i);
    if (!labels.insert(spec.label).second) throw ConfigError(path + ".label", "duplicate label '" + spec.label + "'");
    cfg.scenarios.push_back(std::move(spec));
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, std::span<const std::string> overrides) {
  return parse_config(read_file(path), overrides, path.string(), path.parent_path());
}

ReadoutCalibration parse_calibration(std::string_view text, const std::string& source) {
  const toml::table root = parse_toml(text, source);
  const Reader r{root, "", {"f_g", "f_e", "a0", "a1", "p_b", "w0"}};
  return read_calibration_table(r, {});
}

ReadoutCalibration load_calibration(const std::filesystem::path& path) {
  return parse_calibration(read_file(path), path.string());
}

}  // namespace fockstab
