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

#include "fockstab/bundle.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "fockstab/errors.hpp"

namespace fockstab {

using nlohmann::json;

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256: digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

void write_atomically(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

BundleWriter::BundleWriter(std::filesystem::path root) : root_(std::move(root)) {
  std::filesystem::create_directories(root_);
}

WrittenFile BundleWriter::write(const std::string& relative, std::string_view content) {
  write_atomically(root_ / relative, content);
  files_.push_back({relative, sha256_hex(content), content.size()});
  return files_.back();
}

// --- CSV ---------------------------------------------------------------------

std::string populations_csv(const PopulationTrace& trace) {
  std::ostringstream os;
  const auto d = trace.populations.cols();
  os << "t_us";
  for (Eigen::Index i = 0; i < d; ++i) os << ",p" << i;
  os << ",pe_qubit\n";
  for (std::size_t k = 0; k < trace.times_us.size(); ++k) {
    os << format_double(trace.times_us[k]);
    for (Eigen::Index i = 0; i < d; ++i) os << ',' << format_double(trace.populations(static_cast<Eigen::Index>(k), i));
    os << ',' << (trace.qubit_excited.empty() ? std::string("nan") : format_double(trace.qubit_excited[k])) << '\n';
  }
  return os.str();
}

std::string wigner_csv(const WignerGrid& grid) {
  std::ostringstream os;
  os << "re_alpha,im_alpha,w\n";
  for (std::size_t i = 0; i < grid.axis.size(); ++i)
    for (std::size_t j = 0; j < grid.axis.size(); ++j)
      os << format_double(grid.axis[i]) << ',' << format_double(grid.axis[j]) << ','
         << format_double(grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) << '\n';
  return os.str();
}

std::string tau_table_csv(const RateAnalyticsResult& r) {
  std::ostringstream os;
  os << "operation";
  for (Eigen::Index n = 1; n <= r.tau_us.cols(); ++n) os << ",tau_n" << n << "_us";
  os << '\n';
  for (Eigen::Index k = 0; k < r.tau_us.rows(); ++k) {
    os << r.row_labels[static_cast<std::size_t>(k)];
    for (Eigen::Index c = 0; c < r.tau_us.cols(); ++c) {
      const double v = r.tau_us(k, c);
      os << ',' << (std::isnan(v) ? std::string("-") : format_double(v));
    }
    os << '\n';
  }
  return os.str();
}

std::string rates_csv(const RateAnalyticsResult& r) {
  std::size_t width = 0;
  for (const auto& row : r.rows) width = std::max(width, row.lambdas_khz.size());
  std::ostringstream os;
  os << "config,target";
  for (std::size_t i = 0; i < width; ++i) os << ",lambda" << i << "_khz";
  os << ",fidelity\n";
  for (const auto& row : r.rows) {
    os << row.label << ',' << row.target;
    for (std::size_t i = 0; i < width; ++i)
      os << ',' << (i < row.lambdas_khz.size() ? format_double(row.lambdas_khz[i]) : std::string("-"));
    os << ',' << format_double(row.fidelity) << '\n';
  }
  return os.str();
}

// --- JSON --------------------------------------------------------------------

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json vec(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

json diagnostics(const std::optional<EvolutionDiagnostics>& d) {
  if (!d) return json::object();
  return {{"dt_us", d->dt_us},
          {"steps", d->steps},
          {"max_trace_drift", num(d->max_trace_drift)},
          {"min_eigenvalue_floor", num(d->min_eigenvalue_floor)},
          {"max_top_level_occupancy", num(d->max_top_level_occupancy)},
          {"stopped_stationary", d->stopped_stationary},
          {"kernel", d->kernel}};
}

json spec_json(const ScenarioSpec& s) {
  json tones = json::array();
  for (const auto& t : s.comb.sorted_tones())
    tones.push_back({{"level", t.level},
                     {"omega_khz", t.omega_rabi.khz()},
                     {"j_khz", t.j_rate.khz()},
                     {"detuning_khz", t.residual_detuning.khz()}});
  return {{"label", s.label},
          {"kind", to_string(s.kind)},
          {"model", to_string(s.model)},
          {"initial", s.initial.describe()},
          {"duration_us", s.duration_us},
          {"sample_every_us", s.sample_every_us},
          {"dt_us", s.dt_us},
          {"cavity_dim", s.cavity_dim},
          {"comb", {{"kind", s.comb.kind == CombKind::Addition ? "addition" : "subtraction"}, {"tones", tones}}}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string scenario_dir(const ScenarioSpec& s) { return s.label + "/"; }

}  // namespace

std::string state_json(const DensityMatrix& rho, const std::string& label,
                       const std::optional<ReadoutCalibration>& calibration) {
  const auto n = static_cast<Eigen::Index>(rho.dim());
  json re = json::array(), im = json::array();
  for (Eigen::Index r = 0; r < n; ++r) {
    json rr = json::array(), ii = json::array();
    for (Eigen::Index c = 0; c < n; ++c) {
      rr.push_back(rho.data()(r, c).real());
      ii.push_back(rho.data()(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  json j = {{"format", "fockstab.cavity_state/1"}, {"label", label}, {"dim", rho.dim()}, {"re", re}, {"im", im}};
  if (calibration) j["calibration_w0"] = calibration->w0;
  return dump(j);
}

StateSnapshot parse_state_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("state snapshot is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("format", "") != "fockstab.cavity_state/1")
    throw DomainError("state snapshot has an unknown format");
  try {
    const auto dim = j.at("dim").get<std::size_t>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (dim == 0 || re.size() != dim || im.size() != dim) throw DomainError("state snapshot has inconsistent shape");
    const auto n = static_cast<Eigen::Index>(dim);
    Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      if (re[r].size() != dim || im[r].size() != dim) throw DomainError("state snapshot has inconsistent shape");
      for (Eigen::Index c = 0; c < n; ++c) m(r, c) = cplx{re[r][c].get<double>(), im[r][c].get<double>()};
    }
    StateSnapshot s;
    s.state = DensityMatrix::from_matrix(SpaceLayout::single(dim), std::move(m));
    s.label = j.value("label", "");
    if (j.contains("calibration_w0")) s.w0 = j["calibration_w0"].get<double>();
    return s;
  } catch (const json::exception& e) {
    throw DomainError(std::string("state snapshot is malformed: ") + e.what());
  }
}

std::vector<WrittenFile> write_scenario_bundle(BundleWriter& w, const ScenarioSpec& spec, const ScenarioOutput& output) {
  const std::size_t before = w.files().size();
  const std::string dir = scenario_dir(spec);
  json summary = {{"spec", spec_json(spec)}};

  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, StabilizeResult>) {
          w.write(dir + "populations.csv", populations_csv(r.trace));
          summary["result"] = {{"target", r.target},
                               {"saturation_pn", num(r.saturation_pn)},
                               {"steady_pn", num(r.steady_pn)},
                               {"rate_model_pn", num(r.rate_model_pn)},
                               {"steady_populations", vec(r.steady_populations)},
                               {"lambdas_khz", vec(r.lambdas_khz)},
                               {"diagnostics", diagnostics(r.diagnostics)},
                               {"warnings", r.warnings}};
          if (r.final_cavity_state) w.write(dir + "state.json", state_json(*r.final_cavity_state, spec.label, spec.calibration));
          if (r.final_wigner) {
            w.write(dir + "wigner.csv", wigner_csv(*r.final_wigner));
            summary["result"]["wigner_origin"] = num(r.final_wigner->values(static_cast<Eigen::Index>(r.final_wigner->axis.size() / 2),
                                                                            static_cast<Eigen::Index>(r.final_wigner->axis.size() / 2)));
          }
        } else if constexpr (std::is_same_v<T, ProtectResult>) {
          w.write(dir + "populations.csv", populations_csv(r.trace));
          if (r.final_cavity_state) w.write(dir + "state.json", state_json(*r.final_cavity_state, spec.label, spec.calibration));
          summary["result"] = {{"level", r.level},
                               {"fit", {{"tau_us", num(r.fit.tau_us)},
                                        {"amplitude", num(r.fit.amplitude)},
                                        {"normalized_residual", num(r.fit.normalized_residual)},
                                        {"points", r.fit.points},
                                        {"flagged", r.fit.flagged}}},
                               {"eigen_tau_us", num(r.eigen_mode.tau_us)},
                               {"eigen_weight", num(r.eigen_mode.weight)},
                               {"lambdas_khz", vec(r.lambdas_khz)},
                               {"diagnostics", diagnostics(r.diagnostics)},
                               {"warnings", r.warnings}};
        } else if constexpr (std::is_same_v<T, ResetResult>) {
          w.write(dir + "populations.csv", populations_csv(r.trace));
          std::ostringstream fid;
          fid << "t_us,fidelity\n";
          for (std::size_t k = 0; k < r.trace.times_us.size(); ++k)
            fid << format_double(r.trace.times_us[k]) << ',' << format_double(r.fidelity_to_target[k]) << '\n';
          w.write(dir + "fidelity.csv", fid.str());
          w.write(dir + "wigner_initial.csv", wigner_csv(r.initial_wigner));
          w.write(dir + "wigner_final.csv", wigner_csv(r.final_wigner));
          w.write(dir + "state.json", state_json(r.final_cavity_state, spec.label, spec.calibration));
          summary["result"] = {{"rate_model_p2", num(r.rate_model_p2)},
                               {"final_p2", num(r.final_p2)},
                               {"final_fidelity", num(r.final_fidelity)},
                               {"diagnostics", diagnostics(r.diagnostics)},
                               {"warnings", r.warnings}};
        } else if constexpr (std::is_same_v<T, RateAnalyticsResult>) {
          w.write(dir + "tau_table.csv", tau_table_csv(r));
          if (!r.rows.empty()) w.write(dir + "rates.csv", rates_csv(r));
          json rows = json::array();
          for (const auto& row : r.rows)
            rows.push_back({{"label", row.label}, {"target", row.target}, {"lambdas_khz", vec(row.lambdas_khz)},
                            {"fidelity", num(row.fidelity)}});
          json tau = json::object();
          for (Eigen::Index k = 0; k < r.tau_us.rows(); ++k) {
            json cells = json::array();
            for (Eigen::Index c = 0; c < r.tau_us.cols(); ++c) cells.push_back(num(r.tau_us(k, c)));
            tau[r.row_labels[static_cast<std::size_t>(k)]] = cells;
          }
          summary["result"] = {{"configs", rows}, {"tau_us", tau}, {"max_n", r.max_n}};
        } else if constexpr (std::is_same_v<T, WignerSnapshotResult>) {
          w.write(dir + "wigner.csv", wigner_csv(r.grid));
          if (r.normalized) w.write(dir + "wigner_normalized.csv", wigner_csv(*r.normalized));
          w.write(dir + "state.json", state_json(r.cavity_state, spec.label, spec.calibration));
          json res = {{"populations", vec(photon_populations(r.cavity_state))},
                      {"purity", r.cavity_state.purity()},
                      {"truncation_dim", r.grid.truncation_dim},
                      {"warnings", r.grid.warnings}};
          if (r.parity)
            res["parity"] = {{"p_plus", r.parity->p_plus},
                             {"p_minus", r.parity->p_minus},
                             {"contrast", r.parity->contrast},
                             {"gate_time_us", r.parity->gate_time_us}};
          summary["result"] = res;
        }
      },
      output);
  w.write(dir + "summary.json", dump(summary));
  return {w.files().begin() + static_cast<std::ptrdiff_t>(before), w.files().end()};
}

std::string scenario_diagnostics_json(const ScenarioOutput& output) {
  return std::visit(
      [](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, StabilizeResult> || std::is_same_v<T, ProtectResult> ||
                      std::is_same_v<T, ResetResult>)
          return diagnostics(r.diagnostics).dump();
        else
          return "{}";
      },
      output);
}

std::vector<std::string> scenario_warnings(const ScenarioOutput& output) {
  return std::visit(
      [](const auto& r) -> std::vector<std::string> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, RateAnalyticsResult>)
          return {};
        else if constexpr (std::is_same_v<T, WignerSnapshotResult>)
          return r.grid.warnings;
        else
          return r.warnings;
      },
      output);
}

std::string manifest_json(const RunManifest& m) {
  json scen = json::array();
  for (const auto& s : m.scenarios) {
    json files = json::array();
    for (const auto& f : s.files) files.push_back(f.path);
    scen.push_back({{"label", s.label},
                    {"kind", s.kind},
                    {"model", s.model},
                    {"status", s.status},
                    {"error", s.error},
                    {"exit_code", s.exit_code},
                    {"wall_seconds", s.wall_seconds},
                    {"warnings", s.warnings},
                    {"diagnostics", json::parse(s.diagnostics_json.empty() ? "{}" : s.diagnostics_json)},
                    {"files", files}});
  }
  json files = json::array();
  for (const auto& f : m.files) files.push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  json j = {{"tool", "fockstab"},
            {"version", m.tool_version},
            {"config", {{"source", m.config_source}, {"sha256", m.config_sha256}}},
            {"seed", m.seed ? json(*m.seed) : json(nullptr)},
            {"kernel", m.kernel},
            {"workers", m.workers},
            {"created_utc", m.created_utc},
            {"scenarios", scen},
            {"files", files}};
  return dump(j);
}

}  // namespace fockstab
