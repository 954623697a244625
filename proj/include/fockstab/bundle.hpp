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

#pragma once

// Result bundles: plot-ready CSV files, JSON summaries, cavity-state
// snapshots and a checksummed manifest.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fockstab/scenarios.hpp"

namespace fockstab {

std::string sha256_hex(std::string_view data);

/// Shortest round-trip decimal form; "nan" / "inf" / "-inf" for non-finite values.
std::string format_double(double v);

struct WrittenFile {
  std::string path;  // relative to the bundle root, '/' separated
  std::string sha256;
  std::size_t bytes = 0;
};

/// Writes files below a root directory through temp file + rename and keeps
/// a checksum record of each.
class BundleWriter {
 public:
  explicit BundleWriter(std::filesystem::path root);
  const std::filesystem::path& root() const { return root_; }
  WrittenFile write(const std::string& relative, std::string_view content);
  const std::vector<WrittenFile>& files() const { return files_; }

 private:
  std::filesystem::path root_;
  std::vector<WrittenFile> files_;
};

void write_atomically(const std::filesystem::path& path, std::string_view content);

/// Columns t_us, p0 .. p{d-1}, pe_qubit ("nan" when the model has no qubit).
std::string populations_csv(const PopulationTrace& trace);
/// Long form: re_alpha, im_alpha, w.
std::string wigner_csv(const WignerGrid& grid);
/// Cavity density matrix snapshot read back by `fockstab wigner`.
std::string state_json(const DensityMatrix& cavity_state, const std::string& label,
                       const std::optional<ReadoutCalibration>& calibration);

struct StateSnapshot {
  DensityMatrix state = DensityMatrix::unchecked(SpaceLayout{}, Matrix::Ones(1, 1));
  std::string label;
  std::optional<double> w0;
};
/// Throws DomainError on malformed content.
StateSnapshot parse_state_json(std::string_view text);

/// rate-analytics tables.
std::string tau_table_csv(const RateAnalyticsResult& r);
std::string rates_csv(const RateAnalyticsResult& r);

/// Writes every artifact of one scenario into `<label>/` and returns the
/// summary's diagnostic fields for the manifest.
std::vector<WrittenFile> write_scenario_bundle(BundleWriter& writer, const ScenarioSpec& spec,
                                               const ScenarioOutput& output);

/// Solver diagnostics (serialized JSON object) and warnings of one output.
std::string scenario_diagnostics_json(const ScenarioOutput& output);
std::vector<std::string> scenario_warnings(const ScenarioOutput& output);

struct ScenarioRecord {
  std::string label;
  std::string kind;
  std::string model;
  std::string status;  // "ok" or "error"
  std::string error;
  int exit_code = 0;
  double wall_seconds = 0.0;
  std::vector<std::string> warnings;
  std::string diagnostics_json;  // serialized object, "{}" when absent
  std::vector<WrittenFile> files;
};

struct RunManifest {
  std::string tool_version;
  std::string config_source;
  std::string config_sha256;
  std::optional<std::uint64_t> seed;
  std::string kernel;
  std::size_t workers = 1;
  std::string created_utc;
  std::vector<ScenarioRecord> scenarios;
  std::vector<WrittenFile> files;  // everything in the bundle except the manifest
};

std::string manifest_json(const RunManifest& m);

}  // namespace fockstab
