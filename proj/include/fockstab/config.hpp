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

// TOML run configuration: system parameters, dissipation channels, a
// default drive comb, readout calibration and a list of scenarios.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fockstab/mitigation.hpp"
#include "fockstab/scenarios.hpp"

namespace fockstab {

struct RunConfig {
  std::string source;     // file name or "<string>"
  std::string canonical;  // effective configuration after overrides, re-serialized
  std::string sha256;     // of `canonical`
  SystemParams params;
  DissipationChannels channels;
  DriveComb comb;
  std::optional<ReadoutCalibration> calibration;
  std::vector<ScenarioSpec> scenarios;
};

/// Parses and validates a configuration. Overrides have the form
/// `dotted.key.path=value`, with integer segments indexing arrays; a value
/// that is not valid TOML is taken as a bare string. Every schema or
/// physical-invariant violation throws ConfigError carrying the key path.
RunConfig parse_config(std::string_view text, std::span<const std::string> overrides = {},
                       const std::string& source = "<string>",
                       const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path, std::span<const std::string> overrides = {});

/// Standalone calibration file with keys f_g, f_e, a0, a1, p_b, w0.
ReadoutCalibration parse_calibration(std::string_view text, const std::string& source = "<string>");
ReadoutCalibration load_calibration(const std::filesystem::path& path);

}  // namespace fockstab
