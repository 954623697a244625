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

// Times one Lindblad right-hand side per kernel variant at the sizes the
// scenarios use.

#include <chrono>
#include <cstdio>

#include "fockstab/kernels.hpp"
#include "fockstab/lindblad.hpp"

using namespace fockstab;

int main() {
  const auto params = SystemParams::device_defaults();
  for (std::size_t n : {1u, 2u, 3u}) {
    std::vector<Tone> tones;
    for (std::size_t i = 0; i < n; ++i) tones.push_back({i, AngularRate::from_khz(86), AngularRate::from_khz(400), {}});
    const DriveComb comb = DriveComb::addition(tones, true);
    const auto layout = default_layout(comb);
    const auto h = build_drive(comb, params, layout);
    const auto ops = collapse_ops(params, layout);
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
    psi(0) = 1.0;
    const auto rho0 = DensityMatrix::from_ket(layout, psi);
    EvolveOptions o;
    o.t1_us = 2.0;
    o.check_positivity = false;
    for (auto isa : kernels::available_isas()) {
      kernels::set_active(isa);
      const auto t0 = std::chrono::steady_clock::now();
      const auto r = evolve(rho0, h, ops, o);
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::printf("dim %3zu  %-6s  %8zu steps  %8.3f us/step\n", layout.total_dim(),
                  std::string(kernels::isa_name(isa)).c_str(), r.diagnostics.steps,
                  1e6 * s / static_cast<double>(r.diagnostics.steps));
    }
  }
  return 0;
}
