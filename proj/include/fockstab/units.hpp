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

#include <numbers>

namespace fockstab {

/// Angular frequency or rate. Stored in rad/us (equivalently 2*pi*MHz), the
/// internal unit of every Hamiltonian and dissipator; time is in us.
/// Factories take cyclic values as quoted in lab tables (nu = omega / 2pi).
class AngularRate {
 public:
  constexpr AngularRate() = default;

  static constexpr AngularRate from_ghz(double nu) { return AngularRate{kTwoPi * nu * 1e3}; }
  static constexpr AngularRate from_mhz(double nu) { return AngularRate{kTwoPi * nu}; }
  static constexpr AngularRate from_khz(double nu) { return AngularRate{kTwoPi * nu * 1e-3}; }
  /// Raw angular value in rad/us.
  static constexpr AngularRate from_rad_per_us(double w) { return AngularRate{w}; }

  constexpr double rad_per_us() const { return value_; }
  constexpr double mhz() const { return value_ / kTwoPi; }
  constexpr double khz() const { return value_ / kTwoPi * 1e3; }

  constexpr AngularRate operator*(double s) const { return AngularRate{value_ * s}; }
  constexpr AngularRate operator+(AngularRate o) const { return AngularRate{value_ + o.value_}; }
  constexpr auto operator<=>(const AngularRate&) const = default;

 private:
  static constexpr double kTwoPi = 2.0 * std::numbers::pi;
  constexpr explicit AngularRate(double w) : value_(w) {}
  double value_ = 0.0;
};

}  // namespace fockstab
