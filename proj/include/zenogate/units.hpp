// Copyright 2026 The zenogate Authors
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

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zenogate {

/// Everything in the library is dimensionless: frequencies in units of g,
/// times in units of 1/g. This helper maps to physical units once g is
/// given as an ordinary frequency in MHz (g = 2*pi * g_mhz * 1e6 rad/s).
struct PhysicalUnits {
  double g_mhz;

  explicit PhysicalUnits(double g_mhz_) : g_mhz(g_mhz_) {
    if (!(g_mhz > 0)) throw std::invalid_argument("PhysicalUnits: g must be positive");
  }

  double g_rad_per_s() const { return 2.0 * std::numbers::pi * g_mhz * 1e6; }

  double time_ns(double gt) const { return gt / g_rad_per_s() * 1e9; }

  /// Dimensionless rate (units of g) for a channel with lifetime t_us.
  double rate_from_lifetime_us(double t_us) const {
    if (!(t_us > 0)) throw std::invalid_argument("rate_from_lifetime_us: lifetime must be positive");
    return 1.0 / (g_rad_per_s() * t_us * 1e-6);
  }
};

}  // namespace zenogate
