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

#pragma once

#include <numbers>

#include "mrcool/operators.hpp"

namespace mrcool {

inline constexpr double kHbar = 1.054571817e-34;      // J s
inline constexpr double kBoltzmann = 1.380649e-23;    // J / K

struct Kelvin {
  double value = 0.0;
};

/// Angular frequency in rad/s.
struct AngularFrequency {
  double value = 0.0;
};

inline Kelvin millikelvin(double mk) { return {mk * 1e-3}; }
inline AngularFrequency megahertz(double f_mhz) {
  return {2.0 * std::numbers::pi * f_mhz * 1e6};
}

/// Bose-Einstein occupation 1 / (exp(hbar w / k_B T) - 1); zero at T = 0.
double thermal_occupation(Kelvin temperature, AngularFrequency frequency);

struct TruncationPolicy {
  int n_max = 0;
  double tail_tolerance = 1e-12;
};

/// Smallest n_max whose discarded thermal tail (n/(1+n))^(n_max+1) is below tol.
int minimal_n_max(double nbar, double tail_tolerance = 1e-12);

inline constexpr int kGuardLevels = 20;

/// minimal_n_max plus a guard band for heating during open-system runs.
inline TruncationPolicy auto_truncation(double nbar, double tail_tolerance = 1e-12) {
  return {minimal_n_max(nbar, tail_tolerance) + kGuardLevels, tail_tolerance};
}

/// Geometric populations p_n = nbar^n / (1+nbar)^(n+1), renormalized on 0..n_max.
/// Throws TruncationError (carrying minimal_n_max) when the tail exceeds the tolerance.
DensityMatrix thermal_density_matrix(double nbar, const TruncationPolicy& policy);

}  // namespace mrcool
