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

#include "mrcool/thermal.hpp"

#include <cmath>
#include <sstream>

#include "mrcool/errors.hpp"

namespace mrcool {

double thermal_occupation(Kelvin temperature, AngularFrequency frequency) {
  if (!(temperature.value >= 0.0)) throw DomainError("temperature must be non-negative");
  if (!(frequency.value > 0.0)) throw DomainError("frequency must be positive");
  if (temperature.value == 0.0) return 0.0;
  const double x = kHbar * frequency.value / (kBoltzmann * temperature.value);
  return 1.0 / std::expm1(x);
}

int minimal_n_max(double nbar, double tail_tolerance) {
  if (!(nbar >= 0.0)) throw DomainError("nbar must be non-negative");
  if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0)) {
    throw DomainError("tail tolerance must lie in (0, 1)");
  }
  if (nbar == 0.0) return 0;
  // tail(N) = q^(N+1) with q = nbar / (1 + nbar)
  const double log_q = std::log(nbar) - std::log1p(nbar);
  int n = static_cast<int>(std::floor(std::log(tail_tolerance) / log_q)) - 2;
  if (n < 0) n = 0;
  while ((n + 1) * log_q >= std::log(tail_tolerance)) ++n;
  return n;
}

DensityMatrix thermal_density_matrix(double nbar, const TruncationPolicy& policy) {
  if (!(nbar >= 0.0)) throw DomainError("nbar must be non-negative");
  const int needed = minimal_n_max(nbar, policy.tail_tolerance);
  if (policy.n_max < needed) {
    std::ostringstream msg;
    msg << "n_max = " << policy.n_max << " leaves a thermal tail above "
        << policy.tail_tolerance << " for nbar = " << nbar << "; need n_max >= " << needed;
    throw TruncationError(msg.str(), needed);
  }
  Eigen::VectorXd p(policy.n_max + 1);
  const double q = nbar / (1.0 + nbar);
  double pn = 1.0 / (1.0 + nbar);
  for (int n = 0; n <= policy.n_max; ++n) {
    p(n) = pn;
    pn *= q;
  }
  return diagonal_state(p);
}

}  // namespace mrcool
