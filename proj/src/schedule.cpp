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

#include "mrcool/schedule.hpp"

#include "mrcool/errors.hpp"

namespace mrcool {

std::string_view to_string(ScheduleKind kind) {
  return kind == ScheduleKind::etim ? "etim" : "utim";
}

std::vector<double> MeasurementSchedule::intervals() const {
  std::vector<double> out(count);
  double previous = 0.0;
  for (int j = 0; j < count; ++j) {
    out[j] = tau + jitter[j] - previous;
    previous = jitter[j];
  }
  return out;
}

std::vector<double> MeasurementSchedule::times() const {
  std::vector<double> out(count);
  for (int j = 0; j < count; ++j) out[j] = (j + 1) * tau + jitter[j];
  return out;
}

MeasurementSchedule generate_schedule(ScheduleKind kind, double tau, int count,
                                      std::uint64_t seed) {
  if (!(tau > 0.0)) throw DomainError("schedule: tau must be positive");
  if (count < 1) throw DomainError("schedule: count must be at least 1");
  MeasurementSchedule s;
  s.kind = kind;
  s.tau = tau;
  s.count = count;
  s.seed = seed;
  s.jitter.assign(count, 0.0);
  if (kind == ScheduleKind::utim) {
    CounterRng rng(seed);
    for (auto& dt : s.jitter) dt = (rng.uniform_open() - 0.5) * tau;
  }
  return s;
}

}  // namespace mrcool
