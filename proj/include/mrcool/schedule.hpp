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

#include <cstdint>
#include <string_view>
#include <vector>

namespace mrcool {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: draw i of stream `key` is mix64(key + (i+1) * golden).
/// Any draw can be regenerated from (key, i) alone.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t at(std::uint64_t index) const {
    return mix64(key_ + (index + 1) * 0x9e3779b97f4a7c15ULL);
  }
  std::uint64_t next() { return at(counter_++); }
  /// Uniform on the open interval (0, 1).
  double uniform_open() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Independent stream key for sub-task `index` of a run seeded with `master`.
constexpr std::uint64_t stream_key(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master ^ 0x6a09e667f3bcc909ULL) + index * 0xd1b54a32d192ed03ULL);
}

enum class ScheduleKind { etim, utim };

std::string_view to_string(ScheduleKind kind);

/// Measurement j (1-based) happens at t_j = j tau + jitter[j-1].
struct MeasurementSchedule {
  ScheduleKind kind = ScheduleKind::etim;
  double tau = 0.0;
  int count = 0;
  std::vector<double> jitter;
  std::uint64_t seed = 0;

  /// tau_j = tau + dt_j - dt_{j-1}, dt_0 = 0, for j = 1..count.
  std::vector<double> intervals() const;
  /// Measurement instants t_j, j = 1..count.
  std::vector<double> times() const;
};

/// UTIM jitter is uniform on (-tau/2, tau/2), independent per measurement,
/// drawn from CounterRng(seed). ETIM ignores the seed.
MeasurementSchedule generate_schedule(ScheduleKind kind, double tau, int count,
                                      std::uint64_t seed);

}  // namespace mrcool
