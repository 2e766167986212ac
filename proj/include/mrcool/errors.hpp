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

#include <stdexcept>
#include <string>

namespace mrcool {

/// Invalid argument to a numerical kernel (negative temperature, wrong space, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Fock-space truncation too small for the requested tail tolerance.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, int minimal_n_max)
      : std::runtime_error(what), minimal_n_max_(minimal_n_max) {}
  int minimal_n_max() const noexcept { return minimal_n_max_; }

 private:
  int minimal_n_max_;
};

/// Rejected integrator or experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integration produced an unphysical state (positivity lost, NaN, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mrcool
