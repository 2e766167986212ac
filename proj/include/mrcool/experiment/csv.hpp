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

// RFC 4180 style CSV (CRLF line ends, quoting only where needed).
//
// Series files:  N,t,nbar,survival,fidelity,mode
// Sweep files:   <axis>[,<axis>],N,t,nbar,survival,fidelity,mode
// Sweep means:   N,t,nbar,survival,fidelity,mode,nbar_std,samples
//
// t is in units of 1/omega_m; N = 0 is the initial state.

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mrcool/protocol.hpp"

namespace mrcool::experiment {

inline constexpr std::string_view kSeriesColumns = "N,t,nbar,survival,fidelity,mode";

std::string csv_field(std::string_view text);

class CsvWriter {
 public:
  void row(const std::vector<std::string>& fields);
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

/// Fields N..mode of step `n` of a record.
std::vector<std::string> series_fields(const CoolingRecord& record, int n);

std::string series_csv(const CoolingRecord& record);

/// Parses a file produced by series_csv back into columns (tests and tools).
struct SeriesTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
SeriesTable parse_csv(const std::string& text);

}  // namespace mrcool::experiment
