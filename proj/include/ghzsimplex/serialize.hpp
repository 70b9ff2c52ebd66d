// Copyright 2026 The ghzsimplex Authors
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

#include <string>
#include <vector>

#include <json.hpp>

#include "ghzsimplex/scanner.hpp"

namespace ghz {

inline constexpr const char* kScanCsvHeader = "alpha,beta,min_eig,min_pt_eig,q0,class";

/// Shortest round-trip free formatting used for every CSV float (%.12g).
std::string format_float(double v);

std::string cells_to_csv(const std::vector<ScanCell>& cells);
nlohmann::json to_json(const ScanCell& cell);
ScanCell scan_cell_from_json(const nlohmann::json& j);
nlohmann::json cells_to_json(const std::vector<ScanCell>& cells);
std::vector<ScanCell> cells_from_json(const nlohmann::json& j);

} // namespace ghz
