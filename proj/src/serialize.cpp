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

#include "ghzsimplex/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "ghzsimplex/error.hpp"

namespace ghz {

std::string format_float(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
    return buf;
}

std::string cells_to_csv(const std::vector<ScanCell>& cells) {
    std::string out = kScanCsvHeader;
    out += '\n';
    for (const auto& c : cells) {
        out += format_float(c.alpha) + ',' + format_float(c.beta) + ',' + format_float(c.min_eig) + ',' +
               format_float(c.min_pt_eig) + ',' + format_float(c.q0) + ',' + cell_class_name(c.cls) + '\n';
    }
    return out;
}

namespace {

double number_or_nan(const nlohmann::json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

nlohmann::json number_or_null(double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); }

} // namespace

nlohmann::json to_json(const ScanCell& c) {
    return {{"alpha", number_or_null(c.alpha)},
            {"beta", number_or_null(c.beta)},
            {"min_eig", number_or_null(c.min_eig)},
            {"min_pt_eig", number_or_null(c.min_pt_eig)},
            {"q0", number_or_null(c.q0)},
            {"class", cell_class_name(c.cls)}};
}

ScanCell scan_cell_from_json(const nlohmann::json& j) {
    try {
        ScanCell c;
        c.alpha = number_or_nan(j.at("alpha"));
        c.beta = number_or_nan(j.at("beta"));
        c.min_eig = number_or_nan(j.at("min_eig"));
        c.min_pt_eig = number_or_nan(j.at("min_pt_eig"));
        c.q0 = number_or_nan(j.at("q0"));
        c.cls = parse_cell_class(j.at("class").get<std::string>());
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed scan cell: ") + e.what());
    }
}

nlohmann::json cells_to_json(const std::vector<ScanCell>& cells) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : cells) out.push_back(to_json(c));
    return out;
}

std::vector<ScanCell> cells_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw Error(ErrorCode::InvalidArgument, "scan cells must be a JSON array");
    std::vector<ScanCell> out;
    for (const auto& e : j) out.push_back(scan_cell_from_json(e));
    return out;
}

} // namespace ghz
