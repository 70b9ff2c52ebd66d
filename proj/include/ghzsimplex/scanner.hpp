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

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghzsimplex/mixtures.hpp"

namespace ghz {

enum class CellClass { Invalid, Ppt, NptUndetected, GmeDetected };

const char* cell_class_name(CellClass c);
CellClass parse_cell_class(const std::string& name);

struct ScanCell {
    double alpha = 0.0;
    double beta = 0.0; // mu for the facet family
    double min_eig = 0.0;
    double min_pt_eig = 0.0;
    double q0 = 0.0;
    CellClass cls = CellClass::Invalid;

    friend bool operator==(const ScanCell&, const ScanCell&) = default;
};

inline constexpr double kScanTolerance = 1e-9;

/// invalid, then gme_detected, then ppt, then npt_undetected.
CellClass classify_cell(double min_eig, double min_pt_eig, double q0, double tol = kScanTolerance);

enum class Q0Source {
    Auto,       // closed form where one exists, aligned frames otherwise
    ClosedForm, // fails for families without one
    Aligned,    // best q_ghz over the aligned chi of every component state
    Optimizer,  // optimize_criterion on every physical cell
};

const char* q0_source_name(Q0Source s);
Q0Source parse_q0_source(const std::string& name);

struct ScanConfig {
    FamilyKind family = FamilyKind::Pair;
    int n = 3;
    int d = 2;
    std::vector<int> label; // (s..., k, l); empty selects the family default
    int resolution_alpha = 201;
    int resolution_beta = 201;
    double alpha_lo = 0.0;
    double alpha_hi = 1.0;
    double beta_lo = 0.0;
    double beta_hi = 1.0;
    Q0Source q0_source = Q0Source::Auto;
    int restarts = 8;
    std::uint64_t seed = 0;
    int max_evaluations = 0;
    int threads = 1;
    std::string output;

    friend bool operator==(const ScanConfig&, const ScanConfig&) = default;
};

nlohmann::json to_json(const ScanConfig& c);
ScanConfig scan_config_from_json(const nlohmann::json& j);
void validate(const ScanConfig& c);

/// Row-major in (alpha, beta): alpha is the outer index.
std::vector<ScanCell> scan(const ScanConfig& config);

/// Bisection root of f on [lo, hi]; requires f(lo) f(hi) <= 0.
double find_threshold(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12);

struct GeometryEntry {
    ScanConfig config;
    std::size_t cells = 0;
    std::size_t physical = 0;
    double ppt_fraction = 0.0; // fractions of the physical cells
    double npt_undetected_fraction = 0.0;
    double gme_fraction = 0.0;
};

nlohmann::json to_json(const GeometryEntry& e);

std::vector<GeometryEntry> compare_geometries(const std::vector<ScanConfig>& configs);
GeometryEntry summarize(const ScanConfig& config, const std::vector<ScanCell>& cells);

} // namespace ghz
