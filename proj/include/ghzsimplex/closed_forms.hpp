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

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghzsimplex/weyl.hpp"

namespace ghz {

struct ThresholdReport {
    int n = 3;
    int d = 2;
    double positivity_lo = 0.0;
    double positivity_hi = 1.0;
    double ppt_boundary = 0.0; // single-party cut of the noisy GHZ state
    double gme_boundary = 0.0; // root of q0_noise
};

nlohmann::json to_json(const ThresholdReport& r);

ThresholdReport noise_thresholds(int n, int d);

/// 2(|alpha|/d - (2^(n-1)-1)(1-alpha)/d^n).
double q0_noise(int n, int d, double alpha);

enum class PairType { I, II, III, Unclassified };

const char* pair_type_name(PairType t);

/// Type of the pair {(0,0,0), label} for three parties.
PairType classify_pair(int d, const GhzLabel& label);

/// Representative label of each type used by the oracle suites.
GhzLabel representative_label(int d, PairType type);

/// Every eigenvalue expression of the partially transposed pair state that
/// matches the numerics (minimum over the three single-party cuts).
std::vector<double> pt_expressions_pair(int d, PairType type, double alpha, double beta);

/// Minimum of pt_expressions_pair; the pair state is PPT iff this is >= 0.
double pt_conditions_pair(int d, PairType type, double alpha, double beta);

/// The condition lists exactly as published, kept for comparison.
std::vector<double> printed_pt_expressions(int d, PairType type, double alpha, double beta);

/// Closed-form Q0 of the pair state. Arguments with beta > alpha are swapped.
double q0_pair(int d, PairType type, double alpha, double beta);

/// Eigenvalues of the facet ray, ascending.
std::vector<double> facet_eigs(double alpha, double mu);

} // namespace ghz
