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
#include <utility>
#include <vector>

#include "ghzsimplex/tensor.hpp"
#include "ghzsimplex/weyl.hpp"

namespace ghz {

/// Weights on basis labels; labels not listed carry weight 0.
struct SimplexMixture {
    SystemShape shape;
    std::vector<std::pair<GhzLabel, double>> weights;
};

DensityOperator simplex_state(const SimplexMixture& m, double tol = 1e-12);

/// (1-alpha)/d^n 1 + alpha |Phi(label)><Phi(label)|.
DensityOperator sigma_noise(const GhzLabel& label, double alpha);

/// (1-alpha-beta)/d^3 1 + alpha rho(0,0,0) + beta rho(s,k,l), three parties.
DensityOperator sigma_pair(int d, const GhzLabel& label, double alpha, double beta);

enum class SquareWeighting {
    TotalWeight, // beta is shared equally by the d^2-1 square states
    PerState,    // every square state carries beta; noise weight shrinks to keep trace 1
};

/// White noise plus the all-zero state plus the remaining states of its square.
DensityOperator tau_square(const SystemShape& shape, double alpha, double beta,
                           SquareWeighting weighting = SquareWeighting::TotalWeight);

/// Example ray through the GHZ1+/GHZ1- facet (three qubits).
DensityOperator facet_ray(double alpha, double mu);

enum class FamilyKind { Noise, Pair, Square, Facet };

const char* family_name(FamilyKind f);
std::optional<FamilyKind> parse_family(const std::string& name);

struct FamilyPoint {
    FamilyKind family = FamilyKind::Noise;
    int n = 3;
    int d = 2;
    std::vector<std::vector<int>> labels; // label digits (s..., k, l)
    double alpha = 0.0;
    double beta = 0.0;
    double mu = 0.0;

    friend bool operator==(const FamilyPoint&, const FamilyPoint&) = default;
};

DensityOperator build_family_state(const FamilyPoint& p);

/// Labels of the basis states mixed into the family.
std::vector<GhzLabel> component_labels(const FamilyPoint& p);

} // namespace ghz
