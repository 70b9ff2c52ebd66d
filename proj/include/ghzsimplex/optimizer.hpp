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
#include <span>
#include <vector>

namespace ghz {

/// One coordinate of the search box. Periodic coordinates wrap, the others clip.
struct BoxDimension {
    double lo = 0.0;
    double hi = 1.0;
    bool periodic = false;
};

struct SearchOptions {
    int restarts = 8;
    std::uint64_t seed = 0;
    int max_evaluations = 200; // per restart
    double tolerance = 1e-10;  // smallest bracket half-width
    int threads = 1;
};

struct SearchResult {
    std::vector<double> x;
    double value = 0.0;
    int restart = 0;
    long long evaluations = 0; // summed over restarts
};

using Objective = std::function<double(std::span<const double>)>;

/// Coordinate-cycling golden-section maximisation with seeded random restarts.
/// Restart 0 starts from `start`; the others start from uniform draws. The
/// result is the best point seen, ties resolved by the lowest restart index.
SearchResult maximize_box(const Objective& f, std::span<const BoxDimension> box, std::span<const double> start,
                          const SearchOptions& options);

} // namespace ghz
