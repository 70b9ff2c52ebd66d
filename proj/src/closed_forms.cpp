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

#include "ghzsimplex/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "ghzsimplex/error.hpp"

namespace ghz {

namespace {

double ipow(int base, int exp) {
    double r = 1.0;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

void require_pair_dim(int d) {
    if (d != 2 && d != 3) throw Error(ErrorCode::Unsupported, "closed forms cover d = 2 and d = 3 only");
}

[[noreturn]] void unsupported(int d, PairType t) {
    throw Error(ErrorCode::Unsupported,
                std::string("no closed form for d=") + std::to_string(d) + ", type " + pair_type_name(t));
}

} // namespace

nlohmann::json to_json(const ThresholdReport& r) {
    return {{"n", r.n},
            {"d", r.d},
            {"positivity", {r.positivity_lo, r.positivity_hi}},
            {"ppt_boundary", r.ppt_boundary},
            {"gme_boundary", r.gme_boundary}};
}

ThresholdReport noise_thresholds(int n, int d) {
    if (n < 2 || d < 2) throw Error(ErrorCode::InvalidArgument, "noise_thresholds needs n >= 2, d >= 2");
    ThresholdReport r;
    r.n = n;
    r.d = d;
    const double dn = ipow(d, n);
    r.positivity_lo = -1.0 / (dn - 1.0);
    r.positivity_hi = 1.0;
    r.ppt_boundary = 1.0 / (ipow(d, n - 1) + 1.0);
    const double c = ipow(2, n - 1) - 1.0;
    r.gme_boundary = c / (ipow(d, n - 1) + c);
    return r;
}

double q0_noise(int n, int d, double alpha) {
    const double c = ipow(2, n - 1) - 1.0;
    return 2.0 * (std::abs(alpha) / d - c * (1.0 - alpha) / ipow(d, n));
}

const char* pair_type_name(PairType t) {
    switch (t) {
    case PairType::I: return "I";
    case PairType::II: return "II";
    case PairType::III: return "III";
    case PairType::Unclassified: return "unclassified";
    }
    return "";
}

PairType classify_pair(int d, const GhzLabel& label) {
    if (label.shape().parties() != 3 || label.shape().local_dim() != d) {
        throw Error(ErrorCode::DimensionMismatch, "classify_pair needs a three-party label of dimension d");
    }
    if (label.is_zero()) throw Error(ErrorCode::InvalidArgument, "classify_pair: label must differ from (0,0,0)");
    const int s = label.s().front();
    const int k = label.k();
    const int l = label.l();
    if (d == 2) return (s == 0 && k == 1 && l == 1) ? PairType::I : PairType::II;
    if (d == 3) {
        if (s == 0 && k == l && k != 0) return PairType::I;
        if (s == ((l - k) % d + d) % d) return PairType::III;
        return PairType::II;
    }
    return PairType::Unclassified;
}

GhzLabel representative_label(int d, PairType type) {
    require_pair_dim(d);
    const SystemShape shape = SystemShape::make(3, d);
    switch (type) {
    case PairType::I: return GhzLabel::make(shape, {0}, 1, 1);
    case PairType::II: return d == 2 ? GhzLabel::make(shape, {1}, 0, 1) : GhzLabel::make(shape, {1}, 1, 0);
    case PairType::III:
        if (d == 3) return GhzLabel::make(shape, {1}, 0, 1);
        break;
    case PairType::Unclassified: break;
    }
    unsupported(d, type);
}

std::vector<double> printed_pt_expressions(int d, PairType type, double a, double b) {
    require_pair_dim(d);
    if (d == 2) {
        if (type == PairType::I) return {(1 - a - 5 * b) / 8, (1 - 5 * a - b) / 8, (1 + 3 * a - b) / 8, (1 - a + 3 * b) / 8};
        if (type == PairType::II) return {(1 - a - b) / 8, (1 + 3 * a - 5 * b) / 8, (1 - 5 * a + 3 * b) / 8, (1 + 3 * a + 3 * b) / 8};
        unsupported(d, type);
    }
    const double d2 = 9.0;
    const double d3 = 27.0;
    const double root = d2 * std::sqrt(a * a - a * b + b * b);
    switch (type) {
    case PairType::I:
        return {(1 - a - b) / d3, (1 + (d2 - 1) * a + (d2 - 1) * b) / d3, (1 - a - b + root) / d3,
                (1 - a - b - root) / d3};
    case PairType::II:
        return {(1 - a - b) / d3,
                (1 - (d2 + 1) * a - b) / d3,
                (1 - a - (d2 + 1) * b) / d3,
                (1 + (d2 - 1) * a - b) / d3,
                (1 - a + (d2 - 1) * b) / d3,
                (1 + (d2 - 1) * a + (d2 - 1) * b) / d3,
                (1 - a - b + root) / d3,
                (1 - a - b - root) / d3};
    case PairType::III:
        return {(1 - a - b) / d3, (1 - (d2 + 1) * a - b) / d2, (1 - a - (d2 + 1) * b) / d3,
                (1 + (d2 - 1) * a - b) / d3, (1 - a + (d2 - 1) * b) / d3};
    case PairType::Unclassified: break;
    }
    unsupported(d, type);
}

std::vector<double> pt_expressions_pair(int d, PairType type, double a, double b) {
    require_pair_dim(d);
    if (d == 2) {
        // The published lists are attached to the opposite label classes.
        const auto one_cut = printed_pt_expressions(2, PairType::II, a, b);
        if (type == PairType::I) return one_cut;
        if (type == PairType::II) {
            auto out = printed_pt_expressions(2, PairType::I, a, b);
            out.insert(out.end(), one_cut.begin(), one_cut.end());
            return out;
        }
        unsupported(d, type);
    }
    auto out = printed_pt_expressions(3, type, a, b);
    if (type == PairType::III) out[1] = (1 - 10 * a - b) / 27.0;
    return out;
}

double pt_conditions_pair(int d, PairType type, double alpha, double beta) {
    const auto e = pt_expressions_pair(d, type, alpha, beta);
    return *std::min_element(e.begin(), e.end());
}

double q0_pair(int d, PairType type, double alpha, double beta) {
    require_pair_dim(d);
    if (beta > alpha) std::swap(alpha, beta);
    const double dd = d;
    const double noise = (1.0 - alpha - beta) / (dd * dd * dd);
    if (d == 2) {
        if (type == PairType::I) return 2.0 * (std::abs(alpha - beta) / dd - 3.0 * noise);
        if (type == PairType::II) return 2.0 * (std::abs(alpha) / dd - 2.0 * noise - (noise + beta / dd));
        unsupported(d, type);
    }
    switch (type) {
    case PairType::I: {
        const std::complex<double> omega = std::polar(1.0, std::numbers::pi / 3.0);
        return 2.0 * (std::abs(alpha - (1.0 - omega) * beta) / dd - 3.0 * noise);
    }
    case PairType::II:
        return 2.0 * (std::abs(alpha) / dd - 2.0 * noise -
                      std::sqrt(std::abs(noise * (1.0 - alpha + (dd * dd - 1.0) * beta) / (dd * dd * dd))));
    case PairType::III: return 2.0 * (std::abs(alpha) / dd - 3.0 * noise);
    case PairType::Unclassified: break;
    }
    unsupported(d, type);
}

std::vector<double> facet_eigs(double alpha, double mu) {
    std::vector<double> out(6, (1.0 - mu) / 8.0);
    out.push_back((1.0 + 7.0 * mu - 8.0 * alpha * mu) / 8.0);
    out.push_back((1.0 - mu + 8.0 * alpha * mu) / 8.0);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace ghz
