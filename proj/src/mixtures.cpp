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

#include "ghzsimplex/mixtures.hpp"

#include <cmath>

#include "ghzsimplex/error.hpp"

namespace ghz {

namespace {

void add_projector(ComplexMatrix& m, const ComplexVector& v, double w) {
    if (w != 0.0) m.noalias() += w * (v * v.adjoint());
}

ComplexMatrix identity_part(const SystemShape& shape, double weight) {
    const auto dim = static_cast<Eigen::Index>(shape.dimension());
    return ComplexMatrix::Identity(dim, dim) * (weight / static_cast<double>(shape.dimension()));
}

GhzLabel label_from_digits(const SystemShape& shape, const std::vector<int>& digits) {
    if (digits.size() != static_cast<std::size_t>(shape.parties())) {
        throw Error(ErrorCode::DimensionMismatch, "label needs " + std::to_string(shape.parties()) + " digits");
    }
    std::vector<int> s(digits.begin(), digits.end() - 2);
    return GhzLabel::make(shape, std::move(s), digits[digits.size() - 2], digits.back());
}

} // namespace

DensityOperator simplex_state(const SimplexMixture& m, double tol) {
    double total = 0.0;
    for (const auto& [label, w] : m.weights) {
        if (!(label.shape() == m.shape)) throw Error(ErrorCode::DimensionMismatch, "mixture label shape mismatch");
        if (!(w >= 0.0)) throw Error(ErrorCode::InvalidArgument, "mixture weights must be non-negative");
        total += w;
    }
    if (std::abs(total - 1.0) > tol) {
        throw Error(ErrorCode::InvalidArgument, "mixture weights sum to " + std::to_string(total) + ", not 1");
    }
    const auto dim = static_cast<Eigen::Index>(m.shape.dimension());
    ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
    const PureState phi = build_phi(m.shape);
    for (const auto& [label, w] : m.weights) {
        add_projector(rho, apply_local(label_local_ops(label), m.shape, phi.amplitudes()), w);
    }
    return DensityOperator::make(m.shape, std::move(rho));
}

DensityOperator sigma_noise(const GhzLabel& label, double alpha) {
    ComplexMatrix rho = identity_part(label.shape(), 1.0 - alpha);
    add_projector(rho, ghz_state(label).amplitudes(), alpha);
    return DensityOperator::make(label.shape(), std::move(rho));
}

DensityOperator sigma_pair(int d, const GhzLabel& label, double alpha, double beta) {
    const SystemShape shape = SystemShape::make(3, d);
    if (!(label.shape() == shape)) throw Error(ErrorCode::DimensionMismatch, "sigma_pair needs a three-party label");
    if (label.is_zero()) throw Error(ErrorCode::InvalidArgument, "sigma_pair: second label must differ from (0,0,0)");
    ComplexMatrix rho = identity_part(shape, 1.0 - alpha - beta);
    add_projector(rho, build_phi(shape).amplitudes(), alpha);
    add_projector(rho, ghz_state(label).amplitudes(), beta);
    return DensityOperator::make(shape, std::move(rho));
}

DensityOperator tau_square(const SystemShape& shape, double alpha, double beta, SquareWeighting weighting) {
    const int d = shape.local_dim();
    const int others = d * d - 1;
    const double per_state = weighting == SquareWeighting::TotalWeight ? beta / others : beta;
    const double noise = 1.0 - alpha - per_state * others;
    ComplexMatrix rho = identity_part(shape, noise);
    const PureState phi = build_phi(shape);
    add_projector(rho, phi.amplitudes(), alpha);
    const std::vector<int> s(static_cast<std::size_t>(shape.parties() - 2), 0);
    for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
            if (k == 0 && l == 0) continue;
            const auto label = GhzLabel::make(shape, s, k, l);
            add_projector(rho, apply_local(label_local_ops(label), shape, phi.amplitudes()), per_state);
        }
    }
    return DensityOperator::make(shape, std::move(rho));
}

DensityOperator facet_ray(double alpha, double mu) {
    const SystemShape shape = SystemShape::make(3, 2);
    const auto named = qubit_named_bases();
    ComplexMatrix rho = identity_part(shape, 1.0 - mu);
    add_projector(rho, named.hv[0].amplitudes(), mu * alpha);
    add_projector(rho, named.hv[1].amplitudes(), mu * (1.0 - alpha));
    return DensityOperator::make(shape, std::move(rho));
}

const char* family_name(FamilyKind f) {
    switch (f) {
    case FamilyKind::Noise: return "noise";
    case FamilyKind::Pair: return "pair";
    case FamilyKind::Square: return "square";
    case FamilyKind::Facet: return "facet";
    }
    return "";
}

std::optional<FamilyKind> parse_family(const std::string& name) {
    if (name == "noise") return FamilyKind::Noise;
    if (name == "pair") return FamilyKind::Pair;
    if (name == "square" || name == "tau") return FamilyKind::Square;
    if (name == "facet") return FamilyKind::Facet;
    return std::nullopt;
}

DensityOperator build_family_state(const FamilyPoint& p) {
    switch (p.family) {
    case FamilyKind::Noise: {
        const SystemShape shape = SystemShape::make(p.n, p.d);
        const GhzLabel label = p.labels.empty() ? GhzLabel::zero(shape) : label_from_digits(shape, p.labels.front());
        return sigma_noise(label, p.alpha);
    }
    case FamilyKind::Pair: {
        if (p.n != 3) throw Error(ErrorCode::Unsupported, "pair family is defined for three parties");
        if (p.labels.empty()) throw Error(ErrorCode::InvalidArgument, "pair family needs a label");
        const SystemShape shape = SystemShape::make(3, p.d);
        return sigma_pair(p.d, label_from_digits(shape, p.labels.front()), p.alpha, p.beta);
    }
    case FamilyKind::Square:
        return tau_square(SystemShape::make(p.n, p.d), p.alpha, p.beta);
    case FamilyKind::Facet:
        if (p.n != 3 || p.d != 2) throw Error(ErrorCode::Unsupported, "facet family is defined for three qubits");
        return facet_ray(p.alpha, p.mu);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown family");
}

std::vector<GhzLabel> component_labels(const FamilyPoint& p) {
    const SystemShape shape = SystemShape::make(p.n, p.d);
    switch (p.family) {
    case FamilyKind::Noise:
        return {p.labels.empty() ? GhzLabel::zero(shape) : label_from_digits(shape, p.labels.front())};
    case FamilyKind::Pair:
        if (p.labels.empty()) throw Error(ErrorCode::InvalidArgument, "pair family needs a label");
        return {GhzLabel::zero(shape), label_from_digits(shape, p.labels.front())};
    case FamilyKind::Square: {
        std::vector<GhzLabel> out;
        const std::vector<int> s(static_cast<std::size_t>(shape.parties() - 2), 0);
        for (int k = 0; k < shape.local_dim(); ++k) {
            for (int l = 0; l < shape.local_dim(); ++l) out.push_back(GhzLabel::make(shape, s, k, l));
        }
        return out;
    }
    case FamilyKind::Facet:
        // GHZ1- and GHZ1+ of the named basis.
        return {GhzLabel::make(shape, {0}, 0, 0), GhzLabel::make(shape, {1}, 1, 0)};
    }
    return {};
}

} // namespace ghz
