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

#include "ghzsimplex/weyl.hpp"

#include <cmath>
#include <numbers>

#include "ghzsimplex/error.hpp"

namespace ghz {

namespace {

int mod(long long a, int d) {
    const long long r = a % d;
    return static_cast<int>(r < 0 ? r + d : r);
}

} // namespace

WeylIndex WeylIndex::make(int d, int k, int l) {
    if (d < 2) throw Error(ErrorCode::InvalidArgument, "Weyl operators need d >= 2");
    if (k < 0 || k >= d || l < 0 || l >= d) {
        throw Error(ErrorCode::OutOfRange, "Weyl index (" + std::to_string(k) + "," + std::to_string(l) +
                                               ") out of range for d=" + std::to_string(d));
    }
    return {d, k, l};
}

Complex root_of_unity(int d, long long power) {
    const int p = mod(power, d);
    if (p == 0) return {1.0, 0.0};
    // Exact values for the quarter turns avoid round-off in sign-sensitive tests.
    if (4 * p == d) return {0.0, 1.0};
    if (2 * p == d) return {-1.0, 0.0};
    if (4 * p == 3 * d) return {0.0, -1.0};
    return std::polar(1.0, 2.0 * std::numbers::pi * p / d);
}

ComplexMatrix weyl(const WeylIndex& idx) {
    const int d = idx.d;
    ComplexMatrix w = ComplexMatrix::Zero(d, d);
    for (int s = 0; s < d; ++s) {
        const int row = mod(s - idx.l, d);
        w(row, s) = root_of_unity(d, static_cast<long long>(row) * idx.k);
    }
    return w;
}

WeylProduct weyl_relation(const WeylIndex& a, const WeylIndex& b) {
    if (a.d != b.d) throw Error(ErrorCode::DimensionMismatch, "weyl_relation: operators of different dimension");
    const int d = a.d;
    const int dk = mod(a.k - b.k, d);
    const int dl = mod(a.l - b.l, d);
    return {WeylIndex{d, dk, dl}, root_of_unity(d, -static_cast<long long>(b.l) * dk)};
}

GhzLabel GhzLabel::make(SystemShape shape, std::vector<int> s, int k, int l) {
    const int n = shape.parties();
    const int d = shape.local_dim();
    if (s.size() != static_cast<std::size_t>(n - 2)) {
        throw Error(ErrorCode::DimensionMismatch, "label needs " + std::to_string(n - 2) + " square indices, got " +
                                                      std::to_string(s.size()));
    }
    for (int v : s) {
        if (v < 0 || v >= d) throw Error(ErrorCode::OutOfRange, "label square index out of range");
    }
    if (k < 0 || k >= d || l < 0 || l >= d) throw Error(ErrorCode::OutOfRange, "label (k,l) out of range");
    return GhzLabel(shape, std::move(s), k, l);
}

GhzLabel GhzLabel::zero(SystemShape shape) {
    return GhzLabel(shape, std::vector<int>(static_cast<std::size_t>(shape.parties() - 2), 0), 0, 0);
}

GhzLabel GhzLabel::from_flat(SystemShape shape, std::size_t flat) {
    if (flat >= shape.dimension()) throw Error(ErrorCode::OutOfRange, "label index out of range");
    const auto digits = shape.digits(flat);
    std::vector<int> s(digits.begin(), digits.end() - 2);
    return GhzLabel(shape, std::move(s), digits[digits.size() - 2], digits.back());
}

bool GhzLabel::is_zero() const noexcept {
    if (k_ != 0 || l_ != 0) return false;
    for (int v : s_) {
        if (v != 0) return false;
    }
    return true;
}

std::vector<int> GhzLabel::digits() const {
    std::vector<int> out = s_;
    out.push_back(k_);
    out.push_back(l_);
    return out;
}

std::size_t GhzLabel::flat_index() const {
    const auto dg = digits();
    return shape_.index(dg);
}

PureState build_phi(const SystemShape& shape) {
    const int n = shape.parties();
    const int d = shape.local_dim();
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    ComplexVector phi = ComplexVector::Zero(d);
    phi(0) = 1.0;
    std::vector<ComplexMatrix> w_ii;
    for (int i = 0; i < d; ++i) w_ii.push_back(weyl({d, i, i}));
    for (int m = 2; m <= n; ++m) {
        // phi has m-1 parties; W_{i,i} acts on its last party.
        const auto prev = static_cast<Eigen::Index>(phi.size());
        ComplexVector next = ComplexVector::Zero(prev * d);
        const Eigen::Index outer = prev / d;
        for (int i = 0; i < d; ++i) {
            const ComplexMatrix& w = w_ii[static_cast<std::size_t>(i)];
            for (Eigen::Index o = 0; o < outer; ++o) {
                for (Eigen::Index r = 0; r < d; ++r) {
                    Complex acc = 0.0;
                    for (Eigen::Index c = 0; c < d; ++c) acc += w(r, c) * phi(o * d + c);
                    next(i * prev + o * d + r) = norm * acc;
                }
            }
        }
        phi = std::move(next);
    }
    return PureState::make(shape, std::move(phi));
}

std::vector<ComplexMatrix> label_local_ops(const GhzLabel& label) {
    const int d = label.shape().local_dim();
    std::vector<ComplexMatrix> ops;
    ops.reserve(static_cast<std::size_t>(label.shape().parties()));
    ops.push_back(ComplexMatrix::Identity(d, d));
    for (int s : label.s()) ops.push_back(weyl({d, s, 0}));
    ops.push_back(weyl({d, label.k(), label.l()}));
    return ops;
}

PureState ghz_state(const GhzLabel& label) {
    const PureState phi = build_phi(label.shape());
    if (label.is_zero()) return phi;
    const auto ops = label_local_ops(label);
    return PureState::make(label.shape(), apply_local(ops, label.shape(), phi.amplitudes()));
}

std::vector<GhzLabel> all_labels(const SystemShape& shape) {
    std::vector<GhzLabel> out;
    out.reserve(shape.dimension());
    for (std::size_t i = 0; i < shape.dimension(); ++i) out.push_back(GhzLabel::from_flat(shape, i));
    return out;
}

std::vector<PureState> ghz_basis(const SystemShape& shape) {
    const PureState phi = build_phi(shape);
    std::vector<PureState> out;
    out.reserve(shape.dimension());
    for (const auto& label : all_labels(shape)) {
        const auto ops = label_local_ops(label);
        out.push_back(PureState::make(shape, apply_local(ops, shape, phi.amplitudes())));
    }
    return out;
}

std::vector<ComplexMatrix> ghz_frame(const GhzLabel& label) {
    const int d = label.shape().local_dim();
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    ComplexMatrix df(d, d);
    for (int a = 0; a < d; ++a) {
        // Quadratic phase that makes the all-zero state a product-frame image of
        // the standard GHZ vector.
        Complex f;
        if (d % 2 == 0) {
            f = root_of_unity(2 * d, -static_cast<long long>(a) * a);
        } else {
            const long long inv2 = (d + 1) / 2;
            f = root_of_unity(d, -inv2 * a * a);
        }
        for (int j = 0; j < d; ++j) df(a, j) = f * norm * root_of_unity(d, static_cast<long long>(j) * a);
    }
    auto ops = label_local_ops(label);
    for (auto& op : ops) op = op * df;
    return ops;
}

namespace {

ComplexVector basis_vec(int d, int i) {
    ComplexVector v = ComplexVector::Zero(d);
    v(i) = 1.0;
    return v;
}

ComplexVector product3(const ComplexVector& a, const ComplexVector& b, const ComplexVector& c) {
    const std::array<ComplexVector, 3> f{a, b, c};
    return kron_vectors(f);
}

ComplexVector product2(const ComplexVector& a, const ComplexVector& b) {
    const std::array<ComplexVector, 2> f{a, b};
    return kron_vectors(f);
}

} // namespace

NamedQubitBases qubit_named_bases() {
    const SystemShape shape = SystemShape::make(3, 2);
    const double r = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    const ComplexVector h = basis_vec(2, 0);
    const ComplexVector v = basis_vec(2, 1);
    const ComplexVector phi_p = r * (product2(h, h) + product2(v, v));
    const ComplexVector phi_m = r * (product2(h, h) - product2(v, v));
    const ComplexVector psi_p = r * (product2(h, v) + product2(v, h));
    const ComplexVector psi_m = r * (product2(h, v) - product2(v, h));
    auto hv = [&](const ComplexVector& a, const ComplexVector& bell_a, double sign, const ComplexVector& b,
                  const ComplexVector& bell_b) {
        return PureState::make(shape, r * (product2(a, bell_a) + sign * product2(b, bell_b)));
    };
    const ComplexVector R = r * (h + i * v);
    const ComplexVector L = r * (h - i * v);
    auto rl = [&](Complex pre, const ComplexVector& x, double sign, const ComplexVector& y) {
        return PureState::make(shape, pre * r * (x + sign * y));
    };
    const Complex one = 1.0;
    const Complex mi = -i;
    return NamedQubitBases{
        {hv(h, phi_m, +1, v, psi_p), hv(h, phi_m, -1, v, psi_p), hv(h, phi_p, +1, v, psi_m),
         hv(h, phi_p, -1, v, psi_m), hv(v, phi_m, +1, h, psi_p), hv(v, phi_m, -1, h, psi_p),
         hv(v, phi_p, +1, h, psi_m), hv(v, phi_p, -1, h, psi_m)},
        {rl(one, product3(R, L, L), +1, product3(L, R, R)), rl(one, product3(R, R, R), +1, product3(L, L, L)),
         rl(one, product3(R, R, L), +1, product3(L, L, R)), rl(one, product3(R, L, R), +1, product3(L, R, L)),
         rl(mi, product3(R, R, R), -1, product3(L, L, L)), rl(mi, product3(R, L, L), -1, product3(L, R, R)),
         rl(mi, product3(R, L, R), -1, product3(L, R, L)), rl(mi, product3(R, R, L), -1, product3(L, L, R))},
    };
}

namespace {

constexpr std::array<const char*, 8> kNames{"GHZ1+", "GHZ1-", "GHZ2+", "GHZ2-", "GHZ3+", "GHZ3-", "GHZ4+", "GHZ4-"};

} // namespace

int named_state_index(const std::string& name) {
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (name == kNames[i]) return static_cast<int>(i);
    }
    return -1;
}

const char* named_state_name(int index) {
    if (index < 0 || index >= static_cast<int>(kNames.size())) return "";
    return kNames[static_cast<std::size_t>(index)];
}

PhaseMatch equal_up_to_global_phase(const ComplexVector& a, const ComplexVector& b, double tol) {
    if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "equal_up_to_global_phase: size mismatch");
    const Complex ov = b.dot(a); // <b|a>
    PhaseMatch m;
    m.overlap = std::abs(ov);
    m.phase = std::arg(ov);
    m.equal = m.overlap >= 1.0 - tol;
    return m;
}

PhaseMatch equal_up_to_global_phase(const PureState& a, const PureState& b, double tol) {
    return equal_up_to_global_phase(a.amplitudes(), b.amplitudes(), tol);
}

} // namespace ghz
