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

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "ghzsimplex/tensor.hpp"

namespace ghz {

/// Flip index k and phase index l of a d-dimensional Weyl operator.
struct WeylIndex {
    int d = 2;
    int k = 0;
    int l = 0;

    static WeylIndex make(int d, int k, int l);
    friend bool operator==(const WeylIndex&, const WeylIndex&) = default;
};

/// W_{k,l} = sum_s w^{(s-l)k} |s-l><s| with indices mod d and w = exp(2 pi i / d).
ComplexMatrix weyl(const WeylIndex& idx);

/// Primitive d-th root of unity raised to `power`.
Complex root_of_unity(int d, long long power);

struct WeylProduct {
    WeylIndex index;
    Complex phase;
};

/// (c, phase) with W_b^dagger W_a = phase * W_c.
WeylProduct weyl_relation(const WeylIndex& a, const WeylIndex& b);

/// Basis label (s_1, ..., s_{n-2}, k, l).
class GhzLabel {
public:
    static GhzLabel make(SystemShape shape, std::vector<int> s, int k, int l);
    static GhzLabel zero(SystemShape shape);
    /// Inverse of flat_index().
    static GhzLabel from_flat(SystemShape shape, std::size_t flat);

    const SystemShape& shape() const noexcept { return shape_; }
    const std::vector<int>& s() const noexcept { return s_; }
    int k() const noexcept { return k_; }
    int l() const noexcept { return l_; }
    bool is_zero() const noexcept;

    /// Position in the lexicographic (s..., k, l) order.
    std::size_t flat_index() const;
    /// Digits (s..., k, l) for printing and serialisation.
    std::vector<int> digits() const;

    friend bool operator==(const GhzLabel&, const GhzLabel&) = default;

private:
    GhzLabel(SystemShape shape, std::vector<int> s, int k, int l)
        : shape_(shape), s_(std::move(s)), k_(k), l_(l) {}

    SystemShape shape_;
    std::vector<int> s_;
    int k_;
    int l_;
};

PureState build_phi(const SystemShape& shape);

/// Per-party operators [1, W_{s_1,0}, ..., W_{s_{n-2},0}, W_{k,l}].
std::vector<ComplexMatrix> label_local_ops(const GhzLabel& label);

PureState ghz_state(const GhzLabel& label);

/// All d^n labels in lexicographic order.
std::vector<GhzLabel> all_labels(const SystemShape& shape);

std::vector<PureState> ghz_basis(const SystemShape& shape);

/// Per-party unitaries U_p with ghz_state(label) proportional to
/// (U_0 (x) ... (x) U_{n-1}) (|0...0> + ... + |d-1...d-1>)/sqrt(d).
std::vector<ComplexMatrix> ghz_frame(const GhzLabel& label);

/// Order of both lists: GHZ1+, GHZ1-, GHZ2+, GHZ2-, GHZ3+, GHZ3-, GHZ4+, GHZ4-.
struct NamedQubitBases {
    std::array<PureState, 8> hv;
    std::array<PureState, 8> rl;
};

NamedQubitBases qubit_named_bases();

/// Index into NamedQubitBases for a name such as "GHZ1-"; -1 when unknown.
int named_state_index(const std::string& name);
const char* named_state_name(int index);

struct PhaseMatch {
    bool equal = false;
    double phase = 0.0; // a = exp(i phase) b when equal
    double overlap = 0.0;
};

PhaseMatch equal_up_to_global_phase(const PureState& a, const PureState& b, double tol = 1e-10);
PhaseMatch equal_up_to_global_phase(const ComplexVector& a, const ComplexVector& b, double tol = 1e-10);

} // namespace ghz
