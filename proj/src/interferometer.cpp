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

#include "ghzsimplex/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ghzsimplex/error.hpp"

namespace ghz {

namespace {

ComplexMatrix pauli(char axis) {
    ComplexMatrix s = ComplexMatrix::Zero(2, 2);
    const Complex i(0.0, 1.0);
    switch (axis) {
    case 'x': s(0, 1) = 1.0; s(1, 0) = 1.0; break;
    case 'y': s(0, 1) = -i; s(1, 0) = i; break;
    default: s(0, 0) = 1.0; s(1, 1) = -1.0; break;
    }
    return s;
}

/// exp(-i theta/2 sigma) for a Pauli matrix sigma.
ComplexMatrix spin_rotation(char axis, double theta) {
    const Complex i(0.0, 1.0);
    return std::cos(theta / 2.0) * ComplexMatrix::Identity(2, 2) - i * std::sin(theta / 2.0) * pauli(axis);
}

ComplexMatrix tensor_power(const ComplexMatrix& m, int n) {
    ComplexMatrix out = m;
    for (int i = 1; i < n; ++i) out = kron(out, m);
    return out;
}

void require_qubits(int n) {
    if (n < 1 || n > 20) throw Error(ErrorCode::InvalidArgument, "qubit count must be in [1, 20]");
}

} // namespace

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

BlochVector BlochVector::make(double x, double y, double z) {
    BlochVector b{x, y, z};
    if (!std::isfinite(b.norm()) || b.norm() > 1.0 + 1e-12) {
        throw Error(ErrorCode::InvalidArgument, "Bloch vector norm exceeds 1");
    }
    return b;
}

ComplexMatrix bloch_density(const BlochVector& n) {
    return 0.5 * (ComplexMatrix::Identity(2, 2) + n.x * pauli('x') + n.y * pauli('y') + n.z * pauli('z'));
}

BlochVector bloch_of(const ComplexMatrix& rho) {
    return {(rho * pauli('x')).trace().real(), (rho * pauli('y')).trace().real(), (rho * pauli('z')).trace().real()};
}

ComplexMatrix u_bs() { return spin_rotation('y', std::numbers::pi / 2.0); }

ComplexMatrix u_phase(double phi) { return spin_rotation('x', phi); }

BlochVector final_bloch(const BlochVector& n0, double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    return {-n0.x * c + n0.y * s, n0.x * s + n0.y * c, -n0.z};
}

BlochVector final_bloch_conjugated(const BlochVector& n0, double phi) {
    const ComplexMatrix u = u_bs() * u_phase(phi) * u_bs();
    return bloch_of(u * bloch_density(n0) * u.adjoint());
}

InterferometerReport complementarity_report(const BlochVector& n0) {
    const double nn = n0.x * n0.x + n0.y * n0.y + n0.z * n0.z;
    if (!(nn <= 1.0 + 2e-12)) throw Error(ErrorCode::InvalidArgument, "Bloch vector norm exceeds 1");
    InterferometerReport r;
    r.predictability = std::abs(n0.z);
    r.visibility = std::sqrt(n0.x * n0.x + n0.y * n0.y);
    const ComplexMatrix rho = bloch_density(n0);
    r.purity = (rho * rho).trace().real();
    r.bloch_norm_sq = nn;
    return r;
}

ComplexMatrix u_ent(int n_qubits) {
    require_qubits(n_qubits);
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
    const double c = std::cos(std::numbers::pi / 4.0);
    const double s = std::sin(std::numbers::pi / 4.0);
    const Eigen::Index top = dim - 1;
    u(0, 0) = c;
    u(top, 0) = -s;
    u(0, top) = s;
    u(top, top) = c;
    return u;
}

ComplexMatrix u_ghz_full(int n_qubits, int skip_final_bs) {
    require_qubits(n_qubits);
    if (skip_final_bs < -1 || skip_final_bs >= n_qubits) {
        throw Error(ErrorCode::OutOfRange, "skipped beam splitter party out of range");
    }
    const ComplexMatrix b = u_bs().adjoint();
    const ComplexMatrix p = u_phase(-std::numbers::pi / 2.0);
    const ComplexMatrix bn = tensor_power(b, n_qubits);
    const ComplexMatrix pn = tensor_power(p, n_qubits);
    ComplexMatrix last;
    if (skip_final_bs < 0) {
        last = bn;
    } else {
        last = ComplexMatrix::Identity(1, 1);
        for (int q = 0; q < n_qubits; ++q) last = kron(last, q == skip_final_bs ? ComplexMatrix::Identity(2, 2) : b);
    }
    return last * pn.adjoint() * u_ent(n_qubits) * pn * bn;
}

ComplexVector input_qubit(char c) {
    const double r = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    ComplexVector v(2);
    switch (c) {
    case 'H': case 'h': case '0': v << 1.0, 0.0; break;
    case 'V': case 'v': case '1': v << 0.0, 1.0; break;
    case 'R': case 'r': v << r, i * r; break;
    case 'L': case 'l': v << r, -i * r; break;
    case '+': case 'P': case 'p': v << r, r; break;
    case '-': case 'M': case 'm': v << r, -r; break;
    default:
        throw Error(ErrorCode::InvalidArgument, std::string("unknown input letter '") + c + "' (use H V R L + - 0 1)");
    }
    return v;
}

ComplexVector input_state(const std::string& spec) {
    if (spec.empty()) throw Error(ErrorCode::InvalidArgument, "empty input state");
    std::vector<ComplexVector> parts;
    for (char c : spec) parts.push_back(input_qubit(c));
    return kron_vectors(parts);
}

double concurrence(const ComplexMatrix& rho) {
    if (rho.rows() != 4 || rho.cols() != 4) throw Error(ErrorCode::DimensionMismatch, "concurrence needs a 4x4 matrix");
    const auto report = validate_density(rho, 1e-9);
    if (!report.is_state()) throw Error(ErrorCode::InvalidArgument, "concurrence needs a density matrix");
    // rho = sum_i |w_i><w_i| with subnormalised eigenvectors w_i; the
    // concurrence follows from the singular values of w_i^T (Y(x)Y) w_j.
    const auto eig = hermitian_eigensystem(0.5 * (rho + rho.adjoint()));
    std::vector<ComplexVector> w;
    for (Eigen::Index i = 0; i < 4; ++i) {
        if (eig.values(i) > 1e-13) w.push_back(std::sqrt(eig.values(i)) * eig.vectors.col(i));
    }
    if (w.empty()) return 0.0;
    const ComplexMatrix yy = kron(pauli('y'), pauli('y'));
    const auto k = static_cast<Eigen::Index>(w.size());
    ComplexMatrix tau(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) tau(i, j) = w[static_cast<std::size_t>(i)].transpose() * yy * w[static_cast<std::size_t>(j)];
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(tau);
    std::vector<double> s(svd.singularValues().data(), svd.singularValues().data() + k);
    s.resize(4, 0.0);
    std::sort(s.begin(), s.end(), std::greater<>());
    return std::clamp(s[0] - s[1] - s[2] - s[3], 0.0, 1.0);
}

double concurrence(const ComplexVector& psi) {
    if (psi.size() != 4) throw Error(ErrorCode::DimensionMismatch, "concurrence needs a two-qubit vector");
    return concurrence(ComplexMatrix(psi * psi.adjoint()));
}

std::vector<double> reduced_purities(const SystemShape& shape, const ComplexVector& psi) {
    const ComplexMatrix rho = psi * psi.adjoint();
    std::vector<double> out;
    for (int p = 0; p < shape.parties(); ++p) {
        const ComplexMatrix r = reduced_single(rho, shape, p);
        out.push_back((r * r).trace().real());
    }
    return out;
}

} // namespace ghz
