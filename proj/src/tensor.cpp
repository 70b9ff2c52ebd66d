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

#include "ghzsimplex/tensor.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ghzsimplex/error.hpp"

namespace ghz {

namespace {

void check_budget(std::size_t rows, std::size_t cols, const char* what) {
    if (rows > kMaxDimension || cols > kMaxDimension) {
        std::ostringstream msg;
        msg << what << ": result " << rows << "x" << cols << " exceeds dimension budget " << kMaxDimension;
        throw Error(ErrorCode::SizeBudget, msg.str());
    }
}

} // namespace

SystemShape SystemShape::make(int n, int d) {
    if (n < 2 || d < 2) {
        throw Error(ErrorCode::InvalidArgument,
                    "system shape needs n >= 2 and d >= 2 (got n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")");
    }
    std::size_t dim = 1;
    for (int i = 0; i < n; ++i) {
        dim *= static_cast<std::size_t>(d);
        if (dim > kMaxDimension) {
            throw Error(ErrorCode::SizeBudget, "d^n for n=" + std::to_string(n) + ", d=" + std::to_string(d) +
                                                   " exceeds dimension budget " + std::to_string(kMaxDimension));
        }
    }
    return SystemShape(n, d, dim);
}

std::size_t SystemShape::stride(int party) const {
    if (party < 0 || party >= n_) {
        throw Error(ErrorCode::OutOfRange, "party " + std::to_string(party) + " out of range for n=" + std::to_string(n_));
    }
    std::size_t s = 1;
    for (int p = n_ - 1; p > party; --p) s *= static_cast<std::size_t>(d_);
    return s;
}

int SystemShape::digit(std::size_t index, int party) const {
    return static_cast<int>((index / stride(party)) % static_cast<std::size_t>(d_));
}

std::vector<int> SystemShape::digits(std::size_t index) const {
    std::vector<int> out(static_cast<std::size_t>(n_));
    for (int p = n_ - 1; p >= 0; --p) {
        out[static_cast<std::size_t>(p)] = static_cast<int>(index % static_cast<std::size_t>(d_));
        index /= static_cast<std::size_t>(d_);
    }
    return out;
}

std::size_t SystemShape::index(std::span<const int> digits) const {
    if (digits.size() != static_cast<std::size_t>(n_)) {
        throw Error(ErrorCode::DimensionMismatch, "digit string length does not match particle count");
    }
    std::size_t idx = 0;
    for (int v : digits) {
        if (v < 0 || v >= d_) throw Error(ErrorCode::OutOfRange, "digit out of range");
        idx = idx * static_cast<std::size_t>(d_) + static_cast<std::size_t>(v);
    }
    return idx;
}

PureState PureState::make(SystemShape shape, ComplexVector amplitudes, double tol) {
    if (static_cast<std::size_t>(amplitudes.size()) != shape.dimension()) {
        throw Error(ErrorCode::DimensionMismatch, "amplitude vector length " + std::to_string(amplitudes.size()) +
                                                      " does not match d^n = " + std::to_string(shape.dimension()));
    }
    if (!amplitudes.allFinite()) throw Error(ErrorCode::InvalidArgument, "amplitudes must be finite");
    const double norm = amplitudes.norm();
    if (std::abs(norm - 1.0) > tol) {
        std::ostringstream msg;
        msg << "pure state norm " << norm << " differs from 1 by more than " << tol;
        throw Error(ErrorCode::InvalidArgument, msg.str());
    }
    return PureState(shape, std::move(amplitudes));
}

ComplexMatrix PureState::projector() const { return amps_ * amps_.adjoint(); }

DensityOperator DensityOperator::make(SystemShape shape, ComplexMatrix matrix, bool check_positivity, double tol) {
    const auto dim = static_cast<Eigen::Index>(shape.dimension());
    if (matrix.rows() != dim || matrix.cols() != dim) {
        throw Error(ErrorCode::DimensionMismatch, "density matrix must be " + std::to_string(dim) + "x" +
                                                      std::to_string(dim));
    }
    if (!matrix.allFinite()) throw Error(ErrorCode::InvalidArgument, "density matrix entries must be finite");
    const double asym = hermitian_asymmetry(matrix);
    if (asym > tol) {
        std::ostringstream msg;
        msg << "density matrix not Hermitian (max |M - M^dagger| = " << asym << ")";
        throw Error(ErrorCode::NotHermitian, msg.str());
    }
    const Complex tr = matrix.trace();
    if (std::abs(tr - 1.0) > tol) {
        std::ostringstream msg;
        msg << "density matrix trace " << tr.real() << " differs from 1";
        throw Error(ErrorCode::InvalidArgument, msg.str());
    }
    if (check_positivity) {
        const double lo = min_eigenvalue(matrix);
        if (lo < -tol) {
            std::ostringstream msg;
            msg << "density matrix not positive (min eigenvalue " << lo << ")";
            throw Error(ErrorCode::InvalidArgument, msg.str());
        }
    }
    return DensityOperator(shape, std::move(matrix), check_positivity);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const auto rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
    const auto cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
    check_budget(rows, cols, "kron");
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
    if (factors.empty()) return ComplexMatrix::Identity(1, 1);
    ComplexMatrix out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
    return out;
}

ComplexVector kron_vectors(std::span<const ComplexVector> factors) {
    ComplexVector out = ComplexVector::Ones(1);
    for (const auto& f : factors) {
        check_budget(static_cast<std::size_t>(out.size()) * static_cast<std::size_t>(f.size()), 1, "kron_vectors");
        ComplexVector next(out.size() * f.size());
        for (Eigen::Index i = 0; i < out.size(); ++i) next.segment(i * f.size(), f.size()) = out(i) * f;
        out = std::move(next);
    }
    return out;
}

double hermitian_asymmetry(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    if (m.size() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

void require_hermitian(const ComplexMatrix& h, double tol) {
    if (h.rows() != h.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "Hermitian eigensolver needs a square matrix");
    }
    const double asym = hermitian_asymmetry(h);
    if (!(asym <= tol)) {
        std::ostringstream msg;
        msg << "matrix not Hermitian: max |H - H^dagger| = " << asym << " > " << tol;
        throw Error(ErrorCode::NotHermitian, msg.str());
    }
}

} // namespace

std::vector<double> hermitian_spectrum(const ComplexMatrix& h, double hermitian_tol) {
    require_hermitian(h, hermitian_tol);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    const auto& vals = solver.eigenvalues();
    return {vals.data(), vals.data() + vals.size()};
}

Eigensystem hermitian_eigensystem(const ComplexMatrix& h, double hermitian_tol) {
    require_hermitian(h, hermitian_tol);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::ComputeEigenvectors);
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const ComplexMatrix& h, double hermitian_tol) {
    const auto spec = hermitian_spectrum(h, hermitian_tol);
    return spec.empty() ? 0.0 : spec.front();
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const SystemShape& shape, int party) {
    const auto dim = static_cast<Eigen::Index>(shape.dimension());
    if (m.rows() != dim || m.cols() != dim) {
        throw Error(ErrorCode::DimensionMismatch, "partial_transpose: matrix does not match system shape");
    }
    const std::size_t stride = shape.stride(party);
    const auto d = static_cast<std::size_t>(shape.local_dim());
    ComplexMatrix out(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        const std::size_t rd = (static_cast<std::size_t>(r) / stride) % d;
        const std::size_t rbase = static_cast<std::size_t>(r) - rd * stride;
        for (Eigen::Index c = 0; c < dim; ++c) {
            const std::size_t cd = (static_cast<std::size_t>(c) / stride) % d;
            const std::size_t cbase = static_cast<std::size_t>(c) - cd * stride;
            out(static_cast<Eigen::Index>(rbase + cd * stride), static_cast<Eigen::Index>(cbase + rd * stride)) = m(r, c);
        }
    }
    return out;
}

ComplexMatrix partial_transpose(const DensityOperator& rho, int party) {
    return partial_transpose(rho.matrix(), rho.shape(), party);
}

ComplexVector apply_local(std::span<const ComplexMatrix> ops, const SystemShape& shape, const ComplexVector& psi) {
    const int n = shape.parties();
    const auto d = static_cast<Eigen::Index>(shape.local_dim());
    if (ops.size() != static_cast<std::size_t>(n)) {
        throw Error(ErrorCode::DimensionMismatch, "apply_local: expected " + std::to_string(n) + " local operators, got " +
                                                      std::to_string(ops.size()));
    }
    if (static_cast<std::size_t>(psi.size()) != shape.dimension()) {
        throw Error(ErrorCode::DimensionMismatch, "apply_local: state length does not match shape");
    }
    for (const auto& op : ops) {
        if (op.rows() != d || op.cols() != d) {
            throw Error(ErrorCode::DimensionMismatch, "apply_local: every local operator must be d x d");
        }
    }
    ComplexVector cur = psi;
    ComplexVector next(psi.size());
    for (int p = 0; p < n; ++p) {
        const auto& op = ops[static_cast<std::size_t>(p)];
        if (op.isIdentity(0.0)) continue;
        const auto stride = static_cast<Eigen::Index>(shape.stride(p));
        const Eigen::Index block = stride * d;
        for (Eigen::Index base = 0; base < cur.size(); base += block) {
            for (Eigen::Index inner = 0; inner < stride; ++inner) {
                for (Eigen::Index i = 0; i < d; ++i) {
                    Complex acc = 0.0;
                    for (Eigen::Index j = 0; j < d; ++j) acc += op(i, j) * cur(base + j * stride + inner);
                    next(base + i * stride + inner) = acc;
                }
            }
        }
        cur.swap(next);
    }
    return cur;
}

PureState apply_local(std::span<const ComplexMatrix> ops, const PureState& psi) {
    ComplexVector out = apply_local(ops, psi.shape(), psi.amplitudes());
    const double norm = out.norm();
    if (!(norm > 0.0)) throw Error(ErrorCode::InvalidArgument, "apply_local annihilated the state");
    // Non-unitary operators are allowed; the result is renormalised.
    if (std::abs(norm - 1.0) > 1e-12) out /= norm;
    return PureState::make(psi.shape(), std::move(out));
}

ComplexMatrix reduced_single(const ComplexMatrix& rho, const SystemShape& shape, int party) {
    const auto dim = static_cast<Eigen::Index>(shape.dimension());
    if (rho.rows() != dim || rho.cols() != dim) {
        throw Error(ErrorCode::DimensionMismatch, "reduced_single: matrix does not match system shape");
    }
    const auto stride = static_cast<Eigen::Index>(shape.stride(party));
    const auto d = static_cast<Eigen::Index>(shape.local_dim());
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (Eigen::Index r = 0; r < dim; ++r) {
        const Eigen::Index rd = (r / stride) % d;
        const Eigen::Index rest = r - rd * stride;
        for (Eigen::Index c = 0; c < d; ++c) out(rd, c) += rho(r, rest + c * stride);
    }
    return out;
}

ValidityReport validate_density(const ComplexMatrix& rho, double tol) {
    ValidityReport report;
    if (rho.rows() != rho.cols() || rho.size() == 0) {
        report.asymmetry = std::numeric_limits<double>::infinity();
        report.trace_error = std::numeric_limits<double>::infinity();
        report.min_eigenvalue = -std::numeric_limits<double>::infinity();
        return report;
    }
    report.asymmetry = hermitian_asymmetry(rho);
    report.hermitian = report.asymmetry <= tol;
    report.trace_error = std::abs(rho.trace() - 1.0);
    report.unit_trace = report.trace_error <= tol;
    // The spectrum of the Hermitian part is reported even when the input is
    // not Hermitian, so the caller always gets a number.
    const ComplexMatrix herm = 0.5 * (rho + rho.adjoint());
    report.min_eigenvalue = min_eigenvalue(herm, std::numeric_limits<double>::infinity());
    report.positive = report.min_eigenvalue >= -tol;
    return report;
}

} // namespace ghz
