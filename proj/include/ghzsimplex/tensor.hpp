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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ghz {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Largest composite dimension d^n any constructor accepts.
inline constexpr std::size_t kMaxDimension = std::size_t{1} << 20;

/// Particle count n and local dimension d. Party 0 is the most significant
/// digit of the base-d composite index, so |011> for qubits is index 3.
class SystemShape {
public:
    static SystemShape make(int n, int d);

    int parties() const noexcept { return n_; }
    int local_dim() const noexcept { return d_; }
    std::size_t dimension() const noexcept { return dim_; }

    /// Stride of `party` in the composite index (d^(n-1-party)).
    std::size_t stride(int party) const;
    int digit(std::size_t index, int party) const;
    std::vector<int> digits(std::size_t index) const;
    std::size_t index(std::span<const int> digits) const;

    friend bool operator==(const SystemShape&, const SystemShape&) = default;

private:
    SystemShape(int n, int d, std::size_t dim) : n_(n), d_(d), dim_(dim) {}

    int n_;
    int d_;
    std::size_t dim_;
};

/// Unit vector in the composite space.
class PureState {
public:
    static PureState make(SystemShape shape, ComplexVector amplitudes, double tol = 1e-12);

    const SystemShape& shape() const noexcept { return shape_; }
    const ComplexVector& amplitudes() const noexcept { return amps_; }
    ComplexMatrix projector() const;

private:
    PureState(SystemShape shape, ComplexVector amps) : shape_(shape), amps_(std::move(amps)) {}

    SystemShape shape_;
    ComplexVector amps_;
};

/// Trace-one Hermitian operator. Positivity is only enforced when requested so
/// that pseudo-states outside the physical region stay representable.
class DensityOperator {
public:
    static DensityOperator make(SystemShape shape, ComplexMatrix matrix, bool check_positivity = false,
                                double tol = 1e-10);

    const SystemShape& shape() const noexcept { return shape_; }
    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    bool positivity_checked() const noexcept { return positivity_checked_; }

private:
    DensityOperator(SystemShape shape, ComplexMatrix m, bool checked)
        : shape_(shape), matrix_(std::move(m)), positivity_checked_(checked) {}

    SystemShape shape_;
    ComplexMatrix matrix_;
    bool positivity_checked_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);
ComplexVector kron_vectors(std::span<const ComplexVector> factors);

/// Largest entry of |M - M^dagger|; infinity for non-square input.
double hermitian_asymmetry(const ComplexMatrix& m);

struct Eigensystem {
    Eigen::VectorXd values; // ascending
    ComplexMatrix vectors;  // columns
};

/// Ascending eigenvalues of a Hermitian matrix. Rejects inputs whose
/// asymmetry exceeds `hermitian_tol`.
std::vector<double> hermitian_spectrum(const ComplexMatrix& h, double hermitian_tol = 1e-8);
Eigensystem hermitian_eigensystem(const ComplexMatrix& h, double hermitian_tol = 1e-8);
double min_eigenvalue(const ComplexMatrix& h, double hermitian_tol = 1e-8);

/// Transposes the bra/ket indices of one party.
ComplexMatrix partial_transpose(const ComplexMatrix& m, const SystemShape& shape, int party);
ComplexMatrix partial_transpose(const DensityOperator& rho, int party);

/// (op_0 (x) ... (x) op_{n-1}) psi without forming the D x D product.
ComplexVector apply_local(std::span<const ComplexMatrix> ops, const SystemShape& shape, const ComplexVector& psi);
PureState apply_local(std::span<const ComplexMatrix> ops, const PureState& psi);

/// Single-party reduced operator (partial trace over every other party).
ComplexMatrix reduced_single(const ComplexMatrix& rho, const SystemShape& shape, int party);

struct ValidityReport {
    double asymmetry = 0.0;
    double trace_error = 0.0;
    double min_eigenvalue = 0.0;
    bool hermitian = false;
    bool unit_trace = false;
    bool positive = false;

    bool is_state() const noexcept { return hermitian && unit_trace && positive; }
};

ValidityReport validate_density(const ComplexMatrix& rho, double tol = 1e-10);

} // namespace ghz
