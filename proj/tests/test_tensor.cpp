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

#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "ghzsimplex/error.hpp"
#include "ghzsimplex/mixtures.hpp"
#include "ghzsimplex/tensor.hpp"
#include "ghzsimplex/weyl.hpp"
#include "test_util.hpp"

using namespace ghz;
using ghz::test::ket;
using ghz::test::max_abs;

namespace {

ComplexMatrix ghz3_projector() {
    ComplexVector g = ComplexVector::Zero(8);
    g(0) = g(7) = 1.0 / std::sqrt(2.0);
    return g * g.adjoint();
}

/// Partial transpose by explicit digit loops, independent of the library.
ComplexMatrix pt_oracle(const ComplexMatrix& m, int n, int d, int party) {
    const auto dim = m.rows();
    ComplexMatrix out(dim, dim);
    auto digits = [&](Eigen::Index idx) {
        std::vector<int> v(static_cast<std::size_t>(n));
        for (int p = n - 1; p >= 0; --p) {
            v[static_cast<std::size_t>(p)] = static_cast<int>(idx % d);
            idx /= d;
        }
        return v;
    };
    auto index = [&](const std::vector<int>& v) {
        Eigen::Index idx = 0;
        for (int x : v) idx = idx * d + x;
        return idx;
    };
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            auto rd = digits(r);
            auto cd = digits(c);
            std::swap(rd[static_cast<std::size_t>(party)], cd[static_cast<std::size_t>(party)]);
            out(index(rd), index(cd)) = m(r, c);
        }
    }
    return out;
}

} // namespace

TEST_CASE("system shape validates and indexes with party 0 most significant") {
    CHECK_THROWS_AS(SystemShape::make(1, 2), Error);
    CHECK_THROWS_AS(SystemShape::make(3, 1), Error);
    CHECK_THROWS_AS(SystemShape::make(21, 2), Error);
    const auto s = SystemShape::make(3, 2);
    CHECK(s.dimension() == 8);
    const std::vector<int> d011{0, 1, 1};
    CHECK(s.index(d011) == 3);
    CHECK(s.stride(0) == 4);
    CHECK(s.digit(3, 0) == 0);
    CHECK(s.digit(3, 2) == 1);
    const auto q = SystemShape::make(3, 3);
    for (std::size_t i = 0; i < q.dimension(); ++i) CHECK(q.index(q.digits(i)) == i);
}

TEST_CASE("pure state and density operator constructors") {
    const auto s = SystemShape::make(2, 2);
    CHECK_THROWS_AS(PureState::make(s, ComplexVector::Ones(4)), Error);
    CHECK_THROWS_AS(PureState::make(s, ComplexVector::Zero(3)), Error);
    ComplexMatrix m = ComplexMatrix::Identity(4, 4) / 4.0;
    CHECK_NOTHROW(DensityOperator::make(s, m, true));
    CHECK_THROWS_AS(DensityOperator::make(s, ComplexMatrix::Identity(4, 4)), Error);
    ComplexMatrix pseudo = m;
    pseudo(0, 0) = -0.25;
    pseudo(1, 1) = 0.75;
    CHECK_NOTHROW(DensityOperator::make(s, pseudo));
    CHECK_THROWS_AS(DensityOperator::make(s, pseudo, true), Error);
    ComplexMatrix skew = m;
    skew(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityOperator::make(s, skew), Error);
}

TEST_CASE("kron fixtures and index oracle") {
    CHECK(max_abs(kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)) - ComplexMatrix::Identity(4, 4)) ==
          0.0);
    ComplexMatrix j(2, 2);
    j << 0, 1, -1, 0;
    const ComplexMatrix k = kron(j, ComplexMatrix::Identity(2, 2));
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected.block(0, 2, 2, 2) = ComplexMatrix::Identity(2, 2);
    expected.block(2, 0, 2, 2) = -ComplexMatrix::Identity(2, 2);
    CHECK(max_abs(k - expected) == 0.0);

    std::mt19937_64 rng(1);
    const ComplexMatrix a = test::random_matrix(rng, 2, 3);
    const ComplexMatrix b = test::random_matrix(rng, 3, 2);
    const ComplexMatrix ab = kron(a, b);
    REQUIRE(ab.rows() == 6);
    REQUIRE(ab.cols() == 6);
    for (int i = 0; i < 2; ++i) {
        for (int jj = 0; jj < 3; ++jj) {
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 2; ++c) CHECK(std::abs(ab(i * 3 + r, jj * 2 + c) - a(i, jj) * b(r, c)) == 0.0);
            }
        }
    }
}

TEST_CASE("kron is associative") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 10; ++t) {
        const ComplexMatrix a = test::random_matrix(rng, 2, 2);
        const ComplexMatrix b = test::random_matrix(rng, 3, 3);
        const ComplexMatrix c = test::random_matrix(rng, 2, 2);
        CHECK(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))) < 1e-14);
        const std::vector<ComplexMatrix> all{a, b, c};
        CHECK(max_abs(kron_all(all) - kron(a, kron(b, c))) < 1e-14);
    }
    std::vector<ComplexVector> vs{ket(2, {1}), ket(2, {0}), ket(2, {1})};
    CHECK(max_abs(kron_vectors(vs) - ket(2, {1, 0, 1})) == 0.0);
}

TEST_CASE("hermitian spectrum fixtures") {
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(0, 0) = 3;
    d(1, 1) = 1;
    d(2, 2) = 2;
    CHECK(test::max_diff(hermitian_spectrum(d), {1, 2, 3}) < 1e-14);
    std::vector<double> ghz(8, 0.0);
    ghz[7] = 1.0;
    CHECK(test::max_diff(hermitian_spectrum(ghz3_projector()), ghz) < 1e-12);
    const auto facet = hermitian_spectrum(facet_ray(0.25, 0.5).matrix());
    CHECK(test::max_diff(facet, {0.0625, 0.0625, 0.0625, 0.0625, 0.0625, 0.0625, 0.1875, 0.4375}) < 1e-12);
    ComplexMatrix skew = d;
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_spectrum(skew), Error);
    CHECK_THROWS_AS(hermitian_spectrum(ComplexMatrix::Zero(2, 3)), Error);
}

TEST_CASE("hermitian spectrum sums to the trace and is unitarily invariant") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        const ComplexMatrix a = test::random_matrix(rng, 9, 9);
        const ComplexMatrix h = a + a.adjoint();
        const auto spec = hermitian_spectrum(h);
        CHECK(std::abs(std::accumulate(spec.begin(), spec.end(), 0.0) - h.trace().real()) < 1e-10);
        const ComplexMatrix u = test::random_unitary(rng, 9);
        CHECK(test::max_diff(spec, hermitian_spectrum(u * h * u.adjoint())) < 1e-9);
        const auto es = hermitian_eigensystem(h);
        CHECK(max_abs(h * es.vectors - es.vectors * es.values.asDiagonal()) < 1e-10);
        CHECK(std::abs(min_eigenvalue(h) - spec.front()) < 1e-12);
    }
}

TEST_CASE("partial transpose fixtures") {
    const auto s = SystemShape::make(3, 2);
    CHECK(std::abs(min_eigenvalue(partial_transpose(ghz3_projector(), s, 0)) + 0.5) < 1e-12);
    std::mt19937_64 rng(4);
    const ComplexMatrix ra = test::random_density(rng, 2);
    const ComplexMatrix rb = test::random_density(rng, 2);
    const ComplexMatrix rc = test::random_density(rng, 2);
    const ComplexMatrix prod = kron(ra, kron(rb, rc));
    const auto spec = hermitian_spectrum(prod);
    for (int p = 0; p < 3; ++p) {
        CHECK(test::max_diff(hermitian_spectrum(partial_transpose(prod, s, p)), spec) < 1e-12);
        const ComplexMatrix m = test::random_matrix(rng, 8, 8);
        CHECK(max_abs(partial_transpose(partial_transpose(m, s, p), s, p) - m) == 0.0);
        CHECK(max_abs(partial_transpose(m, s, p) - pt_oracle(m, 3, 2, p)) == 0.0);
    }
    const auto q = SystemShape::make(3, 3);
    const ComplexMatrix m = test::random_matrix(rng, 27, 27);
    for (int p = 0; p < 3; ++p) CHECK(max_abs(partial_transpose(m, q, p) - pt_oracle(m, 3, 3, p)) == 0.0);
}

TEST_CASE("partial transpose preserves trace, hermiticity and swap symmetry") {
    std::mt19937_64 rng(5);
    const auto s = SystemShape::make(3, 2);
    for (int t = 0; t < 10; ++t) {
        const ComplexMatrix rho = test::random_density(rng, 8);
        for (int p = 0; p < 3; ++p) {
            const ComplexMatrix pt = partial_transpose(rho, s, p);
            CHECK(std::abs(pt.trace() - rho.trace()) < 1e-14);
            CHECK(hermitian_asymmetry(pt) < 1e-15);
        }
        // State symmetric under exchange of parties 1 and 2.
        ComplexMatrix swap = ComplexMatrix::Zero(8, 8);
        for (int i = 0; i < 8; ++i) {
            const int j = (i & 4) | ((i & 1) << 1) | ((i & 2) >> 1);
            swap(j, i) = 1.0;
        }
        const ComplexMatrix sym = 0.5 * (rho + swap * rho * swap);
        CHECK(test::max_diff(hermitian_spectrum(partial_transpose(sym, s, 1)),
                             hermitian_spectrum(partial_transpose(sym, s, 2))) < 1e-12);
    }
}

TEST_CASE("apply_local fixtures and kron oracle") {
    const auto s2 = SystemShape::make(2, 2);
    const std::vector<ComplexMatrix> ops{ComplexMatrix::Identity(2, 2), weyl(WeylIndex::make(2, 1, 1))};
    CHECK(max_abs(apply_local(ops, s2, ket(2, {1, 0})) + ket(2, {1, 1})) < 1e-15);
    std::mt19937_64 rng(6);
    const ComplexVector psi = test::random_vector(rng, 8);
    const std::vector<ComplexMatrix> ids(3, ComplexMatrix::Identity(2, 2));
    CHECK(max_abs(apply_local(ids, SystemShape::make(3, 2), psi) - psi) == 0.0);
    for (const auto& [n, d] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}, {3, 3}, {4, 3}, {4, 2}}) {
        const auto shape = SystemShape::make(n, d);
        std::vector<ComplexMatrix> us;
        for (int p = 0; p < n; ++p) us.push_back(test::random_unitary(rng, d));
        const ComplexVector v = test::random_vector(rng, static_cast<Eigen::Index>(shape.dimension()));
        const ComplexVector out = apply_local(us, shape, v);
        CHECK(std::abs(out.norm() - 1.0) < 1e-12);
        CHECK(max_abs(out - kron_all(us) * v) < 1e-12);
    }
}

TEST_CASE("reduced single-party operator matches a loop oracle") {
    std::mt19937_64 rng(7);
    const auto s = SystemShape::make(3, 3);
    const ComplexMatrix rho = test::random_density(rng, 27);
    for (int p = 0; p < 3; ++p) {
        ComplexMatrix oracle = ComplexMatrix::Zero(3, 3);
        for (std::size_t r = 0; r < 27; ++r) {
            for (std::size_t c = 0; c < 27; ++c) {
                auto rd = s.digits(r);
                auto cd = s.digits(c);
                bool same = true;
                for (int q = 0; q < 3; ++q) same = same && (q == p || rd[static_cast<std::size_t>(q)] == cd[static_cast<std::size_t>(q)]);
                if (same) oracle(rd[static_cast<std::size_t>(p)], cd[static_cast<std::size_t>(p)]) += rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            }
        }
        CHECK(max_abs(reduced_single(rho, s, p) - oracle) < 1e-14);
    }
}

TEST_CASE("validity report") {
    const auto mixed = validate_density(ComplexMatrix::Identity(8, 8) / 8.0);
    CHECK(mixed.is_state());
    CHECK(std::abs(mixed.min_eigenvalue - 0.125) < 1e-14);
    const auto outside = validate_density(facet_ray(0.3, 1.2).matrix());
    CHECK_FALSE(outside.is_state());
    CHECK(std::abs(outside.min_eigenvalue + 0.025) < 1e-12);
    ComplexMatrix skew = ComplexMatrix::Identity(4, 4) / 4.0;
    skew(0, 1) = 0.01;
    const auto bad = validate_density(skew);
    CHECK_FALSE(bad.hermitian);
    CHECK_FALSE(bad.is_state());
}
