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

#include <cmath>
#include <random>
#include <set>

#include "ghzsimplex/criteria.hpp"
#include "ghzsimplex/error.hpp"
#include "ghzsimplex/mixtures.hpp"
#include "ghzsimplex/weyl.hpp"
#include "test_util.hpp"

using namespace ghz;
using ghz::test::ket;
using ghz::test::random_density;
using ghz::test::random_unitary;
using ghz::test::random_vector;

namespace {

constexpr double kPi = 3.14159265358979323846;

DensityOperator pure_density(const SystemShape& s, const ComplexVector& v) {
    return DensityOperator::make(s, v * v.adjoint());
}

ComplexVector ghz_vector(int n, int d) {
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(std::pow(d, n)));
    for (int j = 0; j < d; ++j) v += ket(d, std::vector<int>(static_cast<std::size_t>(n), j));
    return v / std::sqrt(static_cast<double>(d));
}

DensityOperator ghz_density(int n, int d) { return pure_density(SystemShape::make(n, d), ghz_vector(n, d)); }

ProductVector comp(const SystemShape& s, std::vector<int> digits) { return ProductVector::computational(s, digits); }

ChiPair random_chi(std::mt19937_64& rng, const SystemShape& s) {
    std::vector<ComplexVector> a;
    std::vector<ComplexVector> b;
    for (int p = 0; p < s.parties(); ++p) {
        const ComplexMatrix u = random_unitary(rng, s.local_dim());
        a.push_back(u.col(0));
        b.push_back(u.col(1));
    }
    return {ProductVector::make(s, a, 1e-10), ProductVector::make(s, b, 1e-10)};
}

ComplexVector w_state() {
    ComplexVector w = ket(2, {0, 0, 1}) + ket(2, {0, 1, 0}) + ket(2, {1, 0, 0});
    return w / std::sqrt(3.0);
}

// Direct three-party formula with explicit swapped vectors.
double q_ghz_oracle3(const ComplexMatrix& rho, const ChiPair& chi) {
    const auto& a = chi.chi1.locals();
    const auto& b = chi.chi2.locals();
    auto prod = [](const ComplexVector& x, const ComplexVector& y, const ComplexVector& z) {
        std::vector<ComplexVector> f{x, y, z};
        return kron_vectors(f);
    };
    auto ev = [&](const ComplexVector& v) { return std::abs(v.dot(rho * v).real()); };
    double value = std::abs(prod(a[0], a[1], a[2]).dot(rho * prod(b[0], b[1], b[2])));
    value -= std::sqrt(ev(prod(b[0], a[1], a[2])) * ev(prod(a[0], b[1], b[2])));
    value -= std::sqrt(ev(prod(a[0], b[1], a[2])) * ev(prod(b[0], a[1], b[2])));
    value -= std::sqrt(ev(prod(a[0], a[1], b[2])) * ev(prod(b[0], b[1], a[2])));
    return 2.0 * value;
}

long long stirling2(int n, int k) {
    if (n == 0 && k == 0) return 1;
    if (n == 0 || k == 0) return 0;
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1);
}

DensityOperator random_biseparable(std::mt19937_64& rng) {
    const auto s = SystemShape::make(3, 2);
    std::uniform_int_distribution<int> terms(1, 4);
    std::uniform_int_distribution<int> cut(0, 2);
    std::uniform_real_distribution<double> w(0.05, 1.0);
    const int count = terms(rng);
    ComplexMatrix rho = ComplexMatrix::Zero(8, 8);
    double total = 0.0;
    for (int t = 0; t < count; ++t) {
        const int single = cut(rng);
        const ComplexVector one = random_vector(rng, 2);
        const ComplexVector two = random_vector(rng, 4);
        ComplexVector psi(8);
        for (int i = 0; i < 8; ++i) {
            const auto dg = s.digits(static_cast<std::size_t>(i));
            int rest = 0;
            for (int p = 0; p < 3; ++p) {
                if (p != single) rest = rest * 2 + dg[static_cast<std::size_t>(p)];
            }
            psi(i) = one(dg[static_cast<std::size_t>(single)]) * two(rest);
        }
        const double wt = w(rng);
        rho += wt * psi * psi.adjoint();
        total += wt;
    }
    return DensityOperator::make(s, rho / total);
}

} // namespace

TEST_CASE("k-partition fixtures") {
    const auto p32 = enumerate_k_partitions(3, 2);
    REQUIRE(p32.size() == 3);
    CHECK(p32[0] == KPartition{{0, 1}, {2}});
    CHECK(p32[1] == KPartition{{0, 2}, {1}});
    CHECK(p32[2] == KPartition{{0}, {1, 2}});
    const auto p33 = enumerate_k_partitions(3, 3);
    REQUIRE(p33.size() == 1);
    CHECK(p33[0] == KPartition{{0}, {1}, {2}});
    CHECK(enumerate_k_partitions(4, 2).size() == 7);
    CHECK_THROWS_AS(enumerate_k_partitions(3, 4), Error);
    CHECK_THROWS_AS(enumerate_k_partitions(3, 0), Error);
}

TEST_CASE("k-partitions are disjoint covers counted by Stirling numbers") {
    for (int n = 1; n <= 7; ++n) {
        for (int k = 1; k <= n; ++k) {
            const auto parts = enumerate_k_partitions(n, k);
            CHECK(static_cast<long long>(parts.size()) == stirling2(n, k));
            std::set<KPartition> distinct(parts.begin(), parts.end());
            CHECK(distinct.size() == parts.size());
            for (const auto& part : parts) {
                REQUIRE(part.size() == static_cast<std::size_t>(k));
                std::vector<int> seen(static_cast<std::size_t>(n), 0);
                for (const auto& block : part) {
                    CHECK_FALSE(block.empty());
                    for (int v : block) ++seen[static_cast<std::size_t>(v)];
                }
                for (int c : seen) CHECK(c == 1);
            }
        }
    }
}

TEST_CASE("product vector validation") {
    const auto s = SystemShape::make(3, 2);
    std::vector<ComplexVector> bad{ComplexVector::Ones(2), ComplexVector::Unit(2, 0), ComplexVector::Unit(2, 0)};
    CHECK_THROWS_AS(ProductVector::make(s, bad), Error);
    std::vector<ComplexVector> short_list{ComplexVector::Unit(2, 0)};
    CHECK_THROWS_AS(ProductVector::make(s, short_list), Error);
    CHECK_THROWS_AS(comp(s, {0, 2, 0}), Error);
    const auto v = comp(s, {1, 0, 1});
    CHECK(test::max_abs(v.full() - ket(2, {1, 0, 1})) == 0.0);
    const auto sw = v.swapped(comp(s, {0, 1, 0}), std::vector<int>{0, 2});
    CHECK(test::max_abs(sw.full() - ket(2, {0, 0, 0})) == 0.0);
}

TEST_CASE("permuted diagonal term fixtures") {
    const auto s = SystemShape::make(3, 2);
    const auto c1 = comp(s, {0, 0, 0});
    const auto c2 = comp(s, {1, 1, 1});
    const std::vector<int> block{0};
    CHECK(permuted_diagonal_term(ghz_density(3, 2), c1, c2, block) == doctest::Approx(0.0));
    const auto mixed = DensityOperator::make(s, ComplexMatrix::Identity(8, 8) / 8.0);
    CHECK(permuted_diagonal_term(mixed, c1, c2, block) == doctest::Approx(0.015625).epsilon(1e-14));
    const std::vector<int> none;
    const auto ghz = ghz_density(3, 2);
    CHECK(permuted_diagonal_term(ghz, c1, c2, none) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("i_k fixtures") {
    const auto s = SystemShape::make(3, 2);
    const auto c1 = comp(s, {0, 0, 0});
    const auto c2 = comp(s, {1, 1, 1});
    const auto ghz = ghz_density(3, 2);
    const auto r2 = i_k(ghz, c1, c2, 2);
    CHECK(r2.value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r2.detected);
    CHECK(r2.criterion == "i_2");
    CHECK(i_k(ghz, c1, c2, 3).value == doctest::Approx(0.5).epsilon(1e-12));
    const auto mixed = DensityOperator::make(s, ComplexMatrix::Identity(8, 8) / 8.0);
    CHECK(i_k(mixed, c1, c2, 2).value == doctest::Approx(-3.0 / 8.0).epsilon(1e-12));
    CHECK(i_k(mixed, c1, c2, 3).value == doctest::Approx(-1.0 / 8.0).epsilon(1e-12));
    const auto prod = pure_density(s, ket(2, {0, 0, 0}));
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
        const auto chi = random_chi(rng, s);
        CHECK(i_k(prod, chi.chi1, chi.chi2, 2).value <= 1e-12);
        CHECK(i_k(prod, chi.chi1, chi.chi2, 3).value <= 1e-12);
    }
    CHECK_THROWS_AS(i_k(ghz, c1, c2, 1), Error);
    CHECK_THROWS_AS(i_k(ghz, c1, c2, 4), Error);
}

TEST_CASE("i_2 equals half of q_ghz") {
    std::mt19937_64 rng(11);
    const auto s = SystemShape::make(3, 2);
    for (int t = 0; t < 20; ++t) {
        const auto rho = DensityOperator::make(s, random_density(rng, 8));
        const auto chi = random_chi(rng, s);
        CHECK(i_k(rho, chi.chi1, chi.chi2, 2).value * 2.0 ==
              doctest::Approx(q_ghz(rho, chi.chi1, chi.chi2).value).epsilon(1e-10));
    }
}

TEST_CASE("i_k nesting on random simplex states") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& [n, d] : {std::pair{3, 2}, std::pair{3, 3}, std::pair{4, 2}}) {
        const auto s = SystemShape::make(n, d);
        const auto labels = all_labels(s);
        int detected_pairs = 0;
        for (int t = 0; t < 60; ++t) {
            SimplexMixture m{s, {}};
            double total = 0.0;
            std::vector<double> w;
            for (std::size_t i = 0; i < labels.size(); ++i) {
                const double x = -std::log(u(rng) + 1e-300);
                w.push_back(t % 2 == 0 && i == 0 ? 4.0 * x + 2.0 : x);
                total += w.back();
            }
            for (std::size_t i = 0; i < labels.size(); ++i) m.weights.emplace_back(labels[i], w[i] / total);
            const auto rho = simplex_state(m);
            const auto chi = canonical_chi(labels[0]);
            for (int k = 2; k < n; ++k) {
                const double lo = i_k(rho, chi.chi1, chi.chi2, k).value;
                const double hi = i_k(rho, chi.chi1, chi.chi2, k + 1).value;
                CHECK(hi >= lo - 1e-9);
                if (lo > kDetectionTolerance) {
                    CHECK(hi > kDetectionTolerance);
                    ++detected_pairs;
                }
            }
        }
        CHECK(detected_pairs > 0);
    }
}

TEST_CASE("q_ghz fixtures") {
    const auto s = SystemShape::make(3, 2);
    const auto c1 = comp(s, {0, 0, 0});
    const auto c2 = comp(s, {1, 1, 1});
    const auto r = q_ghz(ghz_density(3, 2), c1, c2);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.detected);
    const auto mixed = DensityOperator::make(s, ComplexMatrix::Identity(8, 8) / 8.0);
    const auto m = q_ghz(mixed, c1, c2);
    CHECK(m.value == doctest::Approx(-0.75).epsilon(1e-12));
    CHECK_FALSE(m.detected);
    const auto chi = canonical_chi(GhzLabel::zero(s));
    for (double a : {0.0, 0.1, 0.2, 3.0 / 7.0, 0.6, 1.0}) {
        const auto rho = sigma_noise(GhzLabel::zero(s), a);
        CHECK(q_ghz(rho, chi.chi1, chi.chi2).value == doctest::Approx(2.0 * (a / 2.0 - 3.0 * (1.0 - a) / 8.0)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(q_ghz(mixed, c1, comp(s, {1, 0, 1})), Error);
    const auto s3 = SystemShape::make(3, 3);
    CHECK_THROWS_AS(q_ghz(mixed, comp(s3, {0, 0, 0}), comp(s3, {2, 2, 2})), Error);
}

TEST_CASE("q_ghz matches the explicit three-party formula") {
    std::mt19937_64 rng(17);
    for (int d : {2, 3}) {
        const auto s = SystemShape::make(3, d);
        const auto dim = static_cast<Eigen::Index>(s.dimension());
        for (int t = 0; t < 25; ++t) {
            const ComplexMatrix m = random_density(rng, dim);
            const auto chi = random_chi(rng, s);
            CHECK(q_ghz(DensityOperator::make(s, m), chi.chi1, chi.chi2).value ==
                  doctest::Approx(q_ghz_oracle3(m, chi)).epsilon(1e-10));
        }
    }
}

TEST_CASE("q_ghz covariance under co-rotated local unitaries") {
    std::mt19937_64 rng(19);
    for (const auto& [n, d] : {std::pair{3, 2}, std::pair{3, 3}, std::pair{4, 2}}) {
        const auto s = SystemShape::make(n, d);
        const auto dim = static_cast<Eigen::Index>(s.dimension());
        for (int t = 0; t < 10; ++t) {
            const ComplexMatrix m = random_density(rng, dim);
            const auto chi = random_chi(rng, s);
            std::vector<ComplexMatrix> us;
            std::vector<ComplexVector> a;
            std::vector<ComplexVector> b;
            for (int p = 0; p < n; ++p) {
                us.push_back(random_unitary(rng, d));
                a.push_back(us.back() * chi.chi1.locals()[static_cast<std::size_t>(p)]);
                b.push_back(us.back() * chi.chi2.locals()[static_cast<std::size_t>(p)]);
            }
            const ComplexMatrix u = kron_all(us);
            const auto rotated = DensityOperator::make(s, u * m * u.adjoint());
            const double before = q_ghz(DensityOperator::make(s, m), chi.chi1, chi.chi2).value;
            const double after =
                q_ghz(rotated, ProductVector::make(s, a, 1e-10), ProductVector::make(s, b, 1e-10)).value;
            CHECK(std::abs(before - after) < 1e-10);
        }
    }
}

TEST_CASE("q_ghz_best picks the maximum") {
    const auto s = SystemShape::make(3, 2);
    const auto label = GhzLabel::make(s, {1}, 0, 1);
    const auto rho = sigma_noise(label, 0.8);
    std::vector<ChiPair> chis;
    for (const auto& l : all_labels(s)) chis.push_back(canonical_chi(l));
    const auto best = q_ghz_best(rho, chis);
    double top = -1e9;
    for (const auto& c : chis) top = std::max(top, q_ghz(rho, c.chi1, c.chi2).value);
    CHECK(best.value == top);
    CHECK(best.value == doctest::Approx(2.0 * (0.4 - 3.0 * 0.2 / 8.0)).epsilon(1e-12));
    const auto idx = best.witness.at("index").get<std::size_t>();
    CHECK(all_labels(s)[idx] == label);
    CHECK_THROWS_AS(q_ghz_best(rho, std::span<const ChiPair>{}), Error);
}

TEST_CASE("q_ghz never positive on biseparable mixtures") {
    std::mt19937_64 rng(23);
    OptimizerOptions opts;
    opts.restarts = 3;
    opts.seed = 5;
    for (int t = 0; t < 40; ++t) {
        const auto rho = random_biseparable(rng);
        const auto r = optimize_criterion(rho, CriterionKind::QGhz, opts);
        CHECK(r.value <= 1e-9);
        CHECK_FALSE(r.detected);
    }
}

TEST_CASE("q_dicke fixtures") {
    const auto s = SystemShape::make(3, 2);
    const auto w = q_dicke(pure_density(s, w_state()), 1);
    CHECK(w.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w.detected);
    CHECK(q_dicke(ghz_density(3, 2), 1).value == doctest::Approx(0.0).scale(1.0));
    CHECK(std::abs(q_dicke(ghz_density(3, 2), 1).value) < 1e-12);
    const auto mixed = DensityOperator::make(s, ComplexMatrix::Identity(8, 8) / 8.0);
    CHECK(q_dicke(mixed, 1).value < 0.0);
    CHECK_THROWS_AS(q_dicke(mixed, 2), Error);
    CHECK_THROWS_AS(q_dicke(DensityOperator::make(SystemShape::make(3, 3), ComplexMatrix::Identity(27, 27) / 27.0), 1),
                    Error);
    std::vector<ComplexMatrix> identity(3, ComplexMatrix::Identity(2, 2));
    CHECK(q_dicke(pure_density(s, w_state()), 1, identity).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("q_dicke real form agrees on real states") {
    std::mt19937_64 rng(29);
    const auto s = SystemShape::make(3, 2);
    for (int t = 0; t < 20; ++t) {
        const ComplexMatrix m = random_density(rng, 8).real().cast<Complex>();
        const auto rho = DensityOperator::make(s, m);
        const double re = q_dicke3_real_form(rho);
        const double general = q_dicke(rho, 1).value;
        CHECK(re <= general + 1e-12);
    }
    for (double p : {0.2, 0.5, 0.9}) {
        const ComplexVector w = w_state();
        const ComplexMatrix m = p * w * w.adjoint() + (1.0 - p) / 8.0 * ComplexMatrix::Identity(8, 8);
        const auto rho = DensityOperator::make(s, m);
        CHECK(q_dicke3_real_form(rho) == doctest::Approx(q_dicke(rho, 1).value).epsilon(1e-12));
    }
}

TEST_CASE("q_dicke separates W from biseparable states") {
    std::mt19937_64 rng(31);
    const auto s = SystemShape::make(3, 2);
    const double w = q_dicke(pure_density(s, w_state()), 1).value;
    double top = -1e9;
    for (int t = 0; t < 100; ++t) top = std::max(top, q_dicke(random_biseparable(rng), 1).value);
    CHECK(top <= 1e-9);
    CHECK(w >= top + 0.5);
}

TEST_CASE("PPT fixtures") {
    const auto s = SystemShape::make(3, 2);
    for (double a : {0.0, 0.1, 0.2, 0.5, 1.0}) {
        const auto rho = sigma_noise(GhzLabel::zero(s), a);
        CHECK(ppt_min_eig_all(rho) == doctest::Approx((1.0 - 5.0 * a) / 8.0).epsilon(1e-12));
        for (int p = 0; p < 3; ++p) CHECK(ppt_min_eig(rho, p) == doctest::Approx((1.0 - 5.0 * a) / 8.0).epsilon(1e-12));
    }
    CHECK(ppt_min_eig_all(pure_density(s, ket(2, {0, 1, 1}))) >= -1e-12);
    CHECK_THROWS_AS(ppt_min_eig(sigma_noise(GhzLabel::zero(s), 0.3), 3), Error);
}

TEST_CASE("PPT minimum of sigma_noise is label independent") {
    for (const auto& [n, d] : {std::pair{3, 2}, std::pair{3, 3}}) {
        const auto s = SystemShape::make(n, d);
        for (double a : {0.1, 0.3, 0.7}) {
            const double ref = ppt_min_eig_all(sigma_noise(GhzLabel::zero(s), a));
            for (const auto& l : all_labels(s)) CHECK(std::abs(ppt_min_eig_all(sigma_noise(l, a)) - ref) < 1e-12);
        }
    }
}

TEST_CASE("U_C parameterisation fixtures") {
    const ComplexMatrix id = uc_unitary(UnitaryParameters::zero(3));
    CHECK(test::max_abs(id - ComplexMatrix::Identity(3, 3)) < 1e-15);
    Eigen::MatrixXd lam = Eigen::MatrixXd::Zero(2, 2);
    lam(0, 1) = kPi / 4.0;
    const ComplexMatrix u = uc_unitary(UnitaryParameters::make(2, lam));
    const double c = std::cos(kPi / 4.0);
    ComplexMatrix expected(2, 2);
    expected << c, c, -c, c;
    CHECK(test::max_abs(u - expected) < 1e-15);
    Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
    bad(0, 1) = 2.0;
    CHECK_THROWS_AS(UnitaryParameters::make(2, bad), Error);
    bad(0, 1) = 0.0;
    bad(1, 0) = 7.0;
    CHECK_THROWS_AS(UnitaryParameters::make(2, bad), Error);
    CHECK_THROWS_AS(UnitaryParameters::make(2, Eigen::MatrixXd::Zero(3, 3)), Error);
    CHECK_THROWS_AS(UnitaryParameters::zero(1), Error);
}

TEST_CASE("U_C is unitary for random parameters") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int d : {2, 3, 4}) {
        for (int t = 0; t < 50; ++t) {
            Eigen::MatrixXd lam(d, d);
            for (int r = 0; r < d; ++r) {
                for (int c = 0; c < d; ++c) lam(r, c) = u(rng) * (c > r ? kPi / 2.0 : 2.0 * kPi);
            }
            const ComplexMatrix m = uc_unitary(UnitaryParameters::make(d, lam));
            CHECK(test::max_abs(m.adjoint() * m - ComplexMatrix::Identity(d, d)) < 1e-12);
        }
    }
    CHECK(optimizer_dimension(3, 2) == 6);
    CHECK(optimizer_dimension(3, 3) == 18);
}

TEST_CASE("optimizer examples") {
    const auto s = SystemShape::make(3, 2);
    const auto ghz = ghz_density(3, 2);
    OptimizerOptions opts;
    opts.restarts = 4;
    const auto base = q_ghz(ghz, comp(s, {0, 0, 0}), comp(s, {1, 1, 1}));
    const auto opt = optimize_criterion(ghz, CriterionKind::QGhz, opts);
    CHECK(opt.value >= base.value - 1e-12);
    CHECK(opt.criterion == "q_ghz");

    const auto s3 = SystemShape::make(3, 3);
    const auto noise = sigma_noise(GhzLabel::zero(s3), 0.5);
    const auto r3 = optimize_criterion(noise, CriterionKind::QGhz, opts);
    CHECK(std::abs(r3.value - 2.0 * (0.5 / 3.0 - 3.0 * 0.5 / 27.0)) < 1e-6);

    std::mt19937_64 rng(41);
    for (int d : {2, 3}) {
        const auto sd = SystemShape::make(3, d);
        std::vector<ComplexMatrix> us;
        for (int p = 0; p < 3; ++p) us.push_back(random_unitary(rng, d));
        const ComplexVector psi = kron_all(us) * ghz_vector(3, d);
        OptimizerOptions o;
        o.restarts = 8;
        o.seed = 3;
        const auto r = optimize_criterion(pure_density(sd, psi), CriterionKind::QGhz, o);
        // Two local vectors per party reach at most 2/d on the d-term GHZ state.
        const double aligned = q_ghz(ghz_density(3, d), comp(sd, {0, 0, 0}), comp(sd, {d - 1, d - 1, d - 1})).value;
        CHECK(aligned == doctest::Approx(2.0 / d).epsilon(1e-12));
        CHECK(std::abs(r.value - aligned) < 1e-6);
    }
}

TEST_CASE("optimizer is deterministic across seeds and threads") {
    std::mt19937_64 rng(43);
    const auto s = SystemShape::make(3, 2);
    const auto rho = DensityOperator::make(s, random_density(rng, 8));
    OptimizerOptions a;
    a.restarts = 4;
    a.seed = 99;
    a.max_evaluations = 600;
    const auto r1 = optimize_criterion(rho, CriterionKind::QGhz, a);
    const auto r2 = optimize_criterion(rho, CriterionKind::QGhz, a);
    CHECK(r1.value == r2.value);
    CHECK(to_json(r1).dump() == to_json(r2).dump());
    OptimizerOptions b = a;
    b.threads = 3;
    CHECK(optimize_criterion(rho, CriterionKind::QGhz, b).value == r1.value);
    const auto d1 = optimize_criterion(rho, CriterionKind::QDicke, a);
    CHECK(d1.criterion == "q_dicke");
    CHECK(d1.value >= q_dicke(rho, 1).value - 1e-12);
}

TEST_CASE("optimized Dicke criterion recovers rotated W") {
    std::mt19937_64 rng(47);
    const auto s = SystemShape::make(3, 2);
    std::vector<ComplexMatrix> us;
    for (int p = 0; p < 3; ++p) us.push_back(random_unitary(rng, 2));
    const ComplexVector psi = kron_all(us) * w_state();
    OptimizerOptions o;
    o.restarts = 8;
    o.seed = 1;
    const auto r = optimize_criterion(pure_density(s, psi), CriterionKind::QDicke, o);
    CHECK(std::abs(r.value - 1.0) < 1e-6);
}

TEST_CASE("criterion result JSON round trip") {
    std::mt19937_64 rng(53);
    const auto s = SystemShape::make(3, 2);
    const auto rho = DensityOperator::make(s, random_density(rng, 8));
    const auto chi = random_chi(rng, s);
    for (const auto& r : {q_ghz(rho, chi.chi1, chi.chi2), i_k(rho, chi.chi1, chi.chi2, 3), q_dicke(rho, 1)}) {
        const auto back = criterion_result_from_json(nlohmann::json::parse(to_json(r).dump()));
        CHECK(back.criterion == r.criterion);
        CHECK(back.value == r.value);
        CHECK(back.detected == r.detected);
        CHECK(back.witness == r.witness);
    }
    CHECK(std::string(criterion_name(CriterionKind::QDicke)) == "q_dicke");
}
