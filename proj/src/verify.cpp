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

#include "ghzsimplex/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>

#include "ghzsimplex/closed_forms.hpp"
#include "ghzsimplex/criteria.hpp"
#include "ghzsimplex/error.hpp"
#include "ghzsimplex/interferometer.hpp"
#include "ghzsimplex/mixtures.hpp"
#include "ghzsimplex/scanner.hpp"
#include "ghzsimplex/weyl.hpp"

namespace ghz {

const char* check_status_name(CheckStatus s) {
    switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Deviation: return "deviation";
    case CheckStatus::Fail: return "fail";
    }
    return "";
}

nlohmann::json to_json(const CheckResult& r) {
    return {{"id", r.id},
            {"title", r.title},
            {"soft", r.soft},
            {"status", check_status_name(r.status)},
            {"detail", r.detail},
            {"seconds", r.seconds}};
}

namespace {

using cd = std::complex<double>;

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string sci(double v) { return fmt("%.3g", v); }

CheckResult start_result(int id, const char* title, bool soft) {
    CheckResult r;
    r.id = id;
    r.title = title;
    r.soft = soft;
    return r;
}

CheckStatus status_of(bool ok) { return ok ? CheckStatus::Pass : CheckStatus::Fail; }

struct Accumulator {
    double worst = 0.0;
    void add(double err) {
        if (!(err <= worst)) worst = std::isnan(err) ? INFINITY : std::max(worst, err);
    }
};

ComplexVector random_vector(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> g;
    ComplexVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = cd(g(rng), g(rng));
    return v / v.norm();
}

std::vector<double> random_weights(std::mt19937_64& rng, int count) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> w(static_cast<std::size_t>(count));
    double total = 0.0;
    for (auto& x : w) total += (x = e(rng));
    for (auto& x : w) x /= total;
    return w;
}

/// Three-qubit pure state with party `single` factored off the other two.
ComplexVector biproduct_3qubit(const ComplexVector& a, const ComplexVector& b, int single) {
    ComplexVector out(8);
    for (int i = 0; i < 8; ++i) {
        const int d0 = (i >> 2) & 1;
        const int d1 = (i >> 1) & 1;
        const int d2 = i & 1;
        const int ds[3] = {d0, d1, d2};
        int rest = 0;
        for (int p = 0; p < 3; ++p) {
            if (p != single) rest = rest * 2 + ds[p];
        }
        out(i) = a(ds[single]) * b(rest);
    }
    return out;
}

ProductVector random_product(std::mt19937_64& rng, const SystemShape& shape) {
    std::vector<ComplexVector> locals;
    for (int p = 0; p < shape.parties(); ++p) locals.push_back(random_vector(rng, shape.local_dim()));
    return ProductVector::make(shape, std::move(locals));
}

double timed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

CheckResult check_basis(const VerifyOptions&) {
    CheckResult r = start_result(1, "basis orthonormality", false);
    const auto start = std::chrono::steady_clock::now();
    const std::vector<std::pair<int, int>> cases{{2, 2}, {3, 2}, {3, 3}, {4, 2}, {4, 3}, {5, 2}};
    Accumulator acc;
    for (const auto& [n, d] : cases) {
        const SystemShape shape = SystemShape::make(n, d);
        const auto basis = ghz_basis(shape);
        ComplexMatrix b(static_cast<Eigen::Index>(shape.dimension()), static_cast<Eigen::Index>(basis.size()));
        for (std::size_t j = 0; j < basis.size(); ++j) b.col(static_cast<Eigen::Index>(j)) = basis[j].amplitudes();
        const ComplexMatrix gram = b.adjoint() * b;
        acc.add((gram - ComplexMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff());
        if (static_cast<Eigen::Index>(basis.size()) != static_cast<Eigen::Index>(shape.dimension())) acc.add(INFINITY);
    }
    r.seconds = timed_seconds(start);
    r.status = status_of(acc.worst < 1e-10 && r.seconds < 5.0);
    r.detail = "max |Gram - 1| = " + sci(acc.worst) + ", " + fmt("%.2f", r.seconds) + " s";
    return r;
}

CheckResult check_facet(const VerifyOptions&) {
    CheckResult r = start_result(2, "facet ray spectrum", false);
    Accumulator acc;
    for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
            const double alpha = i / 20.0;
            const double mu = 2.0 * j / 20.0;
            const auto closed = facet_eigs(alpha, mu);
            const auto numeric = hermitian_spectrum(facet_ray(alpha, mu).matrix());
            if (closed.size() != numeric.size()) {
                acc.add(INFINITY);
                continue;
            }
            for (std::size_t k = 0; k < closed.size(); ++k) acc.add(std::abs(closed[k] - numeric[k]));
        }
    }
    r.status = status_of(acc.worst < 1e-10);
    r.detail = "21x21 grid, mu in [0,2], max error " + sci(acc.worst);
    return r;
}

CheckResult check_noise_thresholds(const VerifyOptions& options) {
    CheckResult r = start_result(3, "noisy GHZ thresholds", false);
    bool ok = true;
    std::string detail;
    for (int d : {2, 3}) {
        const SystemShape shape = SystemShape::make(3, d);
        const GhzLabel zero = GhzLabel::zero(shape);
        const double ppt_expected = 1.0 / (d * d + 1.0);
        const double gme_expected = 3.0 / (d * d + 3.0);
        const double ppt = find_threshold([&](double a) { return ppt_min_eig_all(sigma_noise(zero, a)); }, 0.0, 1.0);
        const double closed = find_threshold([&](double a) { return q0_noise(3, d, a); }, 0.0, 1.0);
        OptimizerOptions o;
        o.restarts = 32;
        o.seed = options.seed;
        o.threads = options.threads;
        const double numeric = find_threshold(
            [&](double a) { return optimize_criterion(sigma_noise(zero, a), CriterionKind::QGhz, o).value; }, 0.0,
            1.0, 1e-7);
        const double e1 = std::abs(ppt - ppt_expected);
        const double e2 = std::abs(closed - gme_expected);
        const double e3 = std::abs(numeric - gme_expected);
        ok = ok && e1 < 1e-8 && e2 < 1e-6 && e3 < 1e-4;
        detail += "d=" + std::to_string(d) + ": ppt err " + sci(e1) + ", q0 closed err " + sci(e2) +
                  ", q0 optimizer err " + sci(e3) + "; ";
    }
    r.status = status_of(ok);
    r.detail = detail;
    return r;
}

CheckResult check_general_n(const VerifyOptions&) {
    CheckResult r = start_result(4, "general-n noisy GHZ Q0", false);
    const std::vector<std::pair<int, int>> cases{{3, 2}, {4, 2}, {5, 2}, {3, 3}, {4, 3}};
    Accumulator acc;
    for (const auto& [n, d] : cases) {
        const SystemShape shape = SystemShape::make(n, d);
        const GhzLabel zero = GhzLabel::zero(shape);
        const ChiPair chi = canonical_chi(zero);
        for (int i = 0; i <= 10; ++i) {
            const double a = i / 10.0;
            const double expected =
                2.0 * (a / d - (std::pow(2.0, n - 1) - 1.0) * (1.0 - a) / std::pow(static_cast<double>(d), n));
            acc.add(std::abs(q_ghz(sigma_noise(zero, a), chi.chi1, chi.chi2).value - expected));
        }
    }
    r.status = status_of(acc.worst < 1e-10);
    r.detail = "max error " + sci(acc.worst);
    return r;
}

CheckResult check_pairs(const VerifyOptions& options) {
    CheckResult r = start_result(5, "two-GHZ families", false);
    struct Case {
        int d;
        PairType type;
    };
    const std::vector<Case> cases{{2, PairType::I}, {2, PairType::II}, {3, PairType::I}, {3, PairType::II},
                                  {3, PairType::III}};
    Accumulator pt;
    Accumulator q0;
    std::mt19937_64 rng(options.seed);
    for (const auto& c : cases) {
        const GhzLabel label = representative_label(c.d, c.type);
        for (int i = 0; i <= 40; ++i) {
            for (int j = 0; i + j <= 40; ++j) {
                const double a = i / 40.0;
                const double b = j / 40.0;
                const double numeric = ppt_min_eig_all(sigma_pair(c.d, label, a, b));
                pt.add(std::abs(pt_conditions_pair(c.d, c.type, a, b) - numeric));
            }
        }
        std::uniform_int_distribution<int> grid(0, 40);
        OptimizerOptions o;
        o.seed = options.seed;
        o.threads = options.threads;
        for (int s = 0; s < 10;) {
            const int i = grid(rng);
            const int j = grid(rng);
            if (i + j > 40) continue;
            ++s;
            const double a = i / 40.0;
            const double b = j / 40.0;
            const double numeric = optimize_criterion(sigma_pair(c.d, label, a, b), CriterionKind::QGhz, o).value;
            q0.add(std::abs(q0_pair(c.d, c.type, a, b) - numeric));
        }
    }
    Accumulator same;
    for (int i = 0; i <= 40; ++i) {
        for (int j = 0; i + j <= 40; ++j) {
            same.add(std::abs(q0_pair(2, PairType::I, i / 40.0, j / 40.0) - q0_pair(2, PairType::II, i / 40.0, j / 40.0)));
        }
    }
    r.status = status_of(pt.worst < 1e-10 && q0.worst < 1e-4 && same.worst < 1e-12);
    r.detail = "PT max error " + sci(pt.worst) + ", Q0 vs optimizer " + sci(q0.worst) + ", qubit I vs II " +
               sci(same.worst);
    return r;
}

CheckResult check_interferometer(const VerifyOptions&) {
    CheckResult r = start_result(6, "GHZ interferometer", false);
    const double s = 1.0 / std::sqrt(2.0);
    const ComplexMatrix u2 = u_ghz_full(2);
    ComplexVector phi_minus = ComplexVector::Zero(4);
    phi_minus(0) = s;
    phi_minus(3) = -s;
    ComplexVector psi_plus = ComplexVector::Zero(4);
    psi_plus(1) = s;
    psi_plus(2) = s;
    const double e_rr = (u2 * input_state("RR") - (-1.0) * phi_minus).cwiseAbs().maxCoeff();
    const double e_ll = (u2 * input_state("LL") - cd(0.0, 1.0) * psi_plus).cwiseAbs().maxCoeff();
    const auto named = qubit_named_bases();
    const PureState out3 = PureState::make(SystemShape::make(3, 2), u_ghz_full(3) * input_state("RRR"));
    const PhaseMatch m = equal_up_to_global_phase(out3, named.hv[static_cast<std::size_t>(named_state_index("GHZ1-"))], 1e-12);
    double worst_c = 0.0;
    double total = 0.0;
    for (const char* in : {"00", "01", "10", "11"}) {
        const double c = concurrence(ComplexVector(u2 * input_state(in)));
        worst_c = std::max(worst_c, std::abs(c - 0.5));
        total += c;
    }
    const bool ok = e_rr < 1e-12 && e_ll < 1e-12 && m.equal && worst_c < 1e-10 && std::abs(total - 2.0) < 1e-10;
    r.status = status_of(ok);
    r.detail = "RR err " + sci(e_rr) + ", LL err " + sci(e_ll) + ", RRR overlap " + fmt("%.15f", m.overlap) +
               ", concurrence err " + sci(worst_c) + ", total " + fmt("%.12f", total);
    return r;
}

CheckResult check_interferometer_q(const VerifyOptions& options) {
    CheckResult r = start_result(7, "interferometer Q_GHZ", true);
    const SystemShape shape = SystemShape::make(3, 2);
    const ComplexMatrix u = u_ghz_full(3);
    OptimizerOptions o;
    o.restarts = 32;
    o.seed = options.seed;
    o.threads = options.threads;
    auto worst_for = [&](const std::vector<std::string>& inputs, double expected, double& lowest, double& highest) {
        double worst = 0.0;
        lowest = INFINITY;
        highest = -INFINITY;
        for (const auto& in : inputs) {
            const ComplexVector psi = u * input_state(in);
            const DensityOperator rho = DensityOperator::make(shape, psi * psi.adjoint());
            const double q = optimize_criterion(rho, CriterionKind::QGhz, o).value;
            lowest = std::min(lowest, q);
            highest = std::max(highest, q);
            worst = std::max(worst, std::abs(q - expected));
        }
        return worst;
    };
    std::vector<std::string> comp;
    std::vector<std::string> diag;
    for (int i = 0; i < 8; ++i) {
        std::string c;
        std::string g;
        for (int p = 2; p >= 0; --p) {
            c += ((i >> p) & 1) ? '1' : '0';
            g += ((i >> p) & 1) ? '-' : '+';
        }
        comp.push_back(c);
        diag.push_back(g);
    }
    double lo1 = 0.0;
    double hi1 = 0.0;
    double lo2 = 0.0;
    double hi2 = 0.0;
    const double e1 = worst_for(comp, 0.432541, lo1, hi1);
    const double e2 = worst_for(diag, 0.325194, lo2, hi2);
    const double worst = std::max(e1, e2);
    r.status = worst < 5e-3 ? CheckStatus::Pass : (worst < 5e-2 ? CheckStatus::Deviation : CheckStatus::Fail);
    r.detail = "computational inputs Q in [" + fmt("%.6f", lo1) + ", " + fmt("%.6f", hi1) + "], +/- inputs Q in [" +
               fmt("%.6f", lo2) + ", " + fmt("%.6f", hi2) + "], max error " + sci(worst);
    return r;
}

CheckResult check_dicke(const VerifyOptions& options) {
    CheckResult r = start_result(8, "Dicke criterion", true);
    const SystemShape shape = SystemShape::make(3, 2);
    ComplexVector w = ComplexVector::Zero(8);
    w(1) = w(2) = w(4) = 1.0 / std::sqrt(3.0);
    const double qw = q_dicke3_real_form(DensityOperator::make(shape, w * w.adjoint()));
    ComplexVector g = ComplexVector::Zero(8);
    g(0) = g(7) = 1.0 / std::sqrt(2.0);
    const double qg = q_dicke3_real_form(DensityOperator::make(shape, g * g.adjoint()));
    const GhzLabel zero = GhzLabel::zero(shape);
    OptimizerOptions o;
    o.seed = options.seed;
    o.threads = options.threads;
    const double threshold = find_threshold(
        [&](double a) { return optimize_criterion(sigma_noise(zero, a), CriterionKind::QDicke, o).value; }, 0.0, 1.0,
        1e-5);
    const bool fixtures = std::abs(qw - 1.0) < 1e-12 && std::abs(qg) < 1e-12;
    const double err = std::abs(threshold - 0.6);
    if (!fixtures) {
        r.status = CheckStatus::Fail;
    } else {
        r.status = err < 0.05 ? CheckStatus::Pass : (err < 0.1 ? CheckStatus::Deviation : CheckStatus::Fail);
    }
    r.detail = "W " + fmt("%.15f", qw) + ", GHZ " + sci(qg) + ", noisy GHZ threshold " + fmt("%.6f", threshold);
    return r;
}

CheckResult check_complementarity(const VerifyOptions& options) {
    CheckResult r = start_result(9, "complementarity", false);
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    Accumulator identity;
    Accumulator oracle;
    for (int i = 0; i < 1000;) {
        const double x = u(rng);
        const double y = u(rng);
        const double z = u(rng);
        if (x * x + y * y + z * z > 1.0) continue;
        ++i;
        const BlochVector n = BlochVector::make(x, y, z);
        const InterferometerReport rep = complementarity_report(n);
        const double norm_sq = x * x + y * y + z * z;
        const double pv = rep.predictability * rep.predictability + rep.visibility * rep.visibility;
        const ComplexMatrix rho = bloch_density(n);
        const double purity = (rho * rho).trace().real();
        identity.add(std::abs(pv - norm_sq));
        identity.add(std::abs(norm_sq - (2.0 * purity - 1.0)));
        const double phi = phase(rng);
        const BlochVector a = final_bloch(n, phi);
        const BlochVector b = final_bloch_conjugated(n, phi);
        oracle.add(std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)}));
    }
    r.status = status_of(identity.worst < 1e-12 && oracle.worst < 1e-12);
    r.detail = "identity max error " + sci(identity.worst) + ", closed form vs conjugation " + sci(oracle.worst);
    return r;
}

CheckResult check_soundness(const VerifyOptions& options) {
    CheckResult r = start_result(10, "biseparable soundness", false);
    const SystemShape shape = SystemShape::make(3, 2);
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> terms(1, 4);
    std::uniform_int_distribution<int> cut(0, 2);
    OptimizerOptions o;
    o.restarts = 4;
    o.seed = options.seed;
    o.threads = options.threads;
    double worst_q = -INFINITY;
    for (int t = 0; t < 200; ++t) {
        const int count = terms(rng);
        const auto w = random_weights(rng, count);
        ComplexMatrix rho = ComplexMatrix::Zero(8, 8);
        for (int k = 0; k < count; ++k) {
            const ComplexVector psi = biproduct_3qubit(random_vector(rng, 2), random_vector(rng, 4), cut(rng));
            rho += w[static_cast<std::size_t>(k)] * psi * psi.adjoint();
        }
        worst_q = std::max(worst_q, optimize_criterion(DensityOperator::make(shape, rho), CriterionKind::QGhz, o).value);
    }
    double worst_i = -INFINITY;
    for (int t = 0; t < 100; ++t) {
        const int count = terms(rng);
        const auto w = random_weights(rng, count);
        ComplexMatrix rho = ComplexMatrix::Zero(8, 8);
        for (int k = 0; k < count; ++k) {
            const ComplexVector psi = random_product(rng, shape).full();
            rho += w[static_cast<std::size_t>(k)] * psi * psi.adjoint();
        }
        const DensityOperator dens = DensityOperator::make(shape, rho);
        const ProductVector chi1 = random_product(rng, shape);
        const ProductVector chi2 = random_product(rng, shape);
        for (int k : {2, 3}) worst_i = std::max(worst_i, i_k(dens, chi1, chi2, k).value);
    }
    r.status = status_of(worst_q <= 1e-9 && worst_i <= 1e-9);
    r.detail = "max optimized Q_GHZ " + sci(worst_q) + " over 200 biseparable mixtures, max I_k " + sci(worst_i) +
               " over 100 fully separable mixtures";
    return r;
}

CheckResult check_geometry(const VerifyOptions& options) {
    CheckResult r = start_result(11, "geometry comparison", false);
    const auto start = std::chrono::steady_clock::now();
    std::vector<ScanConfig> configs;
    for (const auto& [n, d] : std::vector<std::pair<int, int>>{{3, 2}, {3, 3}, {4, 2}}) {
        ScanConfig c;
        c.family = FamilyKind::Square;
        c.n = n;
        c.d = d;
        c.seed = options.seed;
        c.threads = options.threads;
        configs.push_back(c);
    }
    const auto report = compare_geometries(configs);
    r.seconds = timed_seconds(start);
    const double g32 = report[0].gme_fraction;
    const double g33 = report[1].gme_fraction;
    const double g42 = report[2].gme_fraction;
    r.status = status_of(g33 > g32 && std::abs(g42 - g32) < 0.1 && r.seconds < 60.0);
    r.detail = "GME fraction (3,2) " + fmt("%.4f", g32) + ", (3,3) " + fmt("%.4f", g33) + ", (4,2) " +
               fmt("%.4f", g42) + ", " + fmt("%.1f", r.seconds) + " s";
    return r;
}

} // namespace

CheckResult run_check(int id, const VerifyOptions& options) {
    static const std::vector<std::function<CheckResult(const VerifyOptions&)>> checks{
        check_basis,           check_facet,     check_noise_thresholds, check_general_n,
        check_pairs,           check_interferometer, check_interferometer_q, check_dicke,
        check_complementarity, check_soundness, check_geometry};
    if (id < 1 || id > kCheckCount) throw Error(ErrorCode::OutOfRange, "check id must be in 1.." + std::to_string(kCheckCount));
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
        r = checks[static_cast<std::size_t>(id - 1)](options);
    } catch (const std::exception& e) {
        static const char* titles[kCheckCount] = {
            "basis orthonormality",   "facet ray spectrum", "noisy GHZ thresholds", "general-n noisy GHZ Q0",
            "two-GHZ families",       "GHZ interferometer", "interferometer Q_GHZ", "Dicke criterion",
            "complementarity",        "biseparable soundness", "geometry comparison"};
        r.id = id;
        r.title = titles[id - 1];
        r.soft = id == 7 || id == 8;
        r.status = CheckStatus::Fail;
        r.detail = std::string("error: ") + e.what();
    }
    if (r.seconds == 0.0) r.seconds = timed_seconds(start);
    return r;
}

std::vector<CheckResult> run_checks(const std::vector<int>& ids, const VerifyOptions& options) {
    std::vector<CheckResult> out;
    for (int id : ids) out.push_back(run_check(id, options));
    return out;
}

std::vector<CheckResult> run_all_checks(const VerifyOptions& options) {
    std::vector<int> ids(kCheckCount);
    for (int i = 0; i < kCheckCount; ++i) ids[static_cast<std::size_t>(i)] = i + 1;
    return run_checks(ids, options);
}

} // namespace ghz
