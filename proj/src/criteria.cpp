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

#include "ghzsimplex/criteria.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "ghzsimplex/error.hpp"
#include "ghzsimplex/optimizer.hpp"

namespace ghz {

namespace {

constexpr double kPi = std::numbers::pi;

void require_same_shape(const SystemShape& a, const SystemShape& b, const char* what) {
    if (!(a == b)) throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": shape mismatch");
}

nlohmann::json vector_json(const ComplexVector& v) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
    return out;
}

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        out.push_back(std::move(row));
    }
    return out;
}

CriterionResult make_result(std::string name, double value, nlohmann::json witness) {
    CriterionResult r;
    r.criterion = std::move(name);
    r.value = value;
    r.detected = value > kDetectionTolerance;
    r.witness = std::move(witness);
    return r;
}

/// Bipartition blocks: the part containing party 0 of every 2-partition.
std::vector<std::vector<int>> bipartition_blocks(int n) {
    std::vector<std::vector<int>> out;
    for (const auto& p : enumerate_k_partitions(n, 2)) out.push_back(p.front());
    return out;
}

/// rho = F^dagger F for positive rho, so sqrt<v|rho|v> = |F v| stays accurate near zero.
/// Indefinite operators fall back to sqrt|<v|rho|v>|.
class RootFactor {
public:
    explicit RootFactor(const ComplexMatrix& rho) : rho_(rho) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho, Eigen::ComputeEigenvectors);
        if (es.info() != Eigen::Success) return;
        const auto& w = es.eigenvalues();
        const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
        if (w.minCoeff() < -1e-12 * scale) return;
        Eigen::Index rank = 0;
        for (Eigen::Index i = 0; i < w.size(); ++i) rank += w(i) > 0.0 ? 1 : 0;
        f_.resize(rank, rho.cols());
        Eigen::Index row = 0;
        for (Eigen::Index i = 0; i < w.size(); ++i) {
            if (w(i) > 0.0) f_.row(row++) = std::sqrt(w(i)) * es.eigenvectors().col(i).adjoint();
        }
        positive_ = true;
    }

    double root(const ComplexVector& v) const {
        if (positive_) return (f_ * v).norm();
        return std::sqrt(std::abs(v.dot(rho_ * v).real()));
    }

    double root(const ComplexVector& v, ComplexVector& work) const {
        if (!positive_) return root(v);
        work.noalias() = f_ * v;
        return work.norm();
    }

    const ComplexMatrix& rho() const noexcept { return rho_; }
    bool positive() const noexcept { return positive_; }
    const ComplexMatrix& factor() const noexcept { return f_; }

private:
    const ComplexMatrix& rho_;
    ComplexMatrix f_;
    bool positive_ = false;
};

double q_ghz_value(const RootFactor& f, const ProductVector& chi1, const ProductVector& chi2,
                   const std::vector<std::vector<int>>& blocks) {
    const ComplexVector a = chi1.full();
    const ComplexVector b = chi2.full();
    double value = std::abs(a.dot(f.rho() * b));
    for (const auto& block : blocks) {
        value -= f.root(chi1.swapped(chi2, block).full()) * f.root(chi2.swapped(chi1, block).full());
    }
    return 2.0 * value;
}

void require_orthogonal(const ProductVector& chi1, const ProductVector& chi2) {
    for (std::size_t p = 0; p < chi1.locals().size(); ++p) {
        const double ov = std::abs(chi1.locals()[p].dot(chi2.locals()[p]));
        if (ov > 1e-9) {
            throw Error(ErrorCode::InvalidArgument,
                        "q_ghz needs orthogonal local vectors; party " + std::to_string(p) + " overlap " +
                            std::to_string(ov));
        }
    }
}

} // namespace

ProductVector ProductVector::make(SystemShape shape, std::vector<ComplexVector> locals, double tol) {
    if (locals.size() != static_cast<std::size_t>(shape.parties())) {
        throw Error(ErrorCode::DimensionMismatch, "product vector needs one local vector per party");
    }
    for (const auto& v : locals) {
        if (v.size() != shape.local_dim()) throw Error(ErrorCode::DimensionMismatch, "local vector must have length d");
        if (std::abs(v.norm() - 1.0) > tol) throw Error(ErrorCode::InvalidArgument, "local vector not normalised");
    }
    return ProductVector(shape, std::move(locals));
}

ProductVector ProductVector::computational(SystemShape shape, std::span<const int> digits) {
    if (digits.size() != static_cast<std::size_t>(shape.parties())) {
        throw Error(ErrorCode::DimensionMismatch, "computational product vector needs n digits");
    }
    std::vector<ComplexVector> locals;
    for (int v : digits) {
        if (v < 0 || v >= shape.local_dim()) throw Error(ErrorCode::OutOfRange, "digit out of range");
        ComplexVector e = ComplexVector::Zero(shape.local_dim());
        e(v) = 1.0;
        locals.push_back(std::move(e));
    }
    return ProductVector(shape, std::move(locals));
}

ComplexVector ProductVector::full() const { return kron_vectors(locals_); }

ProductVector ProductVector::swapped(const ProductVector& other, std::span<const int> block) const {
    require_same_shape(shape_, other.shape_, "swapped");
    std::vector<ComplexVector> locals = locals_;
    for (int p : block) {
        if (p < 0 || p >= shape_.parties()) throw Error(ErrorCode::OutOfRange, "block party out of range");
        locals[static_cast<std::size_t>(p)] = other.locals_[static_cast<std::size_t>(p)];
    }
    return ProductVector(shape_, std::move(locals));
}

ChiPair chi_from_frame(const SystemShape& shape, std::span<const ComplexMatrix> frame) {
    if (frame.size() != static_cast<std::size_t>(shape.parties())) {
        throw Error(ErrorCode::DimensionMismatch, "frame needs one unitary per party");
    }
    const int d = shape.local_dim();
    std::vector<ComplexVector> a;
    std::vector<ComplexVector> b;
    for (const auto& u : frame) {
        if (u.rows() != d || u.cols() != d) throw Error(ErrorCode::DimensionMismatch, "frame unitaries must be d x d");
        a.push_back(u.col(0));
        b.push_back(u.col(d - 1));
    }
    return {ProductVector::make(shape, std::move(a), 1e-10), ProductVector::make(shape, std::move(b), 1e-10)};
}

ChiPair canonical_chi(const GhzLabel& label) {
    const auto frame = ghz_frame(label);
    return chi_from_frame(label.shape(), frame);
}

std::vector<KPartition> enumerate_k_partitions(int n, int k) {
    if (n < 1 || k < 1 || k > n) {
        throw Error(ErrorCode::OutOfRange, "enumerate_k_partitions needs 1 <= k <= n (got n=" + std::to_string(n) +
                                               ", k=" + std::to_string(k) + ")");
    }
    std::vector<KPartition> out;
    // Restricted growth strings: a[i] <= 1 + max(a[0..i-1]).
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int i, int used) {
        if (used + (n - i) < k) return;
        if (i == n) {
            if (used != k) return;
            KPartition p(static_cast<std::size_t>(k));
            for (int j = 0; j < n; ++j) p[static_cast<std::size_t>(a[static_cast<std::size_t>(j)])].push_back(j);
            out.push_back(std::move(p));
            return;
        }
        for (int v = 0; v <= used && v < k; ++v) {
            a[static_cast<std::size_t>(i)] = v;
            rec(i + 1, std::max(used, v + 1));
        }
    };
    a[0] = 0;
    rec(1, 1);
    return out;
}

double expectation(const ComplexMatrix& rho, const ComplexVector& v) { return v.dot(rho * v).real(); }

double permuted_diagonal_term(const DensityOperator& rho, const ProductVector& chi1, const ProductVector& chi2,
                              std::span<const int> block) {
    require_same_shape(rho.shape(), chi1.shape(), "permuted_diagonal_term");
    require_same_shape(rho.shape(), chi2.shape(), "permuted_diagonal_term");
    const double a = expectation(rho.matrix(), chi1.swapped(chi2, block).full());
    const double b = expectation(rho.matrix(), chi2.swapped(chi1, block).full());
    return std::abs(a * b);
}

nlohmann::json product_vector_json(const ProductVector& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& l : v.locals()) out.push_back(vector_json(l));
    return out;
}

nlohmann::json to_json(const CriterionResult& r) {
    return {{"criterion", r.criterion}, {"value", r.value}, {"detected", r.detected}, {"witness", r.witness}};
}

CriterionResult criterion_result_from_json(const nlohmann::json& j) {
    CriterionResult r;
    r.criterion = j.at("criterion").get<std::string>();
    r.value = j.at("value").get<double>();
    r.detected = j.at("detected").get<bool>();
    r.witness = j.contains("witness") ? j.at("witness") : nlohmann::json::object();
    return r;
}

CriterionResult i_k(const DensityOperator& rho, const ProductVector& chi1, const ProductVector& chi2, int k) {
    require_same_shape(rho.shape(), chi1.shape(), "i_k");
    require_same_shape(rho.shape(), chi2.shape(), "i_k");
    const int n = rho.shape().parties();
    if (k < 2 || k > n) throw Error(ErrorCode::OutOfRange, "i_k needs 2 <= k <= n");
    const ComplexVector a = chi1.full();
    const ComplexVector b = chi2.full();
    const RootFactor f(rho.matrix());
    double value = std::abs(a.dot(rho.matrix() * b));
    const double power = 1.0 / k;
    for (const auto& partition : enumerate_k_partitions(n, k)) {
        double prod = 1.0;
        for (const auto& block : partition) {
            prod *= f.root(chi1.swapped(chi2, block).full()) * f.root(chi2.swapped(chi1, block).full());
        }
        value -= std::pow(prod, power);
    }
    return make_result("i_" + std::to_string(k), value,
                       {{"k", k}, {"chi1", product_vector_json(chi1)}, {"chi2", product_vector_json(chi2)}});
}

CriterionResult q_ghz(const DensityOperator& rho, const ProductVector& chi1, const ProductVector& chi2) {
    require_same_shape(rho.shape(), chi1.shape(), "q_ghz");
    require_same_shape(rho.shape(), chi2.shape(), "q_ghz");
    require_orthogonal(chi1, chi2);
    const RootFactor f(rho.matrix());
    const double value = q_ghz_value(f, chi1, chi2, bipartition_blocks(rho.shape().parties()));
    return make_result("q_ghz", value, {{"chi1", product_vector_json(chi1)}, {"chi2", product_vector_json(chi2)}});
}

CriterionResult q_ghz_best(const DensityOperator& rho, std::span<const ChiPair> chis) {
    if (chis.empty()) throw Error(ErrorCode::InvalidArgument, "q_ghz_best needs at least one chi pair");
    const RootFactor f(rho.matrix());
    const auto blocks = bipartition_blocks(rho.shape().parties());
    std::size_t best = 0;
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < chis.size(); ++i) {
        require_same_shape(rho.shape(), chis[i].chi1.shape(), "q_ghz_best");
        require_same_shape(rho.shape(), chis[i].chi2.shape(), "q_ghz_best");
        require_orthogonal(chis[i].chi1, chis[i].chi2);
        const double v = q_ghz_value(f, chis[i].chi1, chis[i].chi2, blocks);
        if (v > top) {
            top = v;
            best = i;
        }
    }
    return make_result("q_ghz", top,
                       {{"index", best},
                        {"chi1", product_vector_json(chis[best].chi1)},
                        {"chi2", product_vector_json(chis[best].chi2)}});
}

namespace {

template <typename Entry, typename Root>
double q_dicke_core(const SystemShape& shape, int m, Entry entry, Root root) {
    const int n = shape.parties();
    auto index_of = [&](unsigned mask) {
        std::size_t idx = 0;
        for (int p = 0; p < n; ++p) {
            if (mask & (1u << p)) idx += shape.stride(p);
        }
        return static_cast<Eigen::Index>(idx);
    };
    std::vector<unsigned> sets;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) == m) sets.push_back(mask);
    }
    double value = 0.0;
    for (unsigned a : sets) {
        for (unsigned b : sets) {
            if (a == b || std::popcount(a & b) != m - 1) continue;
            value += std::abs(entry(index_of(a), index_of(b)));
            value -= root(index_of(a & b)) * root(index_of(a | b));
        }
    }
    double diag = 0.0;
    for (unsigned b : sets) diag += entry(index_of(b), index_of(b)).real();
    value -= static_cast<double>(m) * (n - m - 1) * diag;
    return value;
}

/// q_dicke of U^dagger rho U, or of rho itself when u is null.
double q_dicke_value(const RootFactor& f, const ComplexMatrix* u, const SystemShape& shape, int m) {
    if (f.positive()) {
        const ComplexMatrix g = u ? ComplexMatrix(f.factor() * *u) : f.factor();
        return q_dicke_core(
            shape, m, [&](Eigen::Index i, Eigen::Index j) { return g.col(i).dot(g.col(j)); },
            [&](Eigen::Index i) { return g.col(i).norm(); });
    }
    const ComplexMatrix r = u ? ComplexMatrix(u->adjoint() * f.rho() * *u) : f.rho();
    return q_dicke_core(
        shape, m, [&](Eigen::Index i, Eigen::Index j) { return r(i, j); },
        [&](Eigen::Index i) { return std::sqrt(std::abs(r(i, i).real())); });
}

} // namespace

CriterionResult q_dicke(const DensityOperator& rho, int m, std::optional<std::span<const ComplexMatrix>> frame) {
    const auto& shape = rho.shape();
    if (shape.local_dim() != 2) throw Error(ErrorCode::Unsupported, "q_dicke is defined for qubits");
    const int n = shape.parties();
    if (n > 30) throw Error(ErrorCode::SizeBudget, "q_dicke: too many parties");
    if (m < 1 || m > n / 2) throw Error(ErrorCode::OutOfRange, "q_dicke needs 1 <= m <= n/2");
    nlohmann::json witness = {{"m", m}};
    double value = 0.0;
    if (frame) {
        if (frame->size() != static_cast<std::size_t>(n)) {
            throw Error(ErrorCode::DimensionMismatch, "q_dicke frame needs one unitary per party");
        }
        const ComplexMatrix u = kron_all(*frame);
        value = q_dicke_value(RootFactor(rho.matrix()), &u, shape, m);
        witness["frame"] = "rotated";
    } else {
        value = q_dicke_value(RootFactor(rho.matrix()), nullptr, shape, m);
        witness["frame"] = "computational";
    }
    return make_result("q_dicke", value, std::move(witness));
}

double q_dicke3_real_form(const DensityOperator& rho) {
    const auto& shape = rho.shape();
    if (shape.parties() != 3 || shape.local_dim() != 2) {
        throw Error(ErrorCode::Unsupported, "three-qubit Dicke form needs a three-qubit state");
    }
    const ComplexMatrix& r = rho.matrix();
    auto e = [&](int i, int j) { return r(i, j); };
    auto diag = [&](int i) { return r(i, i).real(); };
    double v = 2.0 * (e(1, 2).real() + e(1, 4).real() + e(2, 4).real());
    v -= diag(1) + diag(2) + diag(4);
    v -= 2.0 * (std::sqrt(std::abs(diag(0) * diag(3))) + std::sqrt(std::abs(diag(0) * diag(5))) +
                std::sqrt(std::abs(diag(0) * diag(6))));
    return v;
}

double ppt_min_eig(const DensityOperator& rho, int party) {
    return min_eigenvalue(partial_transpose(rho, party), 1e-8);
}

double ppt_min_eig_all(const DensityOperator& rho) {
    double lo = std::numeric_limits<double>::infinity();
    for (int p = 0; p < rho.shape().parties(); ++p) lo = std::min(lo, ppt_min_eig(rho, p));
    return lo;
}

UnitaryParameters UnitaryParameters::make(int d, Eigen::MatrixXd lambda) {
    if (d < 2) throw Error(ErrorCode::InvalidArgument, "unitary parameters need d >= 2");
    if (lambda.rows() != d || lambda.cols() != d) {
        throw Error(ErrorCode::DimensionMismatch, "lambda must be a d x d matrix");
    }
    constexpr double slack = 1e-12;
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            const double v = lambda(r, c);
            const double hi = c > r ? kPi / 2.0 : 2.0 * kPi;
            if (!(v >= -slack && v <= hi + slack)) {
                throw Error(ErrorCode::OutOfRange, "lambda(" + std::to_string(r) + "," + std::to_string(c) + ") = " +
                                                       std::to_string(v) + " outside [0, " + std::to_string(hi) + "]");
            }
        }
    }
    return {d, std::move(lambda)};
}

UnitaryParameters UnitaryParameters::zero(int d) { return make(d, Eigen::MatrixXd::Zero(d, d)); }

ComplexMatrix uc_unitary(const UnitaryParameters& p) {
    const int d = p.d;
    const auto& lam = p.lambda;
    ComplexMatrix u = ComplexMatrix::Identity(d, d);
    for (int m = 0; m < d - 1; ++m) {
        for (int n = m + 1; n < d; ++n) {
            // u <- u exp(i lam(n,m) P_n): scales column n.
            u.col(n) *= std::polar(1.0, lam(n, m));
            // u <- u exp(i lam(m,n) sigma_{m,n}).
            const double c = std::cos(lam(m, n));
            const double s = std::sin(lam(m, n));
            const ComplexVector um = u.col(m);
            const ComplexVector un = u.col(n);
            u.col(m) = c * um - s * un;
            u.col(n) = s * um + c * un;
        }
    }
    for (int l = 0; l < d; ++l) u.col(l) *= std::polar(1.0, lam(l, l));
    return u;
}

const char* criterion_name(CriterionKind k) { return k == CriterionKind::QGhz ? "q_ghz" : "q_dicke"; }

namespace {

struct Layout {
    int d;
    std::vector<std::pair<int, int>> pairs; // (m, n), m < n

    explicit Layout(int dim) : d(dim) {
        for (int m = 0; m < d - 1; ++m) {
            for (int n = m + 1; n < d; ++n) pairs.emplace_back(m, n);
        }
    }
    std::size_t per_party() const { return 2 * pairs.size(); }

    UnitaryParameters parameters(std::span<const double> x) const {
        Eigen::MatrixXd lam = Eigen::MatrixXd::Zero(d, d);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto [m, n] = pairs[i];
            lam(n, m) = x[2 * i];
            lam(m, n) = x[2 * i + 1];
        }
        return {d, std::move(lam)};
    }
};

/// Allocation-light q_ghz evaluation for the optimizer.
class GhzEvaluator {
public:
    GhzEvaluator(const RootFactor& factor, const SystemShape& shape)
        : factor_(factor), rho_(factor.rho()), n_(shape.parties()), d_(shape.local_dim()),
          dim_(static_cast<Eigen::Index>(shape.dimension())), blocks_(bipartition_blocks(shape.parties())), buf_(dim_),
          tmp_(dim_), rv_(dim_) {
        for (const auto& block : blocks_) {
            unsigned mask = 0;
            for (int p : block) mask |= 1u << p;
            masks_.push_back(mask);
        }
    }

    double operator()(std::span<const ComplexMatrix> frame) {
        const unsigned all = (1u << n_) - 1u;
        product(frame, 0u, buf_);
        product(frame, all, tmp_);
        rv_.noalias() = rho_ * tmp_;
        double value = std::abs(buf_.dot(rv_));
        for (unsigned mask : masks_) {
            product(frame, mask, buf_);
            const double a = factor_.root(buf_, rv_);
            product(frame, all & ~mask, buf_);
            const double b = factor_.root(buf_, rv_);
            value -= a * b;
        }
        return 2.0 * value;
    }

private:
    /// Party p contributes column d-1 of its unitary when bit p is set, column 0 otherwise.
    void product(std::span<const ComplexMatrix> frame, unsigned mask, ComplexVector& out) {
        out(0) = 1.0;
        Eigen::Index len = 1;
        for (int p = 0; p < n_; ++p) {
            const int col = (mask >> p) & 1u ? d_ - 1 : 0;
            const auto& u = frame[static_cast<std::size_t>(p)];
            for (Eigen::Index i = len - 1; i >= 0; --i) {
                const Complex v = out(i);
                for (int a = d_ - 1; a >= 0; --a) out(i * d_ + a) = v * u(a, col);
            }
            len *= d_;
        }
    }

    const RootFactor& factor_;
    const ComplexMatrix& rho_;
    int n_;
    int d_;
    Eigen::Index dim_;
    std::vector<std::vector<int>> blocks_;
    std::vector<unsigned> masks_;
    ComplexVector buf_;
    ComplexVector tmp_;
    ComplexVector rv_;
};

} // namespace

int optimizer_dimension(int n, int d) { return n * d * (d - 1); }

CriterionResult optimize_criterion(const DensityOperator& rho, CriterionKind kind, const OptimizerOptions& options) {
    const auto& shape = rho.shape();
    const int n = shape.parties();
    const int d = shape.local_dim();
    if (kind == CriterionKind::QDicke) {
        if (d != 2) throw Error(ErrorCode::Unsupported, "q_dicke is defined for qubits");
        if (options.dicke_m < 1 || options.dicke_m > n / 2) throw Error(ErrorCode::OutOfRange, "q_dicke m out of range");
    }
    if (options.restarts < 1) throw Error(ErrorCode::InvalidArgument, "optimizer needs at least one restart");
    if (options.max_evaluations < 0) throw Error(ErrorCode::InvalidArgument, "optimizer budget must be non-negative");
    std::vector<ComplexMatrix> base = options.base_frame;
    if (base.empty()) base.assign(static_cast<std::size_t>(n), ComplexMatrix::Identity(d, d));
    if (base.size() != static_cast<std::size_t>(n)) {
        throw Error(ErrorCode::DimensionMismatch, "base frame needs one unitary per party");
    }
    for (const auto& b : base) {
        if (b.rows() != d || b.cols() != d) throw Error(ErrorCode::DimensionMismatch, "base frame must be d x d");
    }
    const Layout layout(d);
    const std::size_t per = layout.per_party();
    std::vector<BoxDimension> box;
    for (int p = 0; p < n; ++p) {
        for (std::size_t i = 0; i < layout.pairs.size(); ++i) {
            box.push_back({0.0, 2.0 * kPi, true});
            box.push_back({0.0, kPi / 2.0, false});
        }
    }
    auto frame_of = [&](const std::vector<ComplexMatrix>& origin, std::span<const double> x) {
        std::vector<ComplexMatrix> frame;
        frame.reserve(static_cast<std::size_t>(n));
        for (int p = 0; p < n; ++p) {
            const auto params = layout.parameters(x.subspan(static_cast<std::size_t>(p) * per, per));
            frame.push_back(origin[static_cast<std::size_t>(p)] * uc_unitary(params));
        }
        return frame;
    };
    const ComplexMatrix& m = rho.matrix();
    const RootFactor factor(m);
    // One evaluator per call keeps the objective re-entrant across threads.
    auto frame_value = [&](std::span<const ComplexMatrix> frame) {
        if (kind == CriterionKind::QGhz) {
            GhzEvaluator eval(factor, shape);
            return eval(frame);
        }
        const ComplexMatrix u = kron_all(frame);
        return q_dicke_value(factor, &u, shape, options.dicke_m);
    };
    auto objective_for = [&](const std::vector<ComplexMatrix>& origin) -> Objective {
        if (kind == CriterionKind::QGhz && options.threads <= 1) {
            auto eval = std::make_shared<GhzEvaluator>(factor, shape);
            return [&, origin, eval](std::span<const double> x) { return (*eval)(frame_of(origin, x)); };
        }
        return [&, origin](std::span<const double> x) { return frame_value(frame_of(origin, x)); };
    };

    SearchOptions so;
    so.seed = options.seed;
    so.max_evaluations = options.max_evaluations > 0 ? options.max_evaluations
                                                     : 500 * static_cast<int>(box.size());
    so.threads = options.threads;
    const std::vector<double> start(box.size(), 0.0);
    const bool aligned = options.aligned_start && options.restarts > 1;
    so.restarts = aligned ? options.restarts - 1 : options.restarts;
    SearchResult best = maximize_box(objective_for(base), box, start, so);
    std::vector<ComplexMatrix> best_origin = base;
    std::string origin_name = "base";
    if (aligned) {
        // Screen every GHZ-aligned frame and refine the best one.
        double top = -std::numeric_limits<double>::infinity();
        std::vector<ComplexMatrix> top_frame;
        std::string top_name;
        for (const auto& label : all_labels(shape)) {
            auto frame = ghz_frame(label);
            const double v = frame_value(frame);
            if (v > top) {
                top = v;
                top_frame = std::move(frame);
                top_name.clear();
                for (int digit : label.digits()) top_name += std::to_string(digit);
            }
        }
        SearchOptions one = so;
        one.restarts = 1;
        one.threads = 1;
        SearchResult refined = maximize_box(objective_for(top_frame), box, start, one);
        const long long total = best.evaluations + refined.evaluations + static_cast<long long>(shape.dimension());
        if (refined.value > best.value) {
            best = std::move(refined);
            best.restart = options.restarts - 1;
            best_origin = std::move(top_frame);
            origin_name = "aligned:" + top_name;
        }
        best.evaluations = total;
    }

    nlohmann::json params = nlohmann::json::array();
    for (int p = 0; p < n; ++p) {
        params.push_back(matrix_json(
            layout.parameters(std::span<const double>(best.x).subspan(static_cast<std::size_t>(p) * per, per)).lambda));
    }
    nlohmann::json witness = {{"optimized", true},
                              {"restarts", options.restarts},
                              {"seed", options.seed},
                              {"max_evaluations", so.max_evaluations},
                              {"best_restart", best.restart},
                              {"origin", origin_name},
                              {"evaluations", best.evaluations},
                              {"lambda", params}};
    const auto frame = frame_of(best_origin, best.x);
    if (kind == CriterionKind::QGhz) {
        const auto chi = chi_from_frame(shape, frame);
        witness["chi1"] = product_vector_json(chi.chi1);
        witness["chi2"] = product_vector_json(chi.chi2);
    } else {
        witness["m"] = options.dicke_m;
    }
    return make_result(criterion_name(kind), best.value, std::move(witness));
}

} // namespace ghz
