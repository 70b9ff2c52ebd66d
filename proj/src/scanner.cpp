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

#include "ghzsimplex/scanner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>

#include "ghzsimplex/closed_forms.hpp"
#include "ghzsimplex/criteria.hpp"
#include "ghzsimplex/error.hpp"

namespace ghz {

const char* cell_class_name(CellClass c) {
    switch (c) {
    case CellClass::Invalid: return "invalid";
    case CellClass::Ppt: return "ppt";
    case CellClass::NptUndetected: return "npt_undetected";
    case CellClass::GmeDetected: return "gme_detected";
    }
    return "";
}

CellClass parse_cell_class(const std::string& name) {
    for (auto c : {CellClass::Invalid, CellClass::Ppt, CellClass::NptUndetected, CellClass::GmeDetected}) {
        if (name == cell_class_name(c)) return c;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown cell class '" + name + "'");
}

CellClass classify_cell(double min_eig, double min_pt_eig, double q0, double tol) {
    if (!(min_eig >= -tol)) return CellClass::Invalid;
    if (q0 > tol) return CellClass::GmeDetected;
    if (min_pt_eig >= -tol) return CellClass::Ppt;
    return CellClass::NptUndetected;
}

const char* q0_source_name(Q0Source s) {
    switch (s) {
    case Q0Source::Auto: return "auto";
    case Q0Source::ClosedForm: return "closed";
    case Q0Source::Aligned: return "aligned";
    case Q0Source::Optimizer: return "optimizer";
    }
    return "";
}

Q0Source parse_q0_source(const std::string& name) {
    for (auto s : {Q0Source::Auto, Q0Source::ClosedForm, Q0Source::Aligned, Q0Source::Optimizer}) {
        if (name == q0_source_name(s)) return s;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown q0 source '" + name + "' (auto|closed|aligned|optimizer)");
}

nlohmann::json to_json(const ScanConfig& c) {
    return {{"family", family_name(c.family)},
            {"n", c.n},
            {"d", c.d},
            {"label", c.label},
            {"resolution_alpha", c.resolution_alpha},
            {"resolution_beta", c.resolution_beta},
            {"alpha", {c.alpha_lo, c.alpha_hi}},
            {"beta", {c.beta_lo, c.beta_hi}},
            {"q0", q0_source_name(c.q0_source)},
            {"restarts", c.restarts},
            {"seed", c.seed},
            {"max_evaluations", c.max_evaluations},
            {"threads", c.threads},
            {"output", c.output}};
}

ScanConfig scan_config_from_json(const nlohmann::json& j) {
    static const std::vector<std::string> known{"family", "n",     "d",        "label",           "resolution",
                                                "resolution_alpha", "resolution_beta", "alpha", "beta", "q0",
                                                "restarts", "seed", "max_evaluations", "threads", "output"};
    if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "scan config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw Error(ErrorCode::InvalidArgument, "unknown scan config key '" + key + "'");
        }
    }
    ScanConfig c;
    try {
        const auto fam = parse_family(j.at("family").get<std::string>());
        if (!fam) throw Error(ErrorCode::InvalidArgument, "unknown family '" + j.at("family").get<std::string>() + "'");
        c.family = *fam;
        c.n = j.value("n", c.n);
        c.d = j.value("d", c.d);
        c.label = j.value("label", c.label);
        if (j.contains("resolution")) c.resolution_alpha = c.resolution_beta = j.at("resolution").get<int>();
        c.resolution_alpha = j.value("resolution_alpha", c.resolution_alpha);
        c.resolution_beta = j.value("resolution_beta", c.resolution_beta);
        if (j.contains("alpha")) {
            c.alpha_lo = j.at("alpha").at(0).get<double>();
            c.alpha_hi = j.at("alpha").at(1).get<double>();
        }
        if (j.contains("beta")) {
            c.beta_lo = j.at("beta").at(0).get<double>();
            c.beta_hi = j.at("beta").at(1).get<double>();
        }
        if (j.contains("q0")) c.q0_source = parse_q0_source(j.at("q0").get<std::string>());
        c.restarts = j.value("restarts", c.restarts);
        c.seed = j.value("seed", c.seed);
        c.max_evaluations = j.value("max_evaluations", c.max_evaluations);
        c.threads = j.value("threads", c.threads);
        c.output = j.value("output", c.output);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed scan config: ") + e.what());
    }
    validate(c);
    return c;
}

void validate(const ScanConfig& c) {
    const bool one_axis = c.family == FamilyKind::Noise;
    if (c.resolution_alpha < 2 || c.resolution_beta < (one_axis ? 1 : 2)) {
        throw Error(ErrorCode::InvalidArgument, "scan resolution must be at least 2 per axis");
    }
    if (static_cast<long long>(c.resolution_alpha) * c.resolution_beta > 100'000'000LL) {
        throw Error(ErrorCode::SizeBudget, "scan grid too large");
    }
    if (!(c.alpha_hi >= c.alpha_lo) || !(c.beta_hi >= c.beta_lo)) {
        throw Error(ErrorCode::InvalidArgument, "scan ranges must satisfy lo <= hi");
    }
    if (c.restarts < 1) throw Error(ErrorCode::InvalidArgument, "restarts must be positive");
    if (c.threads < 1) throw Error(ErrorCode::InvalidArgument, "threads must be positive");
    const SystemShape shape = SystemShape::make(c.n, c.d);
    switch (c.family) {
    case FamilyKind::Noise:
        if (!c.label.empty() && c.label.size() != static_cast<std::size_t>(c.n)) {
            throw Error(ErrorCode::InvalidArgument, "noise label needs n digits");
        }
        break;
    case FamilyKind::Pair:
        if (c.n != 3) throw Error(ErrorCode::Unsupported, "pair family is defined for three parties");
        if (c.label.size() != 3) throw Error(ErrorCode::InvalidArgument, "pair family needs a label of three digits");
        break;
    case FamilyKind::Square: break;
    case FamilyKind::Facet:
        if (c.n != 3 || c.d != 2) throw Error(ErrorCode::Unsupported, "facet family is defined for three qubits");
        break;
    }
    for (int v : c.label) {
        if (v < 0 || v >= shape.local_dim()) throw Error(ErrorCode::OutOfRange, "label digit out of range");
    }
    if (c.q0_source == Q0Source::ClosedForm) {
        const bool covered = c.family == FamilyKind::Noise ||
                             (c.family == FamilyKind::Pair && (c.d == 2 || c.d == 3));
        if (!covered) throw Error(ErrorCode::Unsupported, "no closed-form Q0 for this family");
    }
}

namespace {

GhzLabel label_of(const SystemShape& shape, const std::vector<int>& digits) {
    if (digits.empty()) return GhzLabel::zero(shape);
    return GhzLabel::make(shape, std::vector<int>(digits.begin(), digits.end() - 2), digits[digits.size() - 2],
                          digits.back());
}

class CellEvaluator {
public:
    explicit CellEvaluator(const ScanConfig& c) : config_(c), shape_(SystemShape::make(c.n, c.d)) {
        source_ = c.q0_source;
        if (source_ == Q0Source::Auto) {
            const bool closed = c.family == FamilyKind::Noise ||
                                (c.family == FamilyKind::Pair && (c.d == 2 || c.d == 3));
            source_ = closed ? Q0Source::ClosedForm : Q0Source::Aligned;
        }
        if (c.family == FamilyKind::Pair) {
            pair_label_.emplace(label_of(shape_, c.label));
            if (pair_label_->is_zero()) throw Error(ErrorCode::InvalidArgument, "pair label must differ from (0,0,0)");
            if (c.d == 2 || c.d == 3) pair_type_ = classify_pair(c.d, *pair_label_);
        }
        FamilyPoint p;
        p.family = c.family;
        p.n = c.n;
        p.d = c.d;
        if (!c.label.empty()) p.labels.push_back(c.label);
        for (const auto& label : component_labels(p)) chis_.push_back(canonical_chi(label));
        if (c.family != FamilyKind::Facet) {
            // Every other family is affine in (alpha, beta).
            base_ = family_matrix(0.0, 0.0);
            da_ = family_matrix(1.0, 0.0) - base_;
            db_ = family_matrix(0.0, 1.0) - base_;
        }
    }

    ScanCell operator()(double alpha, double beta) const {
        ScanCell cell;
        cell.alpha = alpha;
        cell.beta = beta;
        const DensityOperator rho = state(alpha, beta);
        cell.min_eig = min_eigenvalue(rho.matrix(), 1e-8);
        cell.min_pt_eig = ppt_min_eig_all(rho);
        const bool physical = cell.min_eig >= -kScanTolerance;
        switch (source_) {
        case Q0Source::ClosedForm:
            cell.q0 = config_.family == FamilyKind::Noise ? q0_noise(config_.n, config_.d, alpha)
                                                          : q0_pair(config_.d, pair_type_, alpha, beta);
            break;
        case Q0Source::Aligned: cell.q0 = aligned_q0(rho); break;
        case Q0Source::Optimizer:
            if (physical) {
                OptimizerOptions o;
                o.restarts = config_.restarts;
                o.seed = config_.seed;
                o.max_evaluations = config_.max_evaluations;
                cell.q0 = optimize_criterion(rho, CriterionKind::QGhz, o).value;
            } else {
                cell.q0 = std::numeric_limits<double>::quiet_NaN();
            }
            break;
        case Q0Source::Auto: break;
        }
        cell.cls = classify_cell(cell.min_eig, cell.min_pt_eig, cell.q0);
        return cell;
    }

private:
    ComplexMatrix family_matrix(double a, double b) const {
        FamilyPoint p;
        p.family = config_.family;
        p.n = config_.n;
        p.d = config_.d;
        if (!config_.label.empty()) p.labels.push_back(config_.label);
        p.alpha = a;
        p.beta = b;
        return build_family_state(p).matrix();
    }

    DensityOperator state(double alpha, double beta) const {
        if (config_.family == FamilyKind::Facet) return facet_ray(alpha, beta);
        return DensityOperator::make(shape_, base_ + alpha * da_ + beta * db_);
    }

    double aligned_q0(const DensityOperator& rho) const {
        return q_ghz_best(rho, chis_).value;
    }

    const ScanConfig& config_;
    SystemShape shape_;
    Q0Source source_;
    std::optional<GhzLabel> pair_label_;
    PairType pair_type_ = PairType::Unclassified;
    std::vector<ChiPair> chis_;
    ComplexMatrix base_;
    ComplexMatrix da_;
    ComplexMatrix db_;
};

double axis_value(double lo, double hi, int res, int i) {
    if (res == 1) return lo;
    if (i == res - 1) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(res - 1);
}

} // namespace

std::vector<ScanCell> scan(const ScanConfig& config) {
    validate(config);
    const CellEvaluator eval(config);
    const auto na = static_cast<std::size_t>(config.resolution_alpha);
    const auto nb = static_cast<std::size_t>(config.resolution_beta);
    std::vector<ScanCell> cells(na * nb);
    auto run = [&](std::size_t idx) {
        const int i = static_cast<int>(idx / nb);
        const int j = static_cast<int>(idx % nb);
        cells[idx] = eval(axis_value(config.alpha_lo, config.alpha_hi, config.resolution_alpha, i),
                          axis_value(config.beta_lo, config.beta_hi, config.resolution_beta, j));
    };
    const auto threads = static_cast<std::size_t>(std::max(1, config.threads));
    if (threads == 1) {
        for (std::size_t idx = 0; idx < cells.size(); ++idx) run(idx);
        return cells;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(threads);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t idx = next++; idx < cells.size(); idx = next++) run(idx);
            } catch (...) {
                failures[t] = std::current_exception();
                next = cells.size();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : failures) {
        if (e) std::rethrow_exception(e);
    }
    return cells;
}

double find_threshold(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(hi >= lo)) throw Error(ErrorCode::InvalidArgument, "find_threshold needs lo <= hi");
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (!(flo * fhi < 0.0)) {
        throw Error(ErrorCode::NoSignChange, "no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    const double tolerance = std::max(tol, 0.0);
    for (int it = 0; it < 200 && (hi - lo) > tolerance; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

nlohmann::json to_json(const GeometryEntry& e) {
    return {{"config", to_json(e.config)},
            {"cells", e.cells},
            {"physical", e.physical},
            {"ppt_fraction", e.ppt_fraction},
            {"npt_undetected_fraction", e.npt_undetected_fraction},
            {"gme_fraction", e.gme_fraction}};
}

GeometryEntry summarize(const ScanConfig& config, const std::vector<ScanCell>& cells) {
    GeometryEntry e;
    e.config = config;
    e.cells = cells.size();
    std::size_t ppt = 0;
    std::size_t npt = 0;
    std::size_t gme = 0;
    for (const auto& c : cells) {
        switch (c.cls) {
        case CellClass::Invalid: break;
        case CellClass::Ppt: ++ppt; break;
        case CellClass::NptUndetected: ++npt; break;
        case CellClass::GmeDetected: ++gme; break;
        }
    }
    e.physical = ppt + npt + gme;
    if (e.physical > 0) {
        const auto total = static_cast<double>(e.physical);
        e.ppt_fraction = static_cast<double>(ppt) / total;
        e.npt_undetected_fraction = static_cast<double>(npt) / total;
        e.gme_fraction = static_cast<double>(gme) / total;
    }
    return e;
}

std::vector<GeometryEntry> compare_geometries(const std::vector<ScanConfig>& configs) {
    for (const auto& c : configs) {
        if (c.resolution_alpha != configs.front().resolution_alpha ||
            c.resolution_beta != configs.front().resolution_beta) {
            throw Error(ErrorCode::InvalidArgument, "compare_geometries needs identical grid resolutions");
        }
    }
    std::vector<GeometryEntry> out;
    for (const auto& c : configs) out.push_back(summarize(c, scan(c)));
    return out;
}

} // namespace ghz
