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

#include "ghzsimplex/ghzsimplex.h"

#include <cmath>
#include <algorithm>
#include <cstring>
#include <memory>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghzsimplex/closed_forms.hpp"
#include "ghzsimplex/criteria.hpp"
#include "ghzsimplex/error.hpp"
#include "ghzsimplex/interferometer.hpp"
#include "ghzsimplex/mixtures.hpp"
#include "ghzsimplex/scanner.hpp"
#include "ghzsimplex/serialize.hpp"
#include "ghzsimplex/verify.hpp"
#include "ghzsimplex/weyl.hpp"

struct ghz_state {
    ghz::PureState value;
};

struct ghz_density {
    ghz::DensityOperator value;
};

struct ghz_scan {
    ghz::ScanConfig config;
    std::vector<ghz::ScanCell> cells;
};

namespace {

using nlohmann::json;

thread_local std::string last_error;

ghz_status map_code(ghz::ErrorCode c) {
    switch (c) {
    case ghz::ErrorCode::InvalidArgument: return GHZ_ERR_INVALID_ARGUMENT;
    case ghz::ErrorCode::DimensionMismatch: return GHZ_ERR_DIMENSION_MISMATCH;
    case ghz::ErrorCode::SizeBudget: return GHZ_ERR_SIZE_BUDGET;
    case ghz::ErrorCode::NotHermitian: return GHZ_ERR_NOT_HERMITIAN;
    case ghz::ErrorCode::OutOfRange: return GHZ_ERR_OUT_OF_RANGE;
    case ghz::ErrorCode::Unsupported: return GHZ_ERR_UNSUPPORTED;
    case ghz::ErrorCode::NoSignChange: return GHZ_ERR_NO_SIGN_CHANGE;
    case ghz::ErrorCode::Io: return GHZ_ERR_IO;
    }
    return GHZ_ERR_INTERNAL;
}

template <typename F>
ghz_status guarded(F&& f) {
    try {
        last_error.clear();
        f();
        return GHZ_OK;
    } catch (const ghz::Error& e) {
        last_error = e.what();
        return map_code(e.code());
    } catch (const json::exception& e) {
        last_error = std::string("invalid JSON: ") + e.what();
        return GHZ_ERR_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return GHZ_ERR_SIZE_BUDGET;
    } catch (const std::exception& e) {
        last_error = e.what();
        return GHZ_ERR_INTERNAL;
    }
}

void require(const void* p, const char* what) {
    if (p == nullptr) throw ghz::Error(ghz::ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void emit(const json& j, char** out) {
    require(out, "output pointer");
    *out = dup_string(j.dump());
}

ghz::GhzLabel label_from(const ghz::SystemShape& shape, const int* label, std::size_t len) {
    if (len == 0) return ghz::GhzLabel::zero(shape);
    require(label, "label");
    if (len != static_cast<std::size_t>(shape.parties())) {
        throw ghz::Error(ghz::ErrorCode::InvalidArgument, "label needs one digit per party");
    }
    std::vector<int> s(label, label + len - 2);
    return ghz::GhzLabel::make(shape, s, label[len - 2], label[len - 1]);
}

json complex_vector_json(const ghz::ComplexVector& v) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        re.push_back(v(i).real());
        im.push_back(v(i).imag());
    }
    return {{"re", re}, {"im", im}};
}

ghz::FamilyPoint family_from_json(const json& j) {
    ghz::FamilyPoint p;
    const auto name = j.at("family").get<std::string>();
    const auto fam = ghz::parse_family(name);
    if (!fam) throw ghz::Error(ghz::ErrorCode::InvalidArgument, "unknown family '" + name + "'");
    p.family = *fam;
    p.n = j.value("n", p.n);
    p.d = j.value("d", p.d);
    if (j.contains("label") && !j.at("label").empty()) p.labels.push_back(j.at("label").get<std::vector<int>>());
    p.alpha = j.value("alpha", 0.0);
    p.beta = j.value("beta", 0.0);
    p.mu = j.value("mu", 0.0);
    return p;
}

json validity_json(const ghz::ComplexMatrix& m, const ghz::SystemShape& shape) {
    const ghz::ValidityReport v = ghz::validate_density(m);
    json pt = json::array();
    const ghz::DensityOperator rho = ghz::DensityOperator::make(shape, m);
    for (int p = 0; p < shape.parties(); ++p) pt.push_back(ghz::ppt_min_eig(rho, p));
    return {{"n", shape.parties()},
            {"d", shape.local_dim()},
            {"dim", shape.dimension()},
            {"hermitian_asymmetry", v.asymmetry},
            {"trace_error", v.trace_error},
            {"min_eigenvalue", v.min_eigenvalue},
            {"hermitian", v.hermitian},
            {"unit_trace", v.unit_trace},
            {"positive", v.positive},
            {"is_state", v.is_state()},
            {"min_pt_eig_per_party", pt}};
}

ghz::OptimizerOptions optimizer_options(const json& j) {
    ghz::OptimizerOptions o;
    o.restarts = j.value("restarts", o.restarts);
    o.seed = j.value("seed", o.seed);
    o.max_evaluations = j.value("max_evaluations", o.max_evaluations);
    o.threads = j.value("threads", o.threads);
    o.dicke_m = j.value("m", o.dicke_m);
    o.aligned_start = j.value("aligned_start", o.aligned_start);
    if (o.restarts < 1 || o.threads < 1 || o.max_evaluations < 0) {
        throw ghz::Error(ghz::ErrorCode::InvalidArgument, "restarts and threads must be positive");
    }
    return o;
}

json parse_or_empty(const char* text) {
    if (text == nullptr || *text == '\0') return json::object();
    return json::parse(text);
}

} // namespace

extern "C" {

const char* ghz_version(void) { return "0.1.0"; }

const char* ghz_status_name(ghz_status status) {
    switch (status) {
    case GHZ_OK: return "ok";
    case GHZ_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case GHZ_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
    case GHZ_ERR_SIZE_BUDGET: return "size_budget";
    case GHZ_ERR_NOT_HERMITIAN: return "not_hermitian";
    case GHZ_ERR_OUT_OF_RANGE: return "out_of_range";
    case GHZ_ERR_UNSUPPORTED: return "unsupported";
    case GHZ_ERR_NO_SIGN_CHANGE: return "no_sign_change";
    case GHZ_ERR_IO: return "io";
    case GHZ_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* ghz_last_error(void) { return last_error.c_str(); }

void ghz_string_free(char* s) { delete[] s; }

ghz_status ghz_state_ghz(int n, int d, const int* label, size_t label_len, ghz_state** out) {
    return guarded([&] {
        require(out, "output pointer");
        const auto shape = ghz::SystemShape::make(n, d);
        *out = new ghz_state{ghz::ghz_state(label_from(shape, label, label_len))};
    });
}

ghz_status ghz_state_from_amplitudes(int n, int d, const double* re, const double* im, size_t len, ghz_state** out) {
    return guarded([&] {
        require(out, "output pointer");
        require(re, "re");
        const auto shape = ghz::SystemShape::make(n, d);
        if (len != shape.dimension()) {
            throw ghz::Error(ghz::ErrorCode::DimensionMismatch, "amplitude count must equal d^n");
        }
        ghz::ComplexVector v(static_cast<Eigen::Index>(shape.dimension()));
        for (std::size_t i = 0; i < len; ++i) v(static_cast<Eigen::Index>(i)) = {re[i], im ? im[i] : 0.0};
        *out = new ghz_state{ghz::PureState::make(shape, v)};
    });
}

ghz_status ghz_state_dim(const ghz_state* s, size_t* out) {
    return guarded([&] {
        require(s, "state");
        require(out, "output pointer");
        *out = s->value.shape().dimension();
    });
}

ghz_status ghz_state_amplitudes(const ghz_state* s, double* re, double* im, size_t len) {
    return guarded([&] {
        require(s, "state");
        require(re, "re");
        require(im, "im");
        const auto& a = s->value.amplitudes();
        if (len != static_cast<std::size_t>(a.size())) {
            throw ghz::Error(ghz::ErrorCode::DimensionMismatch, "buffer length must equal the state dimension");
        }
        for (std::size_t i = 0; i < len; ++i) {
            re[i] = a(static_cast<Eigen::Index>(i)).real();
            im[i] = a(static_cast<Eigen::Index>(i)).imag();
        }
    });
}

void ghz_state_free(ghz_state* s) { delete s; }

ghz_status ghz_density_family(const char* family_json, ghz_density** out) {
    return guarded([&] {
        require(family_json, "family_json");
        require(out, "output pointer");
        *out = new ghz_density{ghz::build_family_state(family_from_json(json::parse(family_json)))};
    });
}

ghz_status ghz_density_from_state(const ghz_state* s, ghz_density** out) {
    return guarded([&] {
        require(s, "state");
        require(out, "output pointer");
        *out = new ghz_density{ghz::DensityOperator::make(s->value.shape(), s->value.projector())};
    });
}

ghz_status ghz_density_dim(const ghz_density* rho, size_t* out) {
    return guarded([&] {
        require(rho, "density");
        require(out, "output pointer");
        *out = rho->value.shape().dimension();
    });
}

ghz_status ghz_density_min_eig(const ghz_density* rho, double* out) {
    return guarded([&] {
        require(rho, "density");
        require(out, "output pointer");
        *out = ghz::min_eigenvalue(rho->value.matrix());
    });
}

ghz_status ghz_density_min_pt_eig(const ghz_density* rho, double* out) {
    return guarded([&] {
        require(rho, "density");
        require(out, "output pointer");
        *out = ghz::ppt_min_eig_all(rho->value);
    });
}

ghz_status ghz_density_validity_json(const ghz_density* rho, char** out_json) {
    return guarded([&] {
        require(rho, "density");
        emit(validity_json(rho->value.matrix(), rho->value.shape()), out_json);
    });
}

void ghz_density_free(ghz_density* rho) { delete rho; }

ghz_status ghz_q_ghz_aligned(const ghz_density* rho, const int* label, size_t label_len, char** out_json) {
    return guarded([&] {
        require(rho, "density");
        const ghz::ChiPair chi = ghz::canonical_chi(label_from(rho->value.shape(), label, label_len));
        emit(ghz::to_json(ghz::q_ghz(rho->value, chi.chi1, chi.chi2)), out_json);
    });
}

ghz_status ghz_q_dicke(const ghz_density* rho, int m, char** out_json) {
    return guarded([&] {
        require(rho, "density");
        emit(ghz::to_json(ghz::q_dicke(rho->value, m)), out_json);
    });
}

ghz_status ghz_optimize(const ghz_density* rho, const char* options_json, char** out_json) {
    return guarded([&] {
        require(rho, "density");
        const json j = parse_or_empty(options_json);
        const auto name = j.value("criterion", std::string("q_ghz"));
        ghz::CriterionKind kind;
        if (name == "q_ghz") {
            kind = ghz::CriterionKind::QGhz;
        } else if (name == "q_dicke") {
            kind = ghz::CriterionKind::QDicke;
        } else {
            throw ghz::Error(ghz::ErrorCode::InvalidArgument, "criterion must be q_ghz or q_dicke");
        }
        ghz::OptimizerOptions o = optimizer_options(j);
        if (j.contains("label")) {
            const auto digits = j.at("label").get<std::vector<int>>();
            o.base_frame = ghz::ghz_frame(label_from(rho->value.shape(), digits.data(), digits.size()));
        }
        emit(ghz::to_json(ghz::optimize_criterion(rho->value, kind, o)), out_json);
    });
}

ghz_status ghz_criteria_report_json(const char* family_json, const char* options_json, char** out_json) {
    return guarded([&] {
        require(family_json, "family_json");
        const ghz::FamilyPoint p = family_from_json(json::parse(family_json));
        const json opts = parse_or_empty(options_json);
        const ghz::DensityOperator rho = ghz::build_family_state(p);
        const int m = opts.value("m", 1);
        json j{{"family", ghz::family_name(p.family)}, {"n", p.n}, {"d", p.d}};
        j["validity"] = validity_json(rho.matrix(), rho.shape());
        j["min_pt_eig"] = ghz::ppt_min_eig_all(rho);
        ghz::CriterionResult best;
        best.value = -INFINITY;
        for (const auto& label : ghz::component_labels(p)) {
            const ghz::ChiPair chi = ghz::canonical_chi(label);
            ghz::CriterionResult r = ghz::q_ghz(rho, chi.chi1, chi.chi2);
            if (r.value > best.value) {
                best = r;
                best.witness["label"] = label.digits();
            }
        }
        j["q_ghz_aligned"] = ghz::to_json(best);
        if (p.family == ghz::FamilyKind::Noise) {
            j["q0_closed_form"] = ghz::q0_noise(p.n, p.d, p.alpha);
        } else if (p.family == ghz::FamilyKind::Pair && (p.d == 2 || p.d == 3)) {
            const auto labels = ghz::component_labels(p);
            const ghz::PairType type = ghz::classify_pair(p.d, labels.back());
            j["pair_type"] = ghz::pair_type_name(type);
            if (type != ghz::PairType::Unclassified) {
                j["q0_closed_form"] = ghz::q0_pair(p.d, type, p.alpha, p.beta);
                j["pt_closed_form"] = ghz::pt_conditions_pair(p.d, type, p.alpha, p.beta);
            }
        }
        if (p.d == 2) j["q_dicke"] = ghz::to_json(ghz::q_dicke(rho, m));
        const auto which = opts.value("optimize", std::string());
        if (!which.empty()) {
            const ghz::OptimizerOptions o = optimizer_options(opts);
            if (which == "q_ghz" || which == "all") {
                j["q_ghz_optimized"] = ghz::to_json(ghz::optimize_criterion(rho, ghz::CriterionKind::QGhz, o));
            }
            if ((which == "q_dicke" || which == "all") && p.d == 2) {
                j["q_dicke_optimized"] = ghz::to_json(ghz::optimize_criterion(rho, ghz::CriterionKind::QDicke, o));
            }
            if (which != "q_ghz" && which != "q_dicke" && which != "all") {
                throw ghz::Error(ghz::ErrorCode::InvalidArgument, "optimize must be q_ghz, q_dicke or all");
            }
        }
        emit(j, out_json);
    });
}

ghz_status ghz_noise_thresholds_json(int n, int d, char** out_json) {
    return guarded([&] { emit(ghz::to_json(ghz::noise_thresholds(n, d)), out_json); });
}

ghz_status ghz_q0_noise(int n, int d, double alpha, double* out) {
    return guarded([&] {
        require(out, "output pointer");
        *out = ghz::q0_noise(n, d, alpha);
    });
}

ghz_status ghz_pair_closed_forms_json(int d, const int* label, size_t label_len, double alpha, double beta,
                                      char** out_json) {
    return guarded([&] {
        const auto shape = ghz::SystemShape::make(3, d);
        const ghz::PairType type = ghz::classify_pair(d, label_from(shape, label, label_len));
        json j{{"d", d}, {"type", ghz::pair_type_name(type)}, {"alpha", alpha}, {"beta", beta}};
        if (type != ghz::PairType::Unclassified) {
            j["q0"] = ghz::q0_pair(d, type, alpha, beta);
            j["pt_min"] = ghz::pt_conditions_pair(d, type, alpha, beta);
            j["pt_expressions"] = ghz::pt_expressions_pair(d, type, alpha, beta);
        }
        emit(j, out_json);
    });
}

ghz_status ghz_basis_report_json(int n, int d, char** out_json) {
    return guarded([&] {
        const auto shape = ghz::SystemShape::make(n, d);
        const auto basis = ghz::ghz_basis(shape);
        double off = 0.0;
        double diag = 0.0;
        for (std::size_t a = 0; a < basis.size(); ++a) {
            for (std::size_t b = a; b < basis.size(); ++b) {
                const double v = std::abs(basis[a].amplitudes().dot(basis[b].amplitudes()));
                if (a == b) {
                    diag = std::max(diag, std::abs(v - 1.0));
                } else {
                    off = std::max(off, v);
                }
            }
        }
        emit({{"n", n}, {"d", d}, {"states", basis.size()}, {"max_gram_offdiag", off}, {"max_gram_diag_error", diag}},
             out_json);
    });
}

ghz_status ghz_basis_export(int n, int d, const char* path) {
    return guarded([&] {
        require(path, "path");
        const auto shape = ghz::SystemShape::make(n, d);
        json states = json::array();
        for (const auto& label : ghz::all_labels(shape)) {
            json entry = complex_vector_json(ghz::ghz_state(label).amplitudes());
            entry["label"] = label.digits();
            states.push_back(entry);
        }
        std::ofstream f(path);
        if (!f) throw ghz::Error(ghz::ErrorCode::Io, std::string("cannot open '") + path + "' for writing");
        f << json{{"n", n}, {"d", d}, {"states", states}}.dump(2) << '\n';
        if (!f) throw ghz::Error(ghz::ErrorCode::Io, std::string("write to '") + path + "' failed");
    });
}

ghz_status ghz_interfere_json(int qubits, const char* input, const char* options_json, char** out_json) {
    return guarded([&] {
        require(input, "input");
        const json opts = parse_or_empty(options_json);
        if (static_cast<int>(std::strlen(input)) != qubits) {
            throw ghz::Error(ghz::ErrorCode::InvalidArgument, "input must have one symbol per qubit");
        }
        const auto shape = ghz::SystemShape::make(qubits, 2);
        const int skip = opts.value("skip_final_bs", -1);
        const ghz::ComplexVector psi = ghz::u_ghz_full(qubits, skip) * ghz::input_state(input);
        json j{{"qubits", qubits}, {"input", input}, {"output", complex_vector_json(psi)}};
        const auto purities = ghz::reduced_purities(shape, psi);
        bool product = true;
        for (double p : purities) product = product && std::abs(p - 1.0) < 1e-9;
        j["reduced_purities"] = purities;
        j["product"] = product;
        if (qubits == 2) j["concurrence"] = ghz::concurrence(psi);
        if (qubits == 3) {
            const auto named = ghz::qubit_named_bases();
            const ghz::PureState out = ghz::PureState::make(shape, psi);
            for (std::size_t i = 0; i < named.hv.size(); ++i) {
                const auto m = ghz::equal_up_to_global_phase(out, named.hv[i], 1e-10);
                if (m.equal) {
                    j["named_match"] = ghz::named_state_name(static_cast<int>(i));
                    j["named_phase"] = m.phase;
                }
            }
        }
        if (opts.value("q_ghz", true)) {
            ghz::OptimizerOptions o = optimizer_options(opts);
            if (!opts.contains("restarts")) o.restarts = 32;
            const auto rho = ghz::DensityOperator::make(shape, psi * psi.adjoint());
            j["q_ghz"] = ghz::to_json(ghz::optimize_criterion(rho, ghz::CriterionKind::QGhz, o));
        }
        emit(j, out_json);
    });
}

ghz_status ghz_scan_run(const char* config_json, ghz_scan** out) {
    return guarded([&] {
        require(config_json, "config_json");
        require(out, "output pointer");
        auto s = std::make_unique<ghz_scan>();
        s->config = ghz::scan_config_from_json(json::parse(config_json));
        s->cells = ghz::scan(s->config);
        *out = s.release();
    });
}

ghz_status ghz_scan_size(const ghz_scan* scan, size_t* out) {
    return guarded([&] {
        require(scan, "scan");
        require(out, "output pointer");
        *out = scan->cells.size();
    });
}

ghz_status ghz_scan_cell_at(const ghz_scan* scan, size_t index, ghz_scan_cell* out) {
    return guarded([&] {
        require(scan, "scan");
        require(out, "output pointer");
        if (index >= scan->cells.size()) throw ghz::Error(ghz::ErrorCode::OutOfRange, "cell index out of range");
        const auto& c = scan->cells[index];
        *out = {c.alpha, c.beta, c.min_eig, c.min_pt_eig, c.q0, static_cast<ghz_cell_class>(static_cast<int>(c.cls))};
    });
}

ghz_status ghz_scan_csv(const ghz_scan* scan, char** out) {
    return guarded([&] {
        require(scan, "scan");
        require(out, "output pointer");
        *out = dup_string(ghz::cells_to_csv(scan->cells));
    });
}

ghz_status ghz_scan_json(const ghz_scan* scan, char** out) {
    return guarded([&] {
        require(scan, "scan");
        emit(ghz::cells_to_json(scan->cells), out);
    });
}

ghz_status ghz_scan_summary_json(const ghz_scan* scan, char** out) {
    return guarded([&] {
        require(scan, "scan");
        emit(ghz::to_json(ghz::summarize(scan->config, scan->cells)), out);
    });
}

void ghz_scan_free(ghz_scan* scan) { delete scan; }

ghz_status ghz_scan_config_normalize(const char* config_json, char** out_json) {
    return guarded([&] {
        require(config_json, "config_json");
        emit(ghz::to_json(ghz::scan_config_from_json(json::parse(config_json))), out_json);
    });
}

ghz_status ghz_compare_geometries_json(const char* configs_json, char** out_json) {
    return guarded([&] {
        require(configs_json, "configs_json");
        const json j = json::parse(configs_json);
        if (!j.is_array()) throw ghz::Error(ghz::ErrorCode::InvalidArgument, "expected a JSON array of scan configs");
        std::vector<ghz::ScanConfig> configs;
        for (const auto& c : j) configs.push_back(ghz::scan_config_from_json(c));
        json report = json::array();
        for (const auto& e : ghz::compare_geometries(configs)) report.push_back(ghz::to_json(e));
        emit(report, out_json);
    });
}

ghz_status ghz_find_threshold(double (*f)(double, void*), void* ctx, double lo, double hi, double tol, double* out) {
    return guarded([&] {
        require(reinterpret_cast<const void*>(f), "f");
        require(out, "output pointer");
        *out = ghz::find_threshold([&](double x) { return f(x, ctx); }, lo, hi, tol);
    });
}

ghz_status ghz_verify_json(const int* ids, size_t count, uint64_t seed, int threads, char** out_json) {
    return guarded([&] {
        ghz::VerifyOptions o;
        o.seed = seed;
        o.threads = threads < 1 ? 1 : threads;
        std::vector<ghz::CheckResult> results;
        if (ids == nullptr || count == 0) {
            results = ghz::run_all_checks(o);
        } else {
            results = ghz::run_checks(std::vector<int>(ids, ids + count), o);
        }
        json arr = json::array();
        bool ok = true;
        for (const auto& r : results) {
            json e = ghz::to_json(r);
            e["acceptable"] = r.acceptable();
            ok = ok && r.acceptable();
            arr.push_back(e);
        }
        emit({{"passed", ok}, {"checks", arr}}, out_json);
    });
}

} // extern "C"
