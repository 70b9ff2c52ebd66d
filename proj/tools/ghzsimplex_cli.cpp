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

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ghzsimplex/ghzsimplex.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

/// Raised when a library call fails; carries the exit code to return.
struct CallFailure {
    int exit_code;
    std::string message;
};

int exit_for(ghz_status s) {
    switch (s) {
    case GHZ_ERR_INVALID_ARGUMENT:
    case GHZ_ERR_DIMENSION_MISMATCH:
    case GHZ_ERR_OUT_OF_RANGE:
    case GHZ_ERR_UNSUPPORTED: return kExitUsage;
    default: return kExitValidation;
    }
}

void check(ghz_status s) {
    if (s != GHZ_OK) throw CallFailure{exit_for(s), std::string(ghz_status_name(s)) + ": " + ghz_last_error()};
}

/// Takes ownership of a library string.
json take_json(char* raw) {
    std::string text(raw);
    ghz_string_free(raw);
    return json::parse(text);
}

std::string take_string(char* raw) {
    std::string text(raw);
    ghz_string_free(raw);
    return text;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<int> parse_digits(const std::string& text) {
    std::vector<int> out;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(token, &used));
            if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--label", "expected comma-separated digits, got '" + text + "'");
        }
    }
    if (out.empty() && text.find_first_not_of("0123456789") == std::string::npos) {
        for (char c : text) out.push_back(c - '0');
    }
    return out;
}

struct Globals {
    std::uint64_t seed = 0;
    int threads = 1;
    std::string format = "text";
};

struct FamilyFlags {
    std::string family = "noise";
    int n = 3;
    int d = 2;
    std::string label;
    double alpha = 0.0;
    double beta = 0.0;
    double mu = 0.0;

    void attach(CLI::App* app) {
        app->add_option("--family", family, "noise | pair | square (tau) | facet")->capture_default_str();
        app->add_option("--n", n, "number of parties")->capture_default_str();
        app->add_option("--d", d, "local dimension")->capture_default_str();
        app->add_option("--label", label, "GHZ label digits s..,k,l (e.g. 0,1,1)");
        app->add_option("--alpha", alpha, "first mixing weight")->capture_default_str();
        app->add_option("--beta", beta, "second mixing weight")->capture_default_str();
        app->add_option("--mu", mu, "facet ray parameter")->capture_default_str();
    }

    json to_json() const {
        json j{{"family", family}, {"n", n}, {"d", d}, {"alpha", alpha}, {"beta", beta}, {"mu", mu}};
        if (!label.empty()) j["label"] = parse_digits(label);
        return j;
    }
};

int run_basis(const Globals& g, int n, int d, const std::string& export_path) {
    char* raw = nullptr;
    check(ghz_basis_report_json(n, d, &raw));
    const json report = take_json(raw);
    if (!export_path.empty()) check(ghz_basis_export(n, d, export_path.c_str()));
    const bool ok = report.at("max_gram_offdiag").get<double>() < 1e-10 &&
                    report.at("max_gram_diag_error").get<double>() < 1e-10;
    if (g.format == "json") {
        std::cout << report.dump() << '\n';
    } else {
        std::cout << report.at("states").get<std::size_t>() << " states, max Gram off-diagonal "
                  << num(report.at("max_gram_offdiag").get<double>()) << ", max norm error "
                  << num(report.at("max_gram_diag_error").get<double>()) << '\n';
        if (!export_path.empty()) std::cout << "exported to " << export_path << '\n';
    }
    return ok ? kExitOk : kExitValidation;
}

int run_state(const Globals& g, const FamilyFlags& f) {
    ghz_density* rho = nullptr;
    check(ghz_density_family(f.to_json().dump().c_str(), &rho));
    char* raw = nullptr;
    const ghz_status s = ghz_density_validity_json(rho, &raw);
    ghz_density_free(rho);
    check(s);
    const json v = take_json(raw);
    if (g.format == "json") {
        std::cout << v.dump() << '\n';
    } else {
        std::cout << "family " << f.family << " n=" << f.n << " d=" << f.d << " dim=" << v.at("dim").get<int>()
                  << '\n';
        std::cout << "hermitian asymmetry " << num(v.at("hermitian_asymmetry").get<double>()) << '\n';
        std::cout << "trace error " << num(v.at("trace_error").get<double>()) << '\n';
        std::cout << "min eigenvalue " << num(v.at("min_eigenvalue").get<double>()) << '\n';
        std::cout << "min PT eigenvalue per party";
        for (const auto& e : v.at("min_pt_eig_per_party")) std::cout << ' ' << num(e.get<double>());
        std::cout << '\n';
        std::cout << (v.at("is_state").get<bool>() ? "valid density operator" : "not a density operator") << '\n';
    }
    return v.at("is_state").get<bool>() ? kExitOk : kExitValidation;
}

std::string detected_word(const json& r) { return r.at("detected").get<bool>() ? "detected" : "not detected"; }

int run_criteria(const Globals& g, const FamilyFlags& f, const std::string& optimize, int restarts,
                 int max_evaluations, int m) {
    json opts{{"seed", g.seed}, {"threads", g.threads}, {"restarts", restarts}, {"max_evaluations", max_evaluations},
              {"m", m}};
    if (!optimize.empty()) opts["optimize"] = optimize;
    char* raw = nullptr;
    check(ghz_criteria_report_json(f.to_json().dump().c_str(), opts.dump().c_str(), &raw));
    const json r = take_json(raw);
    if (g.format == "json") {
        std::cout << r.dump() << '\n';
        return kExitOk;
    }
    std::cout << "family " << f.family << " n=" << f.n << " d=" << f.d << '\n';
    std::cout << "min eigenvalue " << num(r.at("validity").at("min_eigenvalue").get<double>()) << '\n';
    std::cout << "min PT eigenvalue " << num(r.at("min_pt_eig").get<double>()) << '\n';
    const json& q = r.at("q_ghz_aligned");
    std::cout << "q0 = " << num(q.at("value").get<double>()) << ", " << detected_word(q) << " (aligned frame)\n";
    if (r.contains("q0_closed_form")) std::cout << "q0 closed form = " << num(r.at("q0_closed_form").get<double>()) << '\n';
    if (r.contains("pair_type")) std::cout << "pair type " << r.at("pair_type").get<std::string>() << '\n';
    if (r.contains("q_dicke")) {
        std::cout << "q_dicke(m=" << m << ") = " << num(r.at("q_dicke").at("value").get<double>()) << ", "
                  << detected_word(r.at("q_dicke")) << " (computational basis)\n";
    }
    if (r.contains("q_ghz_optimized")) {
        const json& o = r.at("q_ghz_optimized");
        std::cout << "q_ghz optimized = " << num(o.at("value").get<double>()) << ", " << detected_word(o) << " ("
                  << restarts << " restarts)\n";
    }
    if (r.contains("q_dicke_optimized")) {
        const json& o = r.at("q_dicke_optimized");
        std::cout << "q_dicke optimized = " << num(o.at("value").get<double>()) << ", " << detected_word(o) << " ("
                  << restarts << " restarts)\n";
    }
    return kExitOk;
}

struct ScanFlags {
    std::string config;
    std::string family = "pair";
    int n = 3;
    int d = 2;
    std::string label;
    int resolution = 0;
    int resolution_alpha = 201;
    int resolution_beta = 201;
    std::vector<double> alpha{0.0, 1.0};
    std::vector<double> beta{0.0, 1.0};
    std::string q0 = "auto";
    int restarts = 8;
    int max_evaluations = 0;
    std::string output;
    bool summary = false;
};

json scan_config(const Globals& g, const ScanFlags& f, const CLI::App& app) {
    json j;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) throw CallFailure{kExitUsage, "--config: cannot read '" + f.config + "'"};
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw CallFailure{kExitUsage, "--config: " + std::string(e.what())};
        }
        if (!j.is_object()) throw CallFailure{kExitUsage, "--config: expected a JSON object"};
    }
    const bool from_file = !f.config.empty();
    auto given = [&](const char* flag) { return app.count(flag) > 0 || !from_file; };
    if (given("--family")) j["family"] = f.family;
    if (given("--n")) j["n"] = f.n;
    if (given("--d")) j["d"] = f.d;
    if (!f.label.empty()) j["label"] = parse_digits(f.label);
    if (app.count("--resolution")) {
        j.erase("resolution_alpha");
        j.erase("resolution_beta");
        j["resolution"] = f.resolution;
    }
    const bool shared = app.count("--resolution") > 0;
    if (app.count("--resolution-alpha") || (!from_file && !shared)) j["resolution_alpha"] = f.resolution_alpha;
    if (app.count("--resolution-beta") || (!from_file && !shared)) j["resolution_beta"] = f.resolution_beta;
    if (given("--alpha-range")) j["alpha"] = f.alpha;
    if (given("--beta-range")) j["beta"] = f.beta;
    if (given("--q0")) j["q0"] = f.q0;
    if (given("--restarts")) j["restarts"] = f.restarts;
    if (given("--max-evaluations")) j["max_evaluations"] = f.max_evaluations;
    if (!f.output.empty()) j["output"] = f.output;
    if (app.get_parent()->count("--seed") || !j.contains("seed")) j["seed"] = g.seed;
    if (app.get_parent()->count("--threads") || !j.contains("threads")) j["threads"] = g.threads;
    return j;
}

int run_scan(const Globals& g, const ScanFlags& f, const CLI::App& app) {
    json cfg = scan_config(g, f, app);
    char* raw = nullptr;
    check(ghz_scan_config_normalize(cfg.dump().c_str(), &raw));
    const json normalized = take_json(raw);
    ghz_scan* scan = nullptr;
    check(ghz_scan_run(normalized.dump().c_str(), &scan));
    std::string body;
    ghz_status s = GHZ_OK;
    if (f.summary) {
        s = ghz_scan_summary_json(scan, &raw);
    } else if (g.format == "json") {
        s = ghz_scan_json(scan, &raw);
    } else {
        s = ghz_scan_csv(scan, &raw);
    }
    ghz_scan_free(scan);
    check(s);
    body = take_string(raw);
    if (f.summary || g.format == "json") body += '\n';
    const std::string path = normalized.value("output", std::string());
    if (path.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw CallFailure{kExitValidation, "cannot open '" + path + "' for writing"};
        out << body;
        if (!out) throw CallFailure{kExitValidation, "write to '" + path + "' failed"};
    }
    return kExitOk;
}

int run_compare(const Globals& g, const std::vector<std::string>& configs) {
    json arr = json::array();
    for (const auto& p : configs) {
        std::ifstream in(p);
        if (!in) throw CallFailure{kExitUsage, "--config: cannot read '" + p + "'"};
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw CallFailure{kExitUsage, "--config: " + std::string(e.what())};
        }
        if (!j.contains("seed")) j["seed"] = g.seed;
        if (!j.contains("threads")) j["threads"] = g.threads;
        arr.push_back(j);
    }
    char* raw = nullptr;
    check(ghz_compare_geometries_json(arr.dump().c_str(), &raw));
    const json report = take_json(raw);
    if (g.format == "json") {
        std::cout << report.dump() << '\n';
        return kExitOk;
    }
    std::cout << "family,n,d,cells,physical,ppt,npt_undetected,gme_detected\n";
    for (const auto& e : report) {
        const json& c = e.at("config");
        std::cout << c.at("family").get<std::string>() << ',' << c.at("n").get<int>() << ',' << c.at("d").get<int>()
                  << ',' << e.at("cells").get<std::size_t>() << ',' << e.at("physical").get<std::size_t>() << ','
                  << num(e.at("ppt_fraction").get<double>()) << ','
                  << num(e.at("npt_undetected_fraction").get<double>()) << ','
                  << num(e.at("gme_fraction").get<double>()) << '\n';
    }
    return kExitOk;
}

int run_thresholds(const Globals& g, int n, int d) {
    char* raw = nullptr;
    check(ghz_noise_thresholds_json(n, d, &raw));
    const json r = take_json(raw);
    if (g.format == "json") {
        std::cout << r.dump() << '\n';
    } else {
        std::cout << "positivity alpha in [" << num(r.at("positivity").at(0).get<double>()) << ", "
                  << num(r.at("positivity").at(1).get<double>()) << "]\n";
        std::cout << "PPT for alpha <= " << num(r.at("ppt_boundary").get<double>()) << '\n';
        std::cout << "q0 > 0 for alpha > " << num(r.at("gme_boundary").get<double>()) << '\n';
    }
    return kExitOk;
}

int run_interfere(const Globals& g, int qubits, const std::string& input, bool skip_q, int restarts, int skip_bs) {
    json opts{{"seed", g.seed}, {"threads", g.threads}, {"q_ghz", !skip_q}, {"restarts", restarts},
              {"skip_final_bs", skip_bs}};
    char* raw = nullptr;
    check(ghz_interfere_json(qubits, input.c_str(), opts.dump().c_str(), &raw));
    const json r = take_json(raw);
    if (g.format == "json") {
        std::cout << r.dump() << '\n';
        return kExitOk;
    }
    std::cout << "input " << input << '\n';
    const auto& re = r.at("output").at("re");
    const auto& im = r.at("output").at("im");
    for (std::size_t i = 0; i < re.size(); ++i) {
        const double a = re[i].get<double>();
        const double b = im[i].get<double>();
        if (std::abs(a) < 1e-12 && std::abs(b) < 1e-12) continue;
        std::string bits;
        for (int p = qubits - 1; p >= 0; --p) bits += ((i >> p) & 1) ? '1' : '0';
        std::cout << "  |" << bits << ">  " << num(std::abs(a) < 1e-15 ? 0.0 : a) << (b < 0 ? " - " : " + ")
                  << num(std::abs(b)) << "i\n";
    }
    std::cout << "reduced purities";
    for (const auto& p : r.at("reduced_purities")) std::cout << ' ' << num(p.get<double>());
    std::cout << '\n' << (r.at("product").get<bool>() ? "product state" : "entangled") << '\n';
    if (r.contains("named_match")) {
        std::cout << "matches " << r.at("named_match").get<std::string>() << " up to phase "
                  << num(r.at("named_phase").get<double>()) << '\n';
    }
    if (r.contains("concurrence")) std::cout << "concurrence " << num(r.at("concurrence").get<double>()) << '\n';
    if (r.contains("q_ghz")) {
        std::cout << "Q_GHZ = " << num(r.at("q_ghz").at("value").get<double>()) << " (optimized, " << restarts
                  << " restarts)\n";
    }
    return kExitOk;
}

int run_verify(const Globals& g, const std::vector<int>& ids) {
    char* raw = nullptr;
    check(ghz_verify_json(ids.empty() ? nullptr : ids.data(), ids.size(), g.seed, g.threads, &raw));
    const json r = take_json(raw);
    if (g.format == "json") {
        std::cout << r.dump() << '\n';
    } else {
        for (const auto& c : r.at("checks")) {
            std::string status = c.at("status").get<std::string>();
            if (c.at("soft").get<bool>()) status += " (soft)";
            std::printf("[%2d] %-16s %-24s %7.2fs  %s\n", c.at("id").get<int>(), status.c_str(),
                        c.at("title").get<std::string>().c_str(), c.at("seconds").get<double>(),
                        c.at("detail").get<std::string>().c_str());
        }
        std::printf("%s\n", r.at("passed").get<bool>() ? "all checks acceptable" : "verification failed");
    }
    return r.at("passed").get<bool>() ? kExitOk : kExitValidation;
}

int default_threads() {
    if (const char* env = std::getenv("GHZSIMPLEX_THREADS")) {
        try {
            const int t = std::stoi(env);
            if (t >= 1) return t;
        } catch (const std::exception&) {
        }
    }
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"GHZ magic simplex toolkit", "ghzsimplex"};
    app.require_subcommand(1);
    Globals g;
    g.threads = default_threads();
    app.add_option("--seed", g.seed, "master RNG seed")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads (env GHZSIMPLEX_THREADS)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    app.fallthrough();

    int basis_n = 3;
    int basis_d = 2;
    std::string export_path;
    auto* basis = app.add_subcommand("basis", "build the GHZ basis and check orthonormality");
    basis->add_option("--n", basis_n, "number of parties")->capture_default_str();
    basis->add_option("--d", basis_d, "local dimension")->capture_default_str();
    basis->add_option("--export", export_path, "write the basis amplitudes as JSON");

    FamilyFlags state_flags;
    auto* state = app.add_subcommand("state", "build a mixture state and report validity");
    state_flags.attach(state);

    FamilyFlags crit_flags;
    std::string optimize;
    int crit_restarts = 8;
    int crit_evals = 0;
    int crit_m = 1;
    auto* criteria = app.add_subcommand("criteria", "evaluate entanglement criteria on a mixture state");
    crit_flags.attach(criteria);
    auto* opt_flag = criteria->add_option("--optimize", optimize, "optimize q_ghz | q_dicke | all")
                         ->expected(0, 1)
                         ->default_str("q_ghz");
    criteria->add_option("--restarts", crit_restarts, "optimizer restarts")->capture_default_str();
    criteria->add_option("--max-evaluations", crit_evals, "evaluations per restart (0 = automatic)")
        ->capture_default_str();
    criteria->add_option("--m", crit_m, "Dicke excitation number")->capture_default_str();

    ScanFlags scan_flags;
    auto* scan = app.add_subcommand("scan", "classify a grid of mixture states (CSV)");
    scan->add_option("--config", scan_flags.config, "JSON scan config; flags override its keys");
    scan->add_option("--family", scan_flags.family, "noise | pair | square (tau) | facet")->capture_default_str();
    scan->add_option("--n", scan_flags.n, "number of parties")->capture_default_str();
    scan->add_option("--d", scan_flags.d, "local dimension")->capture_default_str();
    scan->add_option("--label", scan_flags.label, "GHZ label digits for the pair family");
    scan->add_option("--resolution", scan_flags.resolution, "grid points on both axes");
    scan->add_option("--resolution-alpha", scan_flags.resolution_alpha, "grid points on the alpha axis")
        ->capture_default_str();
    scan->add_option("--resolution-beta", scan_flags.resolution_beta, "grid points on the beta axis")
        ->capture_default_str();
    scan->add_option("--alpha-range", scan_flags.alpha, "alpha lo hi")->expected(2);
    scan->add_option("--beta-range", scan_flags.beta, "beta (mu for facet) lo hi")->expected(2);
    scan->add_option("--q0", scan_flags.q0, "auto | closed | aligned | optimizer")->capture_default_str();
    scan->add_option("--restarts", scan_flags.restarts, "optimizer restarts")->capture_default_str();
    scan->add_option("--max-evaluations", scan_flags.max_evaluations, "evaluations per restart")
        ->capture_default_str();
    scan->add_option("--output", scan_flags.output, "write to a file instead of stdout");
    scan->add_flag("--summary", scan_flags.summary, "print class fractions instead of cells");

    std::vector<std::string> compare_configs;
    auto* compare = app.add_subcommand("compare", "compare class fractions of several scan configs");
    compare->add_option("--config", compare_configs, "JSON scan configs")->required();

    int thr_n = 3;
    int thr_d = 2;
    auto* thresholds = app.add_subcommand("thresholds", "closed-form thresholds of the noisy GHZ state");
    thresholds->add_option("--n", thr_n, "number of parties")->capture_default_str();
    thresholds->add_option("--d", thr_d, "local dimension")->capture_default_str();

    int qubits = 3;
    std::string input;
    bool no_q = false;
    int int_restarts = 32;
    int skip_bs = -1;
    auto* interfere = app.add_subcommand("interfere", "run the GHZ interferometer on a product input");
    interfere->add_option("--qubits", qubits, "number of qubits")->capture_default_str();
    interfere->add_option("--input", input, "input string over H,V,R,L,+,-,0,1")->required();
    interfere->add_flag("--no-q", no_q, "skip the optimized Q_GHZ");
    interfere->add_option("--restarts", int_restarts, "optimizer restarts")->capture_default_str();
    interfere->add_option("--skip-final-bs", skip_bs, "omit the final beam splitter on this qubit")
        ->capture_default_str();

    std::vector<int> check_ids;
    auto* verify = app.add_subcommand("verify", "run the acceptance checks");
    verify->add_option("--check", check_ids, "run only these check ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (basis->parsed()) return run_basis(g, basis_n, basis_d, export_path);
        if (state->parsed()) return run_state(g, state_flags);
        if (criteria->parsed()) {
            if (opt_flag->count() > 0 && optimize.empty()) optimize = "q_ghz";
            return run_criteria(g, crit_flags, optimize, crit_restarts, crit_evals, crit_m);
        }
        if (scan->parsed()) {
            if (g.format == "text") g.format = "csv";
            return run_scan(g, scan_flags, *scan);
        }
        if (compare->parsed()) return run_compare(g, compare_configs);
        if (thresholds->parsed()) return run_thresholds(g, thr_n, thr_d);
        if (interfere->parsed()) return run_interfere(g, qubits, input, no_q, int_restarts, skip_bs);
        if (verify->parsed()) return run_verify(g, check_ids);
    } catch (const CallFailure& f) {
        std::cerr << "error: " << f.message << '\n';
        return f.exit_code;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitUsage;
}
