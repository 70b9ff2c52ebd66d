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
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghzsimplex/ghzsimplex.h"

using nlohmann::json;

namespace {

// Takes ownership of a library string and parses it.
json take(char* s) {
    REQUIRE(s != nullptr);
    const json j = json::parse(s);
    ghz_string_free(s);
    return j;
}

std::string take_text(char* s) {
    REQUIRE(s != nullptr);
    std::string out(s);
    ghz_string_free(s);
    return out;
}

double root_fn(double x, void* ctx) { return x - *static_cast<double*>(ctx); }

} // namespace

TEST_CASE("metadata and status names") {
    CHECK(std::string(ghz_version()) == "0.1.0");
    CHECK(std::string(ghz_status_name(GHZ_OK)) == "ok");
    CHECK(std::string(ghz_status_name(GHZ_ERR_NO_SIGN_CHANGE)) == "no_sign_change");
    CHECK(std::string(ghz_status_name(static_cast<ghz_status>(99))) == "unknown");
    ghz_string_free(nullptr);
}

TEST_CASE("state handles") {
    ghz_state* s = nullptr;
    REQUIRE(ghz_state_ghz(3, 2, nullptr, 0, &s) == GHZ_OK);
    size_t dim = 0;
    CHECK(ghz_state_dim(s, &dim) == GHZ_OK);
    CHECK(dim == 8);
    std::vector<double> re(8), im(8);
    CHECK(ghz_state_amplitudes(s, re.data(), im.data(), 8) == GHZ_OK);
    double norm = 0.0;
    for (int i = 0; i < 8; ++i) norm += re[i] * re[i] + im[i] * im[i];
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ghz_state_amplitudes(s, re.data(), im.data(), 4) == GHZ_ERR_DIMENSION_MISMATCH);

    ghz_density* rho = nullptr;
    REQUIRE(ghz_density_from_state(s, &rho) == GHZ_OK);
    double lo = 0.0;
    CHECK(ghz_density_min_eig(rho, &lo) == GHZ_OK);
    CHECK(std::abs(lo) < 1e-12);
    char* out = nullptr;
    REQUIRE(ghz_q_ghz_aligned(rho, nullptr, 0, &out) == GHZ_OK);
    const json q = take(out);
    CHECK(q.at("value").get<double>() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(q.at("detected").get<bool>());
    ghz_density_free(rho);
    ghz_state_free(s);

    const int label[3] = {1, 0, 2};
    CHECK(ghz_state_ghz(3, 2, label, 3, &s) == GHZ_ERR_OUT_OF_RANGE);
    CHECK(std::string(ghz_last_error()).size() > 0);
    const int short_label[2] = {0, 1};
    CHECK(ghz_state_ghz(3, 2, short_label, 2, &s) == GHZ_ERR_INVALID_ARGUMENT);
    CHECK(ghz_state_ghz(3, 2, nullptr, 0, nullptr) == GHZ_ERR_INVALID_ARGUMENT);
    ghz_state_free(nullptr);
    ghz_density_free(nullptr);
    ghz_scan_free(nullptr);
}

TEST_CASE("states from amplitudes") {
    const double re[4] = {1.0, 0.0, 0.0, 1.0};
    const double im[4] = {0.0, 0.0, 0.0, 0.0};
    ghz_state* s = nullptr;
    CHECK(ghz_state_from_amplitudes(2, 2, re, im, 4, &s) == GHZ_ERR_INVALID_ARGUMENT);
    const double r = 1.0 / std::sqrt(2.0);
    const double re2[4] = {r, 0.0, 0.0, r};
    REQUIRE(ghz_state_from_amplitudes(2, 2, re2, im, 4, &s) == GHZ_OK);
    ghz_state_free(s);
    CHECK(ghz_state_from_amplitudes(2, 2, re2, im, 3, &s) == GHZ_ERR_DIMENSION_MISMATCH);
}

TEST_CASE("last error clears on success") {
    ghz_state* s = nullptr;
    CHECK(ghz_state_ghz(1, 2, nullptr, 0, &s) != GHZ_OK);
    CHECK(std::string(ghz_last_error()) != "");
    CHECK(ghz_state_ghz(3, 2, nullptr, 0, &s) == GHZ_OK);
    CHECK(std::string(ghz_last_error()) == "");
    ghz_state_free(s);
}

TEST_CASE("family densities and criteria report") {
    ghz_density* rho = nullptr;
    REQUIRE(ghz_density_family(R"({"family":"noise","n":3,"d":2,"alpha":0.5})", &rho) == GHZ_OK);
    size_t dim = 0;
    CHECK(ghz_density_dim(rho, &dim) == GHZ_OK);
    CHECK(dim == 8);
    double pt = 0.0;
    CHECK(ghz_density_min_pt_eig(rho, &pt) == GHZ_OK);
    CHECK(pt == doctest::Approx((1.0 - 2.5) / 8.0).epsilon(1e-12));
    char* out = nullptr;
    REQUIRE(ghz_density_validity_json(rho, &out) == GHZ_OK);
    const json v = take(out);
    CHECK(v.at("is_state").get<bool>());
    CHECK(v.at("min_pt_eig_per_party").size() == 3);
    REQUIRE(ghz_q_dicke(rho, 1, &out) == GHZ_OK);
    CHECK(take(out).at("criterion") == "q_dicke");
    REQUIRE(ghz_optimize(rho, R"({"criterion":"q_ghz","restarts":2,"seed":4})", &out) == GHZ_OK);
    CHECK(take(out).at("value").get<double>() == doctest::Approx(0.125).epsilon(1e-6));
    CHECK(ghz_optimize(rho, R"({"criterion":"nope"})", &out) == GHZ_ERR_INVALID_ARGUMENT);
    CHECK(ghz_optimize(rho, "{not json", &out) == GHZ_ERR_INVALID_ARGUMENT);
    ghz_density_free(rho);

    REQUIRE(ghz_criteria_report_json(R"({"family":"noise","n":3,"d":2,"alpha":0.5})", nullptr, &out) == GHZ_OK);
    const json r = take(out);
    CHECK(r.at("q0_closed_form").get<double>() == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(r.at("q_ghz_aligned").at("value").get<double>() == doctest::Approx(0.125).epsilon(1e-10));
    CHECK(r.at("q_ghz_aligned").at("detected").get<bool>());
    REQUIRE(ghz_criteria_report_json(R"({"family":"pair","d":3,"label":[1,0,1],"alpha":0.5,"beta":0.3})",
                                     R"({"optimize":"q_ghz","restarts":4})", &out) == GHZ_OK);
    const json p = take(out);
    CHECK(p.at("pair_type") == "III");
    CHECK(std::abs(p.at("q0_closed_form").get<double>() - p.at("q_ghz_optimized").at("value").get<double>()) < 1e-6);
    CHECK(ghz_criteria_report_json(R"({"family":"blob"})", nullptr, &out) == GHZ_ERR_INVALID_ARGUMENT);
    CHECK(ghz_density_family(R"({"n":3})", &rho) == GHZ_ERR_INVALID_ARGUMENT);
}

TEST_CASE("closed forms through the C API") {
    double q = 0.0;
    CHECK(ghz_q0_noise(3, 2, 0.5, &q) == GHZ_OK);
    CHECK(q == doctest::Approx(0.125).epsilon(1e-14));
    char* out = nullptr;
    REQUIRE(ghz_noise_thresholds_json(3, 2, &out) == GHZ_OK);
    CHECK(take(out).at("gme_boundary").get<double>() == doctest::Approx(3.0 / 7.0).epsilon(1e-14));
    const int label[3] = {0, 1, 1};
    REQUIRE(ghz_pair_closed_forms_json(2, label, 3, 0.6, 0.2, &out) == GHZ_OK);
    const json j = take(out);
    CHECK(j.at("type") == "I");
    CHECK(j.at("q0").get<double>() == doctest::Approx(0.25).epsilon(1e-14));
    const int zero[3] = {0, 0, 0};
    CHECK(ghz_pair_closed_forms_json(2, zero, 3, 0.6, 0.2, &out) == GHZ_ERR_INVALID_ARGUMENT);
}

TEST_CASE("basis report and export") {
    char* out = nullptr;
    REQUIRE(ghz_basis_report_json(3, 3, &out) == GHZ_OK);
    const json j = take(out);
    CHECK(j.at("states").get<int>() == 27);
    CHECK(j.at("max_gram_offdiag").get<double>() < 1e-12);
    const std::string path = "capi_basis_export.json";
    REQUIRE(ghz_basis_export(3, 2, path.c_str()) == GHZ_OK);
    std::ifstream in(path);
    REQUIRE(in.good());
    const json e = json::parse(in);
    CHECK(e.dump().size() > 10);
    std::remove(path.c_str());
    CHECK(ghz_basis_export(3, 2, "/nonexistent-dir/x.json") == GHZ_ERR_IO);
}

TEST_CASE("interferometer through the C API") {
    char* out = nullptr;
    REQUIRE(ghz_interfere_json(3, "RRR", R"({"restarts":4})", &out) == GHZ_OK);
    const json j = take(out);
    CHECK(j.at("named_match") == "GHZ1-");
    CHECK(j.at("q_ghz").at("value").get<double>() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_FALSE(j.at("product").get<bool>());
    REQUIRE(ghz_interfere_json(2, "00", R"({"q_ghz":false})", &out) == GHZ_OK);
    CHECK(take(out).at("concurrence").get<double>() == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(ghz_interfere_json(3, "RR", nullptr, &out) != GHZ_OK);
    CHECK(ghz_interfere_json(3, "RRX", nullptr, &out) == GHZ_ERR_INVALID_ARGUMENT);
}

TEST_CASE("scan handles") {
    ghz_scan* scan = nullptr;
    REQUIRE(ghz_scan_run(R"({"family":"pair","d":2,"label":[0,1,1],"resolution":3})", &scan) == GHZ_OK);
    size_t n = 0;
    CHECK(ghz_scan_size(scan, &n) == GHZ_OK);
    CHECK(n == 9);
    ghz_scan_cell cell;
    REQUIRE(ghz_scan_cell_at(scan, 6, &cell) == GHZ_OK);
    CHECK(cell.alpha == 1.0);
    CHECK(cell.beta == 0.0);
    CHECK(cell.cls == GHZ_CELL_GME_DETECTED);
    CHECK(ghz_scan_cell_at(scan, 9, &cell) == GHZ_ERR_OUT_OF_RANGE);
    char* out = nullptr;
    REQUIRE(ghz_scan_csv(scan, &out) == GHZ_OK);
    const std::string csv = take_text(out);
    CHECK(csv.rfind("alpha,beta,min_eig,min_pt_eig,q0,class\n", 0) == 0);
    REQUIRE(ghz_scan_json(scan, &out) == GHZ_OK);
    CHECK(take(out).size() == 9);
    REQUIRE(ghz_scan_summary_json(scan, &out) == GHZ_OK);
    CHECK(take(out).at("cells").get<int>() == 9);
    ghz_scan_free(scan);

    CHECK(ghz_scan_run(R"({"family":"pair","resolution":1})", &scan) == GHZ_ERR_INVALID_ARGUMENT);
    CHECK(ghz_scan_run(R"({"family":"pair","bogus":1})", &scan) == GHZ_ERR_INVALID_ARGUMENT);
    REQUIRE(ghz_scan_config_normalize(R"({"family":"noise","resolution":5})", &out) == GHZ_OK);
    const json c = take(out);
    CHECK(c.at("resolution_alpha") == 5);
    CHECK(c.at("seed") == 0);
    REQUIRE(ghz_compare_geometries_json(
                R"([{"family":"square","resolution":21},{"family":"square","d":3,"resolution":21}])", &out) == GHZ_OK);
    const json g = take(out);
    REQUIRE(g.size() == 2);
    CHECK(g[1].at("gme_fraction").get<double>() > g[0].at("gme_fraction").get<double>());
    CHECK(ghz_compare_geometries_json(
              R"([{"family":"square","resolution":21},{"family":"square","resolution":11}])", &out) != GHZ_OK);
}

TEST_CASE("threshold callback") {
    double target = 0.3;
    double root = 0.0;
    CHECK(ghz_find_threshold(root_fn, &target, 0.0, 1.0, 1e-12, &root) == GHZ_OK);
    CHECK(root == doctest::Approx(0.3).epsilon(1e-10));
    target = 2.0;
    CHECK(ghz_find_threshold(root_fn, &target, 0.0, 1.0, 1e-12, &root) == GHZ_ERR_NO_SIGN_CHANGE);
    CHECK(ghz_find_threshold(nullptr, &target, 0.0, 1.0, 1e-12, &root) == GHZ_ERR_INVALID_ARGUMENT);
}

TEST_CASE("verify through the C API") {
    const int ids[2] = {1, 9};
    char* out = nullptr;
    REQUIRE(ghz_verify_json(ids, 2, 0, 1, &out) == GHZ_OK);
    const json j = take(out);
    CHECK(j.at("passed").get<bool>());
    REQUIRE(j.at("checks").size() == 2);
    CHECK(j.at("checks")[0].at("id") == 1);
    CHECK(j.at("checks")[1].at("acceptable").get<bool>());
}
