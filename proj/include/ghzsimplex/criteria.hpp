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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ghzsimplex/tensor.hpp"
#include "ghzsimplex/weyl.hpp"

namespace ghz {

inline constexpr double kDetectionTolerance = 1e-9;

/// One unit vector per party.
class ProductVector {
public:
    static ProductVector make(SystemShape shape, std::vector<ComplexVector> locals, double tol = 1e-12);
    static ProductVector computational(SystemShape shape, std::span<const int> digits);

    const SystemShape& shape() const noexcept { return shape_; }
    const std::vector<ComplexVector>& locals() const noexcept { return locals_; }
    ComplexVector full() const;

    /// Copy with the locals of `other` on the parties in `block`.
    ProductVector swapped(const ProductVector& other, std::span<const int> block) const;

private:
    ProductVector(SystemShape shape, std::vector<ComplexVector> locals)
        : shape_(shape), locals_(std::move(locals)) {}

    SystemShape shape_;
    std::vector<ComplexVector> locals_;
};

struct ChiPair {
    ProductVector chi1;
    ProductVector chi2;
};

/// chi1 = (x) U_p|0>, chi2 = (x) U_p|d-1> for per-party unitaries U_p.
ChiPair chi_from_frame(const SystemShape& shape, std::span<const ComplexMatrix> frame);

/// The pair aligned with the label's basis state.
ChiPair canonical_chi(const GhzLabel& label);

/// Blocks sorted by least element, parties 0-based.
using KPartition = std::vector<std::vector<int>>;

std::vector<KPartition> enumerate_k_partitions(int n, int k);

/// <v|rho|v> (real part).
double expectation(const ComplexMatrix& rho, const ComplexVector& v);

/// |<c1|rho|c1><c2|rho|c2>| where c1 carries chi2's locals on `block` and
/// chi1's elsewhere, c2 the converse.
double permuted_diagonal_term(const DensityOperator& rho, const ProductVector& chi1, const ProductVector& chi2,
                              std::span<const int> block);

struct CriterionResult {
    std::string criterion;
    double value = 0.0;
    bool detected = false;
    nlohmann::json witness = nlohmann::json::object();
};

nlohmann::json to_json(const CriterionResult& r);
CriterionResult criterion_result_from_json(const nlohmann::json& j);
nlohmann::json product_vector_json(const ProductVector& v);

CriterionResult i_k(const DensityOperator& rho, const ProductVector& chi1, const ProductVector& chi2, int k);

/// Rejects pairs whose locals are not orthogonal party by party.
CriterionResult q_ghz(const DensityOperator& rho, const ProductVector& chi1, const ProductVector& chi2);

/// Largest q_ghz over several chi pairs; witness "index" names the winner.
CriterionResult q_ghz_best(const DensityOperator& rho, std::span<const ChiPair> chis);

/// Dicke-type criterion for qubits with m excitations. `frame` rotates the
/// computational basis party by party (|a> -> U_p|a>).
CriterionResult q_dicke(const DensityOperator& rho, int m,
                        std::optional<std::span<const ComplexMatrix>> frame = std::nullopt);

/// Three-qubit, one-excitation form written with real parts of the coherences.
double q_dicke3_real_form(const DensityOperator& rho);

double ppt_min_eig(const DensityOperator& rho, int party);
/// Minimum over every single-party cut.
double ppt_min_eig_all(const DensityOperator& rho);

/// Angles of the U_C parameterisation; indices are 0-based here.
/// Diagonal and lower entries are phases in [0, 2pi], strict-upper entries
/// are rotation angles in [0, pi/2].
struct UnitaryParameters {
    int d = 2;
    Eigen::MatrixXd lambda;

    static UnitaryParameters make(int d, Eigen::MatrixXd lambda);
    static UnitaryParameters zero(int d);
};

ComplexMatrix uc_unitary(const UnitaryParameters& p);

enum class CriterionKind { QGhz, QDicke };

const char* criterion_name(CriterionKind k);

struct OptimizerOptions {
    int restarts = 8;
    std::uint64_t seed = 0;
    /// Evaluations per restart; 0 selects 500 per search coordinate.
    int max_evaluations = 0;
    int threads = 1;
    int dicke_m = 1;
    /// Optional per-party unitaries V_p; the search runs over V_p U_C(lambda_p).
    std::vector<ComplexMatrix> base_frame;
    /// Spend one restart on the best of the d^n GHZ-aligned frames.
    bool aligned_start = true;
};

/// Number of search coordinates for n parties of dimension d.
int optimizer_dimension(int n, int d);

/// Maximises the criterion over local bases. Deterministic in (seed, restarts,
/// budget). Restart 0 starts from the base frame itself; with aligned_start
/// the last restart starts from the best GHZ-aligned frame and the others
/// from uniform draws.
CriterionResult optimize_criterion(const DensityOperator& rho, CriterionKind kind, const OptimizerOptions& options);

} // namespace ghz
