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

#include <string>
#include <vector>

#include "ghzsimplex/tensor.hpp"

namespace ghz {

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
    static BlochVector make(double x, double y, double z);
};

/// rho = (1 + n.sigma)/2.
ComplexMatrix bloch_density(const BlochVector& n);
BlochVector bloch_of(const ComplexMatrix& rho);

struct InterferometerReport {
    double predictability = 0.0;
    double visibility = 0.0;
    double purity = 0.0;       // Tr(rho^2)
    double bloch_norm_sq = 0.0; // |n|^2 = P^2 + V^2
};

/// exp(-i pi/4 sigma_y).
ComplexMatrix u_bs();
/// exp(-i phi/2 sigma_x).
ComplexMatrix u_phase(double phi);

/// Bloch vector after beam splitter, phase plate and beam splitter.
BlochVector final_bloch(const BlochVector& n0, double phi);
/// The same map evaluated by conjugating the 2x2 density matrix.
BlochVector final_bloch_conjugated(const BlochVector& n0, double phi);

InterferometerReport complementarity_report(const BlochVector& n0);

/// exp(i pi/4 sigma_{1,D}) on n qubits: rotation in span{|0...0>, |1...1>}.
ComplexMatrix u_ent(int n_qubits);

/// B^(x)n (P^(x)n)^dagger U_ent P^(x)n B^(x)n with B = u_bs()^dagger and
/// P = u_phase(-pi/2). `skip_final_bs` drops the last beam splitter on that
/// party (-1 keeps all of them).
ComplexMatrix u_ghz_full(int n_qubits, int skip_final_bs = -1);

/// Single-qubit input state for one of H V R L + - 0 1.
ComplexVector input_qubit(char c);
/// Product input from a string such as "RRL"; rejects unknown letters.
ComplexVector input_state(const std::string& spec);

/// Two-qubit concurrence of a 4x4 density matrix.
double concurrence(const ComplexMatrix& rho);
double concurrence(const ComplexVector& psi);

/// Purity of every single-party reduced state of a pure qubit state.
std::vector<double> reduced_purities(const SystemShape& shape, const ComplexVector& psi);

} // namespace ghz
