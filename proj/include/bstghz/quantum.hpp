// Copyright 2026 The bstghz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Three-qubit GHZ state and Pauli observables. Qubit 1 is the most
// significant bit of the z-basis index, |0> is the +1 eigenstate of sigma_z,
// and |+-y> = (|0> +- i|1>)/sqrt(2).

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "bstghz/ghz.hpp"

namespace bst::quantum {

using Complex = std::complex<double>;
using StateVector = Eigen::Matrix<Complex, 8, 1>;
using Operator = Eigen::Matrix<Complex, 8, 8>;
using Operator2 = Eigen::Matrix<Complex, 2, 2>;

inline constexpr double kEigenTolerance = 1e-12;

enum class Pauli { X, Y, Z };

Operator2 pauli_matrix(Pauli p);

/// sigma^1 (x) sigma^2 (x) sigma^3.
struct ObservableSpec {
    std::array<Pauli, ghz::kStations> paulis{};

    static ObservableSpec from_context(ghz::Context c);
    std::string str() const;
    Operator matrix() const;
};

/// (|000> - |111>)/sqrt(2).
StateVector ghz_state();

/// lambda with op * psi = lambda * psi. Throws NotEigenstate when the
/// residual exceeds kEigenTolerance.
Complex eigenvalue(const Operator &op, const StateVector &psi);

struct OmegaEntry {
    ObservableSpec spec;
    double eigenvalue = 0;
};

struct OmegaCheck {
    /// Omega_1..Omega_4 = xyy, yxy, yyx, xxx.
    std::vector<OmegaEntry> omegas;
    /// Eigenvalue of Omega_1 Omega_2 Omega_3 Omega_4.
    double product = 0;
    bool pairwise_commute = false;
};

/// Throws NotEigenstate if any Omega_i or their product fails.
OmegaCheck omega_eigencheck(const StateVector &psi = ghz_state());

/// Station eigenvector of sigma_x or sigma_y for the given sign.
Eigen::Matrix<Complex, 2, 1> axis_eigenvector(ghz::Axis axis, ghz::Sign sign);

/// |<s1 s2 s3|psi>|^2 in the context's product eigenbasis.
double outcome_probability(ghz::Context c, const ghz::Signs &signs,
                           const StateVector &psi = ghz_state());

struct Disagreement {
    ghz::GhzVector vector;
    double probability = 0;
    bool parity_consistent = false;
};

struct DiscrepancyReport {
    double threshold = 0;
    std::vector<Disagreement> disagreements;
    /// Some nonzero probability falls at or below the threshold, so the
    /// verdicts depend on the threshold rather than on exact zeros.
    bool threshold_sensitive = false;

    std::size_t count(ghz::Context c) const;
};

/// Compares the parity rule with (probability > threshold) on all 64
/// (context, signs) pairs. Throws InvalidArgument unless 0 < threshold < 1.
DiscrepancyReport compare_with_stipulation(double threshold = 1e-9);

/// Qubit permutation: perm[k] is the new position of qubit k (0-based).
using Permutation = std::array<int, ghz::kStations>;

Operator permutation_operator(const Permutation &perm);
ObservableSpec permute(const ObservableSpec &spec, const Permutation &perm);

}  // namespace bst::quantum
