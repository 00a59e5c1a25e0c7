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

#include "bstghz/quantum.hpp"

#include <fmt/format.h>

#include <cmath>

#include "bstghz/error.hpp"

namespace bst::quantum {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Pauli to_pauli(ghz::Axis a) { return a == ghz::Axis::X ? Pauli::X : Pauli::Y; }

char to_char(Pauli p) {
    switch (p) {
        case Pauli::X:
            return 'x';
        case Pauli::Y:
            return 'y';
        case Pauli::Z:
            return 'z';
    }
    return '?';
}

template <int R1, int C1, int R2, int C2>
Eigen::Matrix<Complex, R1 * R2, C1 * C2> kron(const Eigen::Matrix<Complex, R1, C1> &a,
                                              const Eigen::Matrix<Complex, R2, C2> &b) {
    Eigen::Matrix<Complex, R1 * R2, C1 * C2> out;
    for (int i = 0; i < R1; ++i) {
        for (int j = 0; j < C1; ++j) {
            out.template block<R2, C2>(i * R2, j * C2) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace

Operator2 pauli_matrix(Pauli p) {
    const Complex i{0, 1};
    Operator2 m;
    switch (p) {
        case Pauli::X:
            m << 0, 1, 1, 0;
            break;
        case Pauli::Y:
            m << 0, -i, i, 0;
            break;
        case Pauli::Z:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

ObservableSpec ObservableSpec::from_context(ghz::Context c) {
    ObservableSpec s;
    for (std::size_t k = 0; k < s.paulis.size(); ++k) {
        s.paulis[k] = to_pauli(c.axes[k]);
    }
    return s;
}

std::string ObservableSpec::str() const {
    std::string out;
    for (auto p : paulis) {
        out += to_char(p);
    }
    return out;
}

Operator ObservableSpec::matrix() const {
    return kron(kron(pauli_matrix(paulis[0]), pauli_matrix(paulis[1])), pauli_matrix(paulis[2]));
}

StateVector ghz_state() {
    StateVector psi = StateVector::Zero();
    psi(0) = kInvSqrt2;
    psi(7) = -kInvSqrt2;
    return psi;
}

Complex eigenvalue(const Operator &op, const StateVector &psi) {
    StateVector image = op * psi;
    Complex lambda = psi.dot(image) / psi.squaredNorm();
    double residual = (image - lambda * psi).norm();
    if (residual > kEigenTolerance) {
        throw Error(ErrorCode::NotEigenstate,
                    fmt::format("state is not an eigenvector (residual {:.3g})", residual));
    }
    return lambda;
}

OmegaCheck omega_eigencheck(const StateVector &psi) {
    OmegaCheck r;
    Operator product = Operator::Identity();
    std::vector<Operator> ops;
    for (auto c : ghz::omega_contexts()) {
        auto spec = ObservableSpec::from_context(c);
        Operator m = spec.matrix();
        r.omegas.push_back(OmegaEntry{spec, eigenvalue(m, psi).real()});
        product = product * m;
        ops.push_back(m);
    }
    r.product = eigenvalue(product, psi).real();
    r.pairwise_commute = true;
    for (std::size_t a = 0; a < ops.size(); ++a) {
        for (std::size_t b = a + 1; b < ops.size(); ++b) {
            Operator comm = ops[a] * ops[b] - ops[b] * ops[a];
            r.pairwise_commute = r.pairwise_commute && comm.norm() <= kEigenTolerance;
        }
    }
    return r;
}

Eigen::Matrix<Complex, 2, 1> axis_eigenvector(ghz::Axis axis, ghz::Sign sign) {
    double s = ghz::value(sign);
    Eigen::Matrix<Complex, 2, 1> v;
    if (axis == ghz::Axis::X) {
        v << kInvSqrt2, s * kInvSqrt2;
    } else {
        v << kInvSqrt2, Complex{0, s * kInvSqrt2};
    }
    return v;
}

double outcome_probability(ghz::Context c, const ghz::Signs &signs, const StateVector &psi) {
    auto basis = kron(kron(axis_eigenvector(c.axes[0], signs[0]), axis_eigenvector(c.axes[1], signs[1])),
                      axis_eigenvector(c.axes[2], signs[2]));
    return std::norm(basis.dot(psi));
}

std::size_t DiscrepancyReport::count(ghz::Context c) const {
    std::size_t n = 0;
    for (const auto &d : disagreements) {
        n += d.vector.context == c ? 1 : 0;
    }
    return n;
}

DiscrepancyReport compare_with_stipulation(double threshold) {
    if (!(threshold > 0 && threshold < 1)) {
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("threshold {} is outside (0, 1)", threshold));
    }
    DiscrepancyReport r;
    r.threshold = threshold;
    const auto psi = ghz_state();
    for (auto c : ghz::all_contexts()) {
        for (unsigned s = 0; s < 8; ++s) {
            ghz::GhzVector v{c, ghz::signs_from_index(s)};
            double p = outcome_probability(c, v.signs, psi);
            if (p > kEigenTolerance && p <= threshold) {
                r.threshold_sensitive = true;
            }
            bool parity = ghz::parity_consistent(v);
            if (parity != (p > threshold)) {
                r.disagreements.push_back(Disagreement{v, p, parity});
            }
        }
    }
    return r;
}

Operator permutation_operator(const Permutation &perm) {
    Operator p = Operator::Zero();
    for (int idx = 0; idx < 8; ++idx) {
        int out = 0;
        for (int k = 0; k < ghz::kStations; ++k) {
            int bit = (idx >> (ghz::kStations - 1 - k)) & 1;
            out |= bit << (ghz::kStations - 1 - perm[static_cast<std::size_t>(k)]);
        }
        p(out, idx) = 1;
    }
    return p;
}

ObservableSpec permute(const ObservableSpec &spec, const Permutation &perm) {
    ObservableSpec out;
    for (std::size_t k = 0; k < spec.paulis.size(); ++k) {
        out.paulis[static_cast<std::size_t>(perm[k])] = spec.paulis[k];
    }
    return out;
}

}  // namespace bst::quantum
