// Copyright 2026 The dsm-lab Authors
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

#include "dsm/states.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dsm {

namespace {

size_t dim_for_qubits(size_t n_qubits) {
    if (n_qubits == 0) {
        throw std::invalid_argument("number of qubits must be at least 1");
    }
    if (n_qubits > 30) {
        throw std::invalid_argument("number of qubits " + std::to_string(n_qubits) + " is too large");
    }
    return size_t{1} << n_qubits;
}

}  // namespace

PureState ghz_state(size_t n_qubits) {
    size_t d = dim_for_qubits(n_qubits);
    std::vector<Complex> amps(d);
    amps[0] = std::numbers::sqrt2 / 2;
    amps[d - 1] = std::numbers::sqrt2 / 2;
    return PureState(std::move(amps));
}

PureState dicke_state(size_t n_qubits, size_t excitations) {
    size_t d = dim_for_qubits(n_qubits);
    if (excitations > n_qubits) {
        throw std::invalid_argument(
            "dicke_state: excitations " + std::to_string(excitations) + " exceeds qubit count " +
            std::to_string(n_qubits));
    }
    std::vector<Complex> amps(d);
    size_t hits = 0;
    for (size_t m = 0; m < d; m++) {
        if (static_cast<size_t>(std::popcount(m)) == excitations) {
            amps[m] = 1;
            hits++;
        }
    }
    double scale = 1 / std::sqrt(static_cast<double>(hits));
    for (auto &a : amps) {
        a *= scale;
    }
    return PureState(std::move(amps));
}

PureState conjugate_basis_vector(size_t d, size_t k) {
    if (d == 0 || k >= d) {
        throw std::invalid_argument("conjugate_basis_vector: need 0 <= k < d");
    }
    std::vector<Complex> amps(d);
    double scale = 1 / std::sqrt(static_cast<double>(d));
    for (size_t m = 0; m < d; m++) {
        // Reduce m*k mod d first so the phase argument stays small.
        double phase = 2 * std::numbers::pi * static_cast<double>((m * k) % d) / static_cast<double>(d);
        amps[m] = std::polar(scale, phase);
    }
    return PureState(std::move(amps));
}

WhiteNoiseMix mix_white_noise(const PureState &psi, double target_fidelity) {
    double d = static_cast<double>(psi.dim());
    if (!(target_fidelity > 1 / d) || target_fidelity > 1) {
        throw std::invalid_argument(
            "mix_white_noise: target fidelity must lie in (1/d, 1], got " + std::to_string(target_fidelity));
    }
    // f = (1 - p) + p/d
    double p = (1 - target_fidelity) * d / (d - 1);
    if (psi.dim() == 1) {
        p = 0;
    }
    auto m = psi.projector();
    m *= 1 - p;
    for (size_t i = 0; i < psi.dim(); i++) {
        m(i, i) += p / d;
    }
    return {DensityMatrix::from_matrix(std::move(m)), p};
}

DensityMatrix random_mixed_state(size_t d, SplitMix64 &rng) {
    if (d == 0) {
        throw std::invalid_argument("random_mixed_state: d must be positive");
    }
    auto gaussian_pair = [&rng] {
        double r = std::sqrt(-2 * std::log(1 - rng.uniform()));
        double phi = 2 * std::numbers::pi * rng.uniform();
        return Complex(r * std::cos(phi), r * std::sin(phi));
    };
    ComplexMatrix g(d, d);
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            g(i, j) = gaussian_pair();
        }
    }
    ComplexMatrix m = g * g.adjoint();
    m *= 1 / m.trace().real();
    return DensityMatrix::from_matrix(hermitize(m));
}

}  // namespace dsm
