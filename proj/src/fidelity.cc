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

#include "dsm/fidelity.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dsm {

OverlapFidelity fidelity_pure(const ComplexMatrix &rho, const PureState &psi) {
    if (!rho.is_square() || rho.rows() != psi.dim()) {
        throw std::invalid_argument("fidelity_pure: dimension mismatch");
    }
    Complex f = rho.sandwich(psi.amplitudes(), psi.amplitudes());
    return {f.real(), f.imag()};
}

double fidelity_general(const DensityMatrix &rho, const DensityMatrix &sigma, const Tolerances &tol) {
    if (rho.dim() != sigma.dim()) {
        throw std::invalid_argument("fidelity_general: dimension mismatch");
    }
    auto rho_eig = hermitian_eigen(rho.matrix());
    if (rho_eig.values.front() < -tol.eigenvalue_floor) {
        throw std::invalid_argument("fidelity_general: first argument is not PSD");
    }
    if (hermitian_eigen(sigma.matrix()).values.front() < -tol.eigenvalue_floor) {
        throw std::invalid_argument("fidelity_general: second argument is not PSD");
    }
    auto root = hermitian_apply(rho_eig, [](double w) { return std::sqrt(std::max(w, 0.0)); });
    auto inner = hermitize(root * sigma.matrix() * root);
    double total = 0;
    for (double w : hermitian_eigen(inner).values) {
        total += std::sqrt(std::max(w, 0.0));
    }
    return std::clamp(total, 0.0, 1.0);
}

}  // namespace dsm
