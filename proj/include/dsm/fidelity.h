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

#ifndef DSM_FIDELITY_H
#define DSM_FIDELITY_H

#include "dsm/complex_matrix.h"

namespace dsm {

struct OverlapFidelity {
    /// Re <psi|rho|psi>
    double value;
    /// Im <psi|rho|psi>; should vanish for Hermitian rho.
    double imag;
};

/// <psi|rho|psi> for any square rho, physical or not.
OverlapFidelity fidelity_pure(const ComplexMatrix &rho, const PureState &psi);

/// Uhlmann fidelity tr sqrt(sqrt(rho) sigma sqrt(rho)), unsquared.
/// Both inputs are revalidated as PSD with `tol`.
double fidelity_general(const DensityMatrix &rho, const DensityMatrix &sigma, const Tolerances &tol = {});

}  // namespace dsm

#endif
