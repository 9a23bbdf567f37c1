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

#ifndef DSM_STATES_H
#define DSM_STATES_H

#include <cstddef>

#include "dsm/complex_matrix.h"
#include "dsm/rng.h"

namespace dsm {

// Basis index m encodes the qubit values in binary with the first qubit as
// the most significant bit, so |1111> is index 15.

/// (|0...0> + |1...1>)/sqrt(2) on n_qubits qubits.
PureState ghz_state(size_t n_qubits);

/// Equal superposition of all basis states with exactly `excitations` ones.
/// dicke_state(n, 1) is the W state.
PureState dicke_state(size_t n_qubits, size_t excitations);

/// Amplitudes e^{i 2 pi m k / d} / sqrt(d). Postselection target of the
/// measurement scheme.
PureState conjugate_basis_vector(size_t d, size_t k);

struct WhiteNoiseMix {
    DensityMatrix rho;
    /// Weight of the maximally mixed component.
    double p;
};

/// (1-p)|psi><psi| + p I/d with p chosen so that <psi|rho|psi> = target_fidelity.
/// Requires 1/d < target_fidelity <= 1.
WhiteNoiseMix mix_white_noise(const PureState &psi, double target_fidelity);

/// G G^dagger / tr(G G^dagger) for a d x d matrix G of independent complex
/// Gaussians. Full rank with probability one.
DensityMatrix random_mixed_state(size_t d, SplitMix64 &rng);

}  // namespace dsm

#endif
