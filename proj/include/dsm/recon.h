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

#ifndef DSM_RECON_H
#define DSM_RECON_H

#include <optional>
#include <span>
#include <vector>

#include "dsm/complex_matrix.h"
#include "dsm/protocol.h"

namespace dsm {

/// Probe blocks for every (n, k), row-major in n.
class ProbeBlockSet {
   public:
    explicit ProbeBlockSet(size_t d);

    size_t dim() const {
        return d_;
    }
    ProbeBlock &at(size_t n, size_t k) {
        return blocks_[n * d_ + k];
    }
    const ProbeBlock &at(size_t n, size_t k) const {
        return blocks_[n * d_ + k];
    }

    /// Exact blocks from the closed form.
    static ProbeBlockSet exact(const DensityMatrix &rho, const Protocol &proto);

   private:
    size_t d_;
    std::vector<ProbeBlock> blocks_;
};

struct ReconstructionPolicy {
    /// Replace M by (M + M^dagger)/2.
    bool hermitize = true;
    /// Divide by the trace, after hermitizing.
    bool normalize_trace = true;
};

/// Linear-inversion output. Not necessarily positive semidefinite.
struct RawEstimate {
    ComplexMatrix entries;
    ProtocolKind kind = ProtocolKind::TypeI;
    std::optional<double> theta;
    bool hermitized = false;
    bool trace_normalized = false;

    size_t dim() const {
        return entries.rows();
    }
};

/// M_nm = sum_k e^{i2pi(n-m)k/d} e10(n,k). The unnormalized sum is rho_nm/2
/// for exact blocks.
RawEstimate reconstruct_type1(const ProbeBlockSet &blocks, const ReconstructionPolicy &policy = {});

/// M_nm = sum_k [ e^{i2pi(n-m)k/d} e10(n,k) + tan(theta/2) delta_nm e11(n,k) ].
///
/// The diagonal correction uses coefficient tan(theta/2) inside the sum over
/// k. With e11 independent of k this equals d tan(theta/2) e11; it is the
/// unique choice that cancels the -eps rho_nn term of e10, and the
/// unnormalized result is sin(theta)/2 rho for exact blocks.
RawEstimate reconstruct_type2(const ProbeBlockSet &blocks, double theta, const ReconstructionPolicy &policy = {});

/// Same sum without the e11 correction. On exact TypeII blocks the
/// normalized result is (rho - eps diag(rho)) / (1 - eps), a deliberate
/// systematic bias. `theta` is recorded for provenance only.
RawEstimate reconstruct_weak(const ProbeBlockSet &blocks, std::optional<double> theta = std::nullopt,
                             const ReconstructionPolicy &policy = {});

/// Dispatches on the protocol kind.
RawEstimate reconstruct(const ProbeBlockSet &blocks, const Protocol &proto, const ReconstructionPolicy &policy = {});

/// Clamps negative eigenvalues to zero and rescales to unit trace. Requires
/// a hermitized estimate.
DensityMatrix physicality_projection(const RawEstimate &raw);

struct SummaryStats {
    double mean_fidelity = 0;
    /// Sample standard deviation (n - 1 denominator); 0 for a single value.
    double std_fidelity = 0;
    /// (f0 - mean) / f0
    double bias = 0;
    size_t n_trials = 0;
};

SummaryStats summarize(std::span<const double> fidelities, double f0);

}  // namespace dsm

#endif
