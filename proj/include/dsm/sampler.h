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

#ifndef DSM_SAMPLER_H
#define DSM_SAMPLER_H

#include <array>
#include <cstdint>
#include <vector>

#include "dsm/protocol.h"
#include "dsm/rng.h"

namespace dsm {

/// How the copy budget N_c is spent.
enum class BudgetMode {
    /// N_c copies are prepared; discarded copies count against the budget.
    PreparedCopies,
    /// Copies are prepared until N_c of them survive; discards are extra.
    RetainedCopies,
};

/// Outcome counts for one (n, basis) configuration.
struct CountsTable {
    size_t n = 0;
    ProbeBasis basis = ProbeBasis::Z;
    std::vector<std::array<uint64_t, 2>> counts;
    uint64_t discard_count = 0;
    /// Prepared copies; always equals the sum of all counts plus discards.
    uint64_t n_copies = 0;

    size_t dim() const {
        return counts.size();
    }
};

/// Inverse-CDF sampler over the flattened cells (k, j) followed by the
/// discard cell. Entries in [-1e-12, 0) are clamped to zero; anything more
/// negative is rejected.
class CategoricalSampler {
   public:
    explicit CategoricalSampler(const OutcomeDistribution &dist);

    /// Cell index: 2*k + j for retained outcomes, 2*d for discard.
    size_t draw(SplitMix64 &rng) const;
    double retained_mass() const {
        return retained_mass_;
    }
    size_t discard_cell() const {
        return cumulative_.size() - 1;
    }

   private:
    std::vector<double> cumulative_;
    double retained_mass_ = 0;
};

CountsTable sample_counts(const OutcomeDistribution &dist, uint64_t n_copies, const SeedSpec &seed,
                          BudgetMode mode = BudgetMode::PreparedCopies);

/// Relative frequencies over prepared copies.
OutcomeDistribution estimate_probabilities(const CountsTable &counts);

/// Rebuilds the probe block at postselection index k from per-basis
/// estimates of the same n:
///   e10 = ((P+ - P-) + i (PL - PR)) / 2,  e11 = P1,  e00 = P0.
ProbeBlock estimate_probe_block(const OutcomeDistribution &z, const OutcomeDistribution &x,
                                const OutcomeDistribution &y, size_t k);

}  // namespace dsm

#endif
