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

#include "dsm/sampler.h"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "dsm/errors.h"

namespace dsm {

namespace {

constexpr double kNegativeSlack = 1e-12;

double checked(double p) {
    if (p < -kNegativeSlack) {
        throw std::invalid_argument("sampler: negative probability " + std::to_string(p));
    }
    return std::max(p, 0.0);
}

}  // namespace

CategoricalSampler::CategoricalSampler(const OutcomeDistribution &dist) {
    cumulative_.reserve(2 * dist.dim() + 1);
    double running = 0;
    for (const auto &row : dist.probs) {
        for (double p : row) {
            running += checked(p);
            cumulative_.push_back(running);
        }
    }
    retained_mass_ = running;
    running += checked(dist.discard);
    cumulative_.push_back(running);
    if (!(running > 0)) {
        throw DegenerateInputError("sampler: distribution has no mass");
    }
}

size_t CategoricalSampler::draw(SplitMix64 &rng) const {
    double u = rng.uniform() * cumulative_.back();
    return static_cast<size_t>(std::upper_bound(cumulative_.begin(), cumulative_.end(), u) - cumulative_.begin());
}

CountsTable sample_counts(const OutcomeDistribution &dist, uint64_t n_copies, const SeedSpec &seed, BudgetMode mode) {
    if (n_copies == 0) {
        throw std::invalid_argument("sample_counts: n_copies must be at least 1");
    }
    CategoricalSampler sampler(dist);
    SplitMix64 rng(seed);
    CountsTable table;
    table.n = dist.n;
    table.basis = dist.basis;
    table.counts.assign(dist.dim(), {0, 0});

    size_t discard_cell = sampler.discard_cell();
    auto record = [&](size_t cell) {
        if (cell == discard_cell) {
            table.discard_count++;
        } else {
            table.counts[cell / 2][cell % 2]++;
        }
    };

    if (mode == BudgetMode::PreparedCopies) {
        for (uint64_t i = 0; i < n_copies; i++) {
            record(sampler.draw(rng));
        }
        table.n_copies = n_copies;
    } else {
        if (!(sampler.retained_mass() > 1e-12)) {
            throw DegenerateInputError("sample_counts: no retained mass to fill the copy budget");
        }
        uint64_t kept = 0;
        while (kept < n_copies) {
            size_t cell = sampler.draw(rng);
            record(cell);
            kept += cell != discard_cell;
        }
        table.n_copies = n_copies + table.discard_count;
    }
    return table;
}

OutcomeDistribution estimate_probabilities(const CountsTable &counts) {
    OutcomeDistribution dist;
    dist.n = counts.n;
    dist.basis = counts.basis;
    dist.probs.resize(counts.dim());
    double scale = counts.n_copies ? 1.0 / static_cast<double>(counts.n_copies) : 0.0;
    for (size_t k = 0; k < counts.dim(); k++) {
        dist.probs[k] = {static_cast<double>(counts.counts[k][0]) * scale,
                         static_cast<double>(counts.counts[k][1]) * scale};
    }
    dist.discard = static_cast<double>(counts.discard_count) * scale;
    return dist;
}

ProbeBlock estimate_probe_block(const OutcomeDistribution &z, const OutcomeDistribution &x,
                                const OutcomeDistribution &y, size_t k) {
    if (z.dim() != x.dim() || x.dim() != y.dim() || z.n != x.n || x.n != y.n) {
        throw std::invalid_argument("estimate_probe_block: distributions disagree on n or dimension");
    }
    if (k >= x.dim()) {
        throw std::invalid_argument("estimate_probe_block: k out of range");
    }
    ProbeBlock b;
    b.n = x.n;
    b.k = k;
    b.e10 = 0.5 * Complex(x.probs[k][0] - x.probs[k][1], y.probs[k][0] - y.probs[k][1]);
    b.e01 = std::conj(b.e10);
    b.e00 = z.probs[k][0];
    b.e11 = z.probs[k][1];
    return b;
}

}  // namespace dsm
