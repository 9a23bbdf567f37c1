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

#include "dsm/noise.h"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace dsm {

namespace {

void validate(const NoiseModel &model) {
    if (!(model.eta >= 0)) {
        throw std::invalid_argument("NoiseModel: eta must be >= 0");
    }
    if (!(model.label_spacing > 0)) {
        throw std::invalid_argument("NoiseModel: label_spacing must be positive");
    }
}

double gaussian_weight(double distance, const NoiseModel &model) {
    if (std::isinf(model.eta)) {
        return 1;
    }
    double x = distance * model.label_spacing / model.eta;
    return std::exp(-0.5 * x * x);
}

}  // namespace

std::array<std::array<double, 2>, 2> probe_kernel(const NoiseModel &model) {
    validate(model);
    if (model.eta == 0) {
        return {{{1, 0}, {0, 1}}};
    }
    double off = gaussian_weight(1, model);
    double norm = 1 / (1 + off);
    return {{{norm, off * norm}, {off * norm, norm}}};
}

OutcomeDistribution apply_detector_noise(const OutcomeDistribution &dist, const NoiseModel &model) {
    auto kernel = probe_kernel(model);
    if (model.eta == 0) {
        return dist;
    }
    OutcomeDistribution out = dist;
    for (size_t k = 0; k < dist.dim(); k++) {
        const auto &p = dist.probs[k];
        out.probs[k] = {kernel[0][0] * p[0] + kernel[0][1] * p[1], kernel[1][0] * p[0] + kernel[1][1] * p[1]};
    }
    if (!model.include_postselection) {
        return out;
    }

    // Column-normalized over the reported label so total mass is preserved.
    size_t d = dist.dim();
    std::vector<double> weights(d);
    for (size_t i = 0; i < d; i++) {
        weights[i] = gaussian_weight(static_cast<double>(i), model);
    }
    auto probe_mixed = out.probs;
    for (auto &row : out.probs) {
        row = {0, 0};
    }
    for (size_t src = 0; src < d; src++) {
        double norm = 0;
        for (size_t dst = 0; dst < d; dst++) {
            norm += weights[dst > src ? dst - src : src - dst];
        }
        for (size_t dst = 0; dst < d; dst++) {
            double w = weights[dst > src ? dst - src : src - dst] / norm;
            out.probs[dst][0] += w * probe_mixed[src][0];
            out.probs[dst][1] += w * probe_mixed[src][1];
        }
    }
    return out;
}

}  // namespace dsm
