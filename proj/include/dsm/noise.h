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

#ifndef DSM_NOISE_H
#define DSM_NOISE_H

#include <array>

#include "dsm/protocol.h"

namespace dsm {

/// Gaussian detector crosstalk. An outcome with label j' is reported as j
/// with weight proportional to exp(-(j - j')^2 spacing^2 / (2 eta^2)),
/// normalized over the reported label.
struct NoiseModel {
    double eta = 0;
    double label_spacing = 1;
    /// Also blur the postselection outcome k with the same kernel over the
    /// integer labels 0..d-1. Off by default; the probe readout alone is
    /// the standard model.
    bool include_postselection = false;
};

/// Row-normalized 2x2 probe kernel K[j][j'].
std::array<std::array<double, 2>, 2> probe_kernel(const NoiseModel &model);

/// Mixes probe outcomes within each postselection row; discard mass is left
/// alone. eta = 0 returns the input unchanged.
OutcomeDistribution apply_detector_noise(const OutcomeDistribution &dist, const NoiseModel &model);

}  // namespace dsm

#endif
