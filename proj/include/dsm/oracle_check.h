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

#ifndef DSM_ORACLE_CHECK_H
#define DSM_ORACLE_CHECK_H

#include <cstdint>
#include <vector>

namespace dsm {

struct OracleCheckRow {
    size_t dim = 0;
    size_t samples = 0;
    /// Largest elementwise gap between the closed-form probe blocks and the
    /// joint-operator reference, over all states, protocols, n and k.
    double closed_form_gap = 0;
    /// Largest entry gap between rho and its exact-block reconstruction.
    double round_trip_gap = 0;
    /// Largest entry gap between the weak estimate and
    /// (rho - eps diag(rho)) / (1 - eps).
    double weak_bias_gap = 0;
};

struct OracleCheckLimits {
    double closed_form = 1e-12;
    double round_trip = 1e-10;
    double weak_bias = 1e-10;
};

/// Random Ginibre states per dimension. TypeI plus TypeII at 0.1, 0.25 and
/// 0.5 pi for the first two gaps; weak at 0.05, 0.1 and 0.3 pi for the third.
std::vector<OracleCheckRow> oracle_check(const std::vector<size_t> &dims, size_t samples, uint64_t seed);

bool within_limits(const OracleCheckRow &row, const OracleCheckLimits &limits = {});

}  // namespace dsm

#endif
