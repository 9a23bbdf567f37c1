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

#include "dsm/oracle_check.h"

#include <algorithm>
#include <numbers>

#include "dsm/protocol.h"
#include "dsm/recon.h"
#include "dsm/rng.h"
#include "dsm/states.h"

namespace dsm {

std::vector<OracleCheckRow> oracle_check(const std::vector<size_t> &dims, size_t samples, uint64_t seed) {
    constexpr double pi = std::numbers::pi;
    const std::vector<Protocol> exact_protocols = {Protocol::type1(), Protocol::type2(0.1 * pi),
                                                   Protocol::type2(0.25 * pi), Protocol::type2(0.5 * pi)};
    const std::vector<double> weak_angles = {0.05 * pi, 0.1 * pi, 0.3 * pi};

    std::vector<OracleCheckRow> rows;
    for (size_t d : dims) {
        OracleCheckRow row;
        row.dim = d;
        row.samples = samples;
        SplitMix64 rng(SeedSpec{seed, d});
        for (size_t s = 0; s < samples; s++) {
            DensityMatrix rho = random_mixed_state(d, rng);
            for (const auto &proto : exact_protocols) {
                ProbeModel model(rho, proto);
                for (size_t n = 0; n < d; n++) {
                    auto reference = probe_blocks_oracle(rho, proto, n);
                    for (size_t k = 0; k < d; k++) {
                        row.closed_form_gap = std::max(row.closed_form_gap, model.block(n, k).max_abs_diff(reference[k]));
                    }
                }
                auto raw = reconstruct(ProbeBlockSet::exact(rho, proto), proto);
                row.round_trip_gap = std::max(row.round_trip_gap, raw.entries.max_abs_diff(rho.matrix()));
            }
            for (double theta : weak_angles) {
                auto proto = Protocol::weak(theta);
                auto raw = reconstruct(ProbeBlockSet::exact(rho, proto), proto);
                double eps = proto.epsilon();
                ComplexMatrix expected = rho.matrix();
                for (size_t i = 0; i < d; i++) {
                    expected(i, i) -= eps * rho(i, i);
                }
                expected *= 1 / (1 - eps);
                row.weak_bias_gap = std::max(row.weak_bias_gap, raw.entries.max_abs_diff(expected));
            }
        }
        rows.push_back(row);
    }
    return rows;
}

bool within_limits(const OracleCheckRow &row, const OracleCheckLimits &limits) {
    return row.closed_form_gap < limits.closed_form && row.round_trip_gap < limits.round_trip &&
           row.weak_bias_gap < limits.weak_bias;
}

}  // namespace dsm
