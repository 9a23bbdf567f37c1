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

#ifndef DSM_CONFIDENCE_H
#define DSM_CONFIDENCE_H

#include <cstdint>
#include <span>

namespace dsm {

/// Inputs of a fidelity confidence region under a Gaussian fidelity
/// distribution of mean f0 and width sigma.
struct ConfidenceSpec {
    double epsilon = 0.005;
    double sigma = 0.005;
    double f0 = 0.9;
    uint64_t n_copies = 10000;
    uint64_t dim = 16;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
    /// ln c with c = (N_c + 1)^(d - 1). c itself overflows a double for the
    /// sizes of interest, so only its logarithm is ever formed.
    double log_c() const;
};

struct ConfidenceRegion {
    double f_bar = 0;
    double lambda_sq = 0;
    double lower = 0;
    double upper = 0;

    bool contains(double f) const {
        return lower <= f && f <= upper;
    }
};

/// lambda^2 = (2 / N_c) (ln(2/eps) + 2 ln c). No range checks on epsilon.
double lambda_squared(const ConfidenceSpec &spec);

/// ln Phi(x) for the standard normal CDF, accurate far into either tail.
double log_normal_cdf(double x);

/// Largest f_bar <= f0 whose interval [f_bar, min(2 f0 - f_bar, 1)] holds
/// Gaussian mass >= 1 - eps/(2c). Bisection to 1e-9 starting from the
/// bracket [f0 - 20 sigma, f0]; the lower end is pushed further out if the
/// bracket is not wide enough. Throws InfeasibleError when the cap at 1
/// makes the mass unreachable.
double solve_threshold(const ConfidenceSpec &spec);

/// Region from the solved threshold.
ConfidenceRegion region(const ConfidenceSpec &spec);

/// Region around a given threshold, e.g. one taken from elsewhere.
ConfidenceRegion region_with_threshold(const ConfidenceSpec &spec, double f_bar);

/// Percentage of fidelities inside [lower, upper], bounds inclusive.
double coverage_ratio(std::span<const double> fidelities, const ConfidenceRegion &reg);

}  // namespace dsm

#endif
