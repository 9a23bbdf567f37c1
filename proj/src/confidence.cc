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

#include "dsm/confidence.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dsm/errors.h"

namespace dsm {

void ConfidenceSpec::validate() const {
    if (!(epsilon > 0 && epsilon < 1)) {
        throw std::invalid_argument("ConfidenceSpec.epsilon must lie in (0, 1)");
    }
    if (!(sigma > 0)) {
        throw std::invalid_argument("ConfidenceSpec.sigma must be positive");
    }
    if (!(f0 > 0 && f0 <= 1)) {
        throw std::invalid_argument("ConfidenceSpec.f0 must lie in (0, 1]");
    }
    if (n_copies == 0) {
        throw std::invalid_argument("ConfidenceSpec.n_copies must be positive");
    }
    if (dim == 0) {
        throw std::invalid_argument("ConfidenceSpec.dim must be positive");
    }
}

double ConfidenceSpec::log_c() const {
    return static_cast<double>(dim - 1) * std::log1p(static_cast<double>(n_copies));
}

double lambda_squared(const ConfidenceSpec &spec) {
    double n = static_cast<double>(spec.n_copies);
    return 2 / n * (std::log(2 / spec.epsilon) + 2 * spec.log_c());
}

double log_normal_cdf(double x) {
    if (x > 0) {
        return std::log1p(-0.5 * std::erfc(x / std::numbers::sqrt2));
    }
    if (x > -30) {
        return std::log(0.5 * std::erfc(-x / std::numbers::sqrt2));
    }
    // Mills ratio expansion; relative error below 1e-10 past |x| = 30.
    double x2 = x * x;
    double series = 1 - 1 / x2 + 3 / (x2 * x2) - 15 / (x2 * x2 * x2);
    return -0.5 * x2 - std::log(-x) - 0.5 * std::log(2 * std::numbers::pi) + std::log(series);
}

namespace {

double log_add(double a, double b) {
    double hi = std::max(a, b);
    if (std::isinf(hi) && hi < 0) {
        return hi;
    }
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

/// ln of the Gaussian mass outside [f_bar, min(2 f0 - f_bar, 1)].
double log_excluded_mass(const ConfidenceSpec &spec, double f_bar) {
    double upper = std::min(2 * spec.f0 - f_bar, 1.0);
    double below = log_normal_cdf((f_bar - spec.f0) / spec.sigma);
    double above = log_normal_cdf(-(upper - spec.f0) / spec.sigma);
    return log_add(below, above);
}

}  // namespace

double solve_threshold(const ConfidenceSpec &spec) {
    spec.validate();
    double log_budget = std::log(spec.epsilon / 2) - spec.log_c();

    // As f_bar -> -inf only the capped upper tail remains.
    double log_floor = log_normal_cdf(-(1 - spec.f0) / spec.sigma);
    if (log_floor >= log_budget) {
        throw InfeasibleError("solve_threshold: required mass is unreachable with the interval capped at 1");
    }

    double hi = spec.f0;
    double lo = spec.f0 - 20 * spec.sigma;
    while (log_excluded_mass(spec, lo) > log_budget) {
        hi = lo;
        lo -= 20 * spec.sigma;
    }
    while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi);
        if (log_excluded_mass(spec, mid) <= log_budget) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

ConfidenceRegion region_with_threshold(const ConfidenceSpec &spec, double f_bar) {
    ConfidenceRegion r;
    r.f_bar = f_bar;
    r.lambda_sq = lambda_squared(spec);
    r.lower = f_bar - r.lambda_sq;
    r.upper = std::min(2 * spec.f0 - f_bar + r.lambda_sq, 1.0);
    return r;
}

ConfidenceRegion region(const ConfidenceSpec &spec) {
    return region_with_threshold(spec, solve_threshold(spec));
}

double coverage_ratio(std::span<const double> fidelities, const ConfidenceRegion &reg) {
    if (fidelities.empty()) {
        throw std::invalid_argument("coverage_ratio: no fidelities");
    }
    auto inside = std::count_if(fidelities.begin(), fidelities.end(), [&](double f) { return reg.contains(f); });
    return 100.0 * static_cast<double>(inside) / static_cast<double>(fidelities.size());
}

}  // namespace dsm
