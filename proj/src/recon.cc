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

#include "dsm/recon.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dsm/errors.h"

namespace dsm {

namespace {

ComplexMatrix fourier_sum(const ProbeBlockSet &blocks) {
    size_t d = blocks.dim();
    std::vector<Complex> roots(d);
    for (size_t j = 0; j < d; j++) {
        roots[j] = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(d));
    }
    ComplexMatrix m(d, d);
    for (size_t n = 0; n < d; n++) {
        for (size_t col = 0; col < d; col++) {
            Complex total = 0;
            for (size_t k = 0; k < d; k++) {
                total += roots[((n + d - col) * k) % d] * blocks.at(n, k).e10;
            }
            m(n, col) = total;
        }
    }
    return m;
}

RawEstimate finish(ComplexMatrix m, ProtocolKind kind, std::optional<double> theta, const ReconstructionPolicy &policy) {
    RawEstimate raw{std::move(m), kind, theta, false, false};
    if (policy.hermitize) {
        raw.entries = hermitize(raw.entries);
        raw.hermitized = true;
    }
    if (policy.normalize_trace) {
        Complex tr = raw.entries.trace();
        if (std::abs(tr) < 1e-15) {
            throw DegenerateInputError("reconstruction: raw estimate has zero trace");
        }
        if (raw.hermitized) {
            tr = tr.real();
        }
        raw.entries *= 1.0 / tr;
        raw.trace_normalized = true;
    }
    return raw;
}

}  // namespace

ProbeBlockSet::ProbeBlockSet(size_t d) : d_(d), blocks_(d * d) {
    if (d == 0) {
        throw std::invalid_argument("ProbeBlockSet: dimension must be positive");
    }
    for (size_t n = 0; n < d; n++) {
        for (size_t k = 0; k < d; k++) {
            at(n, k).n = n;
            at(n, k).k = k;
        }
    }
}

ProbeBlockSet ProbeBlockSet::exact(const DensityMatrix &rho, const Protocol &proto) {
    ProbeModel model(rho, proto);
    ProbeBlockSet set(rho.dim());
    for (size_t n = 0; n < set.dim(); n++) {
        for (size_t k = 0; k < set.dim(); k++) {
            set.at(n, k) = model.block(n, k);
        }
    }
    return set;
}

RawEstimate reconstruct_type1(const ProbeBlockSet &blocks, const ReconstructionPolicy &policy) {
    return finish(fourier_sum(blocks), ProtocolKind::TypeI, std::nullopt, policy);
}

RawEstimate reconstruct_type2(const ProbeBlockSet &blocks, double theta, const ReconstructionPolicy &policy) {
    if (!(theta > 0) || theta > std::numbers::pi / 2 + 1e-15) {
        throw std::invalid_argument("reconstruct_type2: theta must lie in (0, pi/2]");
    }
    auto m = fourier_sum(blocks);
    double t = std::tan(theta / 2);
    for (size_t n = 0; n < blocks.dim(); n++) {
        Complex diag = 0;
        for (size_t k = 0; k < blocks.dim(); k++) {
            diag += blocks.at(n, k).e11;
        }
        m(n, n) += t * diag;
    }
    return finish(std::move(m), ProtocolKind::TypeII, theta, policy);
}

RawEstimate reconstruct_weak(const ProbeBlockSet &blocks, std::optional<double> theta, const ReconstructionPolicy &policy) {
    return finish(fourier_sum(blocks), ProtocolKind::WeakLimit, theta, policy);
}

RawEstimate reconstruct(const ProbeBlockSet &blocks, const Protocol &proto, const ReconstructionPolicy &policy) {
    switch (proto.kind()) {
        case ProtocolKind::TypeI:
            return reconstruct_type1(blocks, policy);
        case ProtocolKind::TypeII:
            return reconstruct_type2(blocks, *proto.theta(), policy);
        case ProtocolKind::WeakLimit:
            return reconstruct_weak(blocks, proto.theta(), policy);
    }
    throw std::logic_error("reconstruct: unknown protocol");
}

DensityMatrix physicality_projection(const RawEstimate &raw) {
    if (!raw.hermitized) {
        throw std::invalid_argument("physicality_projection: estimate must be hermitized first");
    }
    auto eig = hermitian_eigen(raw.entries);
    double positive = 0;
    for (double w : eig.values) {
        positive += std::max(w, 0.0);
    }
    if (!(positive > 0)) {
        throw DegenerateInputError("physicality_projection: no positive eigenvalue");
    }
    auto m = hermitian_apply(eig, [positive](double w) { return std::max(w, 0.0) / positive; });
    return DensityMatrix::from_matrix(hermitize(m));
}

SummaryStats summarize(std::span<const double> fidelities, double f0) {
    if (fidelities.empty()) {
        throw std::invalid_argument("summarize: no fidelities");
    }
    double n = static_cast<double>(fidelities.size());
    double mean = 0;
    for (double f : fidelities) {
        mean += f;
    }
    mean /= n;
    double ss = 0;
    for (double f : fidelities) {
        ss += (f - mean) * (f - mean);
    }
    SummaryStats s;
    s.mean_fidelity = mean;
    s.std_fidelity = fidelities.size() > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
    s.bias = (f0 - mean) / f0;
    s.n_trials = fidelities.size();
    return s;
}

}  // namespace dsm
