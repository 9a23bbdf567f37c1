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

#include "dsm/protocol.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dsm/states.h"

namespace dsm {

namespace {

void check_theta(double theta) {
    if (!(theta > 0) || theta > std::numbers::pi / 2 + 1e-15) {
        throw std::invalid_argument("protocol: theta must lie in (0, pi/2], got " + std::to_string(theta));
    }
}

void check_index(const char *what, size_t idx, size_t d) {
    if (idx >= d) {
        throw std::invalid_argument(
            std::string(what) + " index " + std::to_string(idx) + " out of range for d=" + std::to_string(d));
    }
}

}  // namespace

Protocol Protocol::type1() {
    return Protocol(ProtocolKind::TypeI, std::nullopt);
}

Protocol Protocol::type2(double theta) {
    check_theta(theta);
    return Protocol(ProtocolKind::TypeII, theta);
}

Protocol Protocol::weak(double theta) {
    check_theta(theta);
    return Protocol(ProtocolKind::WeakLimit, theta);
}

double Protocol::epsilon() const {
    if (!theta_) {
        return 0;
    }
    double s = std::sin(*theta_ / 2);
    return 2 * s * s;
}

double Protocol::coupling() const {
    return theta_ ? std::sin(*theta_) : 1.0;
}

std::string Protocol::label() const {
    switch (kind_) {
        case ProtocolKind::TypeI:
            return "type1";
        case ProtocolKind::TypeII:
            return "type2";
        case ProtocolKind::WeakLimit:
            return "weak";
    }
    return "?";
}

const char *basis_name(ProbeBasis b) {
    switch (b) {
        case ProbeBasis::Z:
            return "Z";
        case ProbeBasis::X:
            return "X";
        case ProbeBasis::Y:
            return "Y";
    }
    return "?";
}

double ProbeBlock::max_abs_diff(const ProbeBlock &other) const {
    return std::max({std::abs(e00 - other.e00), std::abs(e01 - other.e01), std::abs(e10 - other.e10),
                     std::abs(e11 - other.e11)});
}

std::array<double, 2> basis_probabilities(const ProbeBlock &b, ProbeBasis basis) {
    double half = 0.5 * (b.e00.real() + b.e11.real());
    switch (basis) {
        case ProbeBasis::Z:
            return {b.e00.real(), b.e11.real()};
        case ProbeBasis::X: {
            // <+|rho|+> = (e00 + e11 + e01 + e10)/2
            double c = 0.5 * (b.e01 + b.e10).real();
            return {half + c, half - c};
        }
        case ProbeBasis::Y: {
            // <L|rho|L> = (e00 + e11 + i e01 - i e10)/2
            double c = 0.5 * (Complex(0, 1) * (b.e01 - b.e10)).real();
            return {half + c, half - c};
        }
    }
    return {0, 0};
}

double OutcomeDistribution::retained() const {
    double s = 0;
    for (const auto &row : probs) {
        s += row[0] + row[1];
    }
    return s;
}

BranchOperators branch_operators(const Protocol &proto, size_t d, size_t n) {
    check_index("branch_operators: n", n, d);
    BranchOperators ops{ComplexMatrix::identity(d), ComplexMatrix(d, d)};
    ops.a0(n, n) -= proto.epsilon();
    ops.a1(n, n) = proto.coupling();
    return ops;
}

ComplexMatrix vnm_unitary(double theta, size_t d, size_t n) {
    check_index("vnm_unitary: n", n, d);
    auto u = ComplexMatrix::identity(2 * d);
    double c = std::cos(theta);
    double s = std::sin(theta);
    // exp(-i theta sigma_y) = [[cos, -sin], [sin, cos]] on the |n> block.
    u(2 * n, 2 * n) = c;
    u(2 * n, 2 * n + 1) = -s;
    u(2 * n + 1, 2 * n) = s;
    u(2 * n + 1, 2 * n + 1) = c;
    return u;
}

ProbeModel::ProbeModel(const DensityMatrix &rho, Protocol proto)
    : d_(rho.dim()), proto_(proto), rho_(rho.matrix()), postselection_(d_), roots_(d_) {
    double dd = static_cast<double>(d_);
    for (size_t j = 0; j < d_; j++) {
        roots_[j] = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(j) / dd);
    }
    // <k|rho|k> = (1/d) sum_{a,b} e^{i 2pi (b-a) k / d} rho_ab
    for (size_t k = 0; k < d_; k++) {
        Complex total = 0;
        for (size_t a = 0; a < d_; a++) {
            for (size_t b = 0; b < d_; b++) {
                total += roots_[((b + d_ - a) * k) % d_] * rho_(a, b);
            }
        }
        postselection_[k] = total.real() / dd;
    }
}

Complex ProbeModel::coherence_sum(size_t n, size_t k) const {
    Complex total = 0;
    for (size_t m = 0; m < d_; m++) {
        total += roots_[((m + d_ - n) * k) % d_] * rho_(n, m);
    }
    return total;
}

ProbeBlock ProbeModel::block(size_t n, size_t k) const {
    check_index("probe block: n", n, d_);
    check_index("probe block: k", k, d_);
    double dd = static_cast<double>(d_);
    double eps = proto_.epsilon();
    double s = proto_.coupling();
    double rho_nn = rho_(n, n).real();
    Complex sum = coherence_sum(n, k);

    ProbeBlock b;
    b.n = n;
    b.k = k;
    b.e00 = 0.5 * (postselection_[k] - 2 * eps * sum.real() / dd + eps * eps * rho_nn / dd);
    b.e10 = s / (2 * dd) * (sum - eps * rho_nn);
    b.e01 = std::conj(b.e10);
    b.e11 = s * s * rho_nn / (2 * dd);
    return b;
}

OutcomeDistribution ProbeModel::distribution(size_t n, ProbeBasis basis) const {
    OutcomeDistribution dist;
    dist.n = n;
    dist.basis = basis;
    dist.probs.resize(d_);
    for (size_t k = 0; k < d_; k++) {
        dist.probs[k] = basis_probabilities(block(n, k), basis);
    }
    double discard = 1 - dist.retained();
    dist.discard = (discard < 0 && discard > -1e-12) ? 0.0 : discard;
    return dist;
}

ProbeBlock probe_block_closed_form(const DensityMatrix &rho, const Protocol &proto, size_t n, size_t k) {
    return ProbeModel(rho, proto).block(n, k);
}

std::vector<ProbeBlock> probe_blocks_oracle(const DensityMatrix &rho, const Protocol &proto, size_t n) {
    size_t d = rho.dim();
    auto ops = branch_operators(proto, d, n);

    ComplexMatrix p0(2, 2), p1(2, 2), plus(2, 2, {0.5, 0.5, 0.5, 0.5});
    p0(0, 0) = 1;
    p1(1, 1) = 1;
    auto u = ComplexMatrix::kron(ops.a0, p0) + ComplexMatrix::kron(ops.a1, p1);
    auto joint = ComplexMatrix::kron(rho.matrix(), plus);
    auto evolved = u * joint * u.adjoint();

    std::vector<ProbeBlock> blocks(d);
    for (size_t k = 0; k < d; k++) {
        auto kv = conjugate_basis_vector(d, k);
        Complex e[2][2] = {};
        for (size_t i = 0; i < 2; i++) {
            for (size_t j = 0; j < 2; j++) {
                for (size_t a = 0; a < d; a++) {
                    Complex row = 0;
                    for (size_t b = 0; b < d; b++) {
                        row += evolved(2 * a + i, 2 * b + j) * kv[b];
                    }
                    e[i][j] += std::conj(kv[a]) * row;
                }
            }
        }
        blocks[k] = ProbeBlock{n, k, e[0][0], e[0][1], e[1][0], e[1][1]};
    }
    return blocks;
}

ProbeBlock probe_block_oracle(const DensityMatrix &rho, const Protocol &proto, size_t n, size_t k) {
    check_index("probe_block_oracle: k", k, rho.dim());
    return probe_blocks_oracle(rho, proto, n)[k];
}

OutcomeDistribution outcome_distribution(const DensityMatrix &rho, const Protocol &proto, size_t n, ProbeBasis basis) {
    return ProbeModel(rho, proto).distribution(n, basis);
}

}  // namespace dsm
