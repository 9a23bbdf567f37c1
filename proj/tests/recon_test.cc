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

#include <gtest/gtest.h>

#include <cmath>

#include "dsm/errors.h"
#include "dsm/fidelity.h"
#include "dsm/recon.h"
#include "dsm/states.h"
#include "test_support.h"

namespace dsm {
namespace {

using testing::kPi;

ComplexMatrix weak_expectation(const ComplexMatrix &rho, double eps) {
    ComplexMatrix out = rho;
    for (size_t i = 0; i < rho.rows(); i++) {
        out(i, i) -= eps * rho(i, i);
    }
    out *= 1 / (1 - eps);
    return out;
}

TEST(Reconstruct, ExactRoundTripProperty) {
    for (size_t d : {2, 3, 4, 8, 16}) {
        for (uint64_t seed = 0; seed < 10; seed++) {
            auto rho = testing::random_state(d, 70 + seed);
            for (auto proto : {Protocol::type1(), Protocol::type2(0.1 * kPi), Protocol::type2(0.25 * kPi),
                               Protocol::type2(0.5 * kPi)}) {
                auto raw = reconstruct(ProbeBlockSet::exact(rho, proto), proto);
                ASSERT_LT(raw.entries.max_abs_diff(rho.matrix()), 1e-10) << "d=" << d << " " << proto.label();
                EXPECT_TRUE(raw.hermitized);
                EXPECT_TRUE(raw.trace_normalized);
            }
        }
    }
}

TEST(Reconstruct, UnnormalizedScales) {
    auto rho = testing::random_state(4, 1);
    ReconstructionPolicy raw_policy{false, false};
    auto t1 = reconstruct_type1(ProbeBlockSet::exact(rho, Protocol::type1()), raw_policy);
    EXPECT_LT(t1.entries.max_abs_diff(0.5 * rho.matrix()), 1e-12);
    double theta = 0.3 * kPi;
    auto t2 = reconstruct_type2(ProbeBlockSet::exact(rho, Protocol::type2(theta)), theta, raw_policy);
    EXPECT_LT(t2.entries.max_abs_diff(std::sin(theta) / 2 * rho.matrix()), 1e-12);
}

TEST(Reconstruct, MaximallyMixedFixedPoint) {
    auto mixed = DensityMatrix::maximally_mixed(4);
    auto raw = reconstruct_type1(ProbeBlockSet::exact(mixed, Protocol::type1()));
    EXPECT_LT(raw.entries.max_abs_diff(mixed.matrix()), 1e-12);
}

TEST(Reconstruct, PlusStateSingleQubit) {
    auto plus = DensityMatrix::from_pure(PureState({1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}));
    auto raw = reconstruct_type1(ProbeBlockSet::exact(plus, Protocol::type1()));
    EXPECT_LT(raw.entries.max_abs_diff(ComplexMatrix(2, 2, {0.5, 0.5, 0.5, 0.5})), 1e-12);
}

TEST(Reconstruct, DiagonalStateHasNoCoherences) {
    auto diag = DensityMatrix::from_matrix(testing::diag({0.1, 0.2, 0.3, 0.4}));
    auto proto = Protocol::type2(0.5 * kPi);
    auto raw = reconstruct(ProbeBlockSet::exact(diag, proto), proto);
    for (size_t i = 0; i < 4; i++) {
        for (size_t j = 0; j < 4; j++) {
            if (i != j) {
                EXPECT_LT(std::abs(raw.entries(i, j)), 1e-10);
            }
        }
    }
}

TEST(Reconstruct, WeakBiasClosedForm) {
    for (size_t d : {2, 4, 8}) {
        for (uint64_t seed = 0; seed < 10; seed++) {
            auto rho = testing::random_state(d, 900 + seed);
            for (double theta : {0.05 * kPi, 0.1 * kPi, 0.3 * kPi}) {
                auto proto = Protocol::weak(theta);
                auto raw = reconstruct(ProbeBlockSet::exact(rho, proto), proto);
                EXPECT_LT(raw.entries.max_abs_diff(weak_expectation(rho.matrix(), proto.epsilon())), 1e-10);
            }
        }
    }
}

TEST(Reconstruct, WeakBiasOnGhz) {
    auto psi = ghz_state(4);
    auto rho = mix_white_noise(psi, 0.9).rho;
    double theta = 0.1 * kPi;
    auto proto = Protocol::weak(theta);
    auto raw = reconstruct(ProbeBlockSet::exact(rho, proto), proto);
    double eps = proto.epsilon();
    // <psi|diag(rho)|psi> = (rho_00 + rho_ff) / 2
    double diag_overlap = (rho(0, 0).real() + rho(15, 15).real()) / 2;
    double expected = (0.9 - eps * diag_overlap) / (1 - eps);
    double f = fidelity_pure(raw.entries, psi).value;
    EXPECT_NEAR(f, expected, 1e-12);
    EXPECT_NE(f, 0.9);

    auto exact = reconstruct(ProbeBlockSet::exact(rho, Protocol::type2(theta)), Protocol::type2(theta));
    EXPECT_NEAR(fidelity_pure(exact.entries, psi).value, 0.9, 1e-12);
}

TEST(Reconstruct, WeakUnnormalizedCoherence) {
    auto rho = mix_white_noise(ghz_state(4), 0.9).rho;
    double theta = 0.1 * kPi;
    auto raw = reconstruct_weak(ProbeBlockSet::exact(rho, Protocol::weak(theta)), theta, {false, false});
    EXPECT_LT(std::abs(raw.entries(0, 15) - std::sin(theta) / 2 * rho(0, 15)), 1e-14);
}

TEST(Reconstruct, WeakApproachesExactForSmallTheta) {
    auto rho = testing::random_state(4, 3);
    double prev = 1;
    for (double theta : {0.1, 0.01, 0.001}) {
        auto proto = Protocol::weak(theta);
        double gap = reconstruct(ProbeBlockSet::exact(rho, proto), proto).entries.max_abs_diff(rho.matrix());
        EXPECT_LT(gap, prev);
        prev = gap;
    }
    EXPECT_LT(prev, 1e-6);
}

TEST(Reconstruct, PolicyFlags) {
    auto rho = testing::random_state(3, 4);
    ProbeBlockSet blocks = ProbeBlockSet::exact(rho, Protocol::type1());
    blocks.at(0, 1).e10 += Complex(0.01, 0.02);
    auto raw = reconstruct_type1(blocks, {false, true});
    EXPECT_FALSE(raw.entries.is_hermitian(1e-6));
    EXPECT_NEAR(raw.entries.trace().real(), 1, 1e-10);
    auto herm = reconstruct_type1(blocks);
    EXPECT_TRUE(herm.entries.is_hermitian(1e-12));
    EXPECT_NEAR(herm.entries.trace().real(), 1, 1e-10);
}

TEST(Reconstruct, ZeroTraceIsDegenerate) {
    ProbeBlockSet zero(3);
    EXPECT_THROW(reconstruct_type1(zero), DegenerateInputError);
    EXPECT_NO_THROW(reconstruct_type1(zero, {true, false}));
}

TEST(PhysicalityProjection, Examples) {
    auto rho = testing::random_state(3, 8);
    RawEstimate physical{rho.matrix(), ProtocolKind::TypeI, std::nullopt, true, true};
    EXPECT_LT(physicality_projection(physical).matrix().max_abs_diff(rho.matrix()), 1e-12);

    RawEstimate bad{testing::diag({1.2, -0.2}), ProtocolKind::TypeI, std::nullopt, true, true};
    EXPECT_LT(physicality_projection(bad).matrix().max_abs_diff(testing::diag({1, 0})), 1e-12);

    RawEstimate unherm{testing::diag({1, 0}), ProtocolKind::TypeI, std::nullopt, false, true};
    EXPECT_THROW(physicality_projection(unherm), std::invalid_argument);
}

TEST(PhysicalityProjection, RandomInputsBecomePhysical) {
    SplitMix64 rng(SeedSpec{17, 0});
    for (int trial = 0; trial < 30; trial++) {
        ComplexMatrix m(4, 4);
        for (size_t i = 0; i < 4; i++) {
            for (size_t j = 0; j < 4; j++) {
                m(i, j) = Complex(rng.uniform() - 0.3, rng.uniform() - 0.5);
            }
        }
        m = hermitize(m);
        m *= 1 / m.trace().real();
        RawEstimate raw{m, ProtocolKind::TypeI, std::nullopt, true, true};
        auto rho = physicality_projection(raw);
        EXPECT_NEAR(rho.matrix().trace().real(), 1, 1e-12);
        EXPECT_GE(hermitian_eigen(rho.matrix()).values.front(), -1e-10);
    }
}

TEST(Summarize, Examples) {
    std::vector<double> constant(7, 0.9);
    auto s = summarize(constant, 0.9);
    EXPECT_NEAR(s.bias, 0, 1e-15);
    EXPECT_NEAR(s.std_fidelity, 0, 1e-15);
    EXPECT_EQ(s.n_trials, 7u);

    std::vector<double> pair = {0.8, 1.0};
    auto p = summarize(pair, 0.9);
    EXPECT_NEAR(p.mean_fidelity, 0.9, 1e-15);
    EXPECT_NEAR(p.bias, 0, 1e-12);
    EXPECT_NEAR(p.std_fidelity, std::sqrt(0.02), 1e-12);

    std::vector<double> one = {0.7};
    EXPECT_EQ(summarize(one, 0.9).std_fidelity, 0);
    EXPECT_THROW(summarize(std::vector<double>{}, 0.9), std::invalid_argument);
}

TEST(Summarize, BiasMatchesDefinition) {
    SplitMix64 rng(SeedSpec{4, 4});
    std::vector<double> f(50);
    for (auto &x : f) {
        x = 0.8 + 0.2 * rng.uniform();
    }
    auto s = summarize(f, 0.93);
    EXPECT_NEAR(s.bias, (0.93 - s.mean_fidelity) / 0.93, 1e-12);
}

}  // namespace
}  // namespace dsm
