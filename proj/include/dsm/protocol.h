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

#ifndef DSM_PROTOCOL_H
#define DSM_PROTOCOL_H

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dsm/complex_matrix.h"

namespace dsm {

enum class ProtocolKind { TypeI, TypeII, WeakLimit };

/// A controlled system-probe interaction together with the estimator that
/// goes with it.
///
/// TypeI applies I on probe |0> and |n><n| on probe |1>. TypeII applies
/// I - eps|n><n| and sin(theta)|n><n| with eps = 2 sin^2(theta/2); this is
/// the probe-|0> restriction of exp(-i theta |n><n| (x) sigma_y). WeakLimit
/// shares the TypeII interaction and differs only in reconstruction, which
/// drops the diagonal correction.
class Protocol {
   public:
    static Protocol type1();
    /// 0 < theta <= pi/2, radians.
    static Protocol type2(double theta);
    static Protocol weak(double theta);

    ProtocolKind kind() const {
        return kind_;
    }
    std::optional<double> theta() const {
        return theta_;
    }
    /// 2 sin^2(theta/2); 0 for TypeI.
    double epsilon() const;
    /// sin(theta); 1 for TypeI.
    double coupling() const;
    /// True when reconstruction needs the Z-basis (|0>,|1>) probe statistics.
    bool uses_z_basis() const {
        return kind_ == ProtocolKind::TypeII;
    }
    /// "type1", "type2" or "weak".
    std::string label() const;

    bool operator==(const Protocol &) const = default;

   private:
    Protocol(ProtocolKind kind, std::optional<double> theta) : kind_(kind), theta_(theta) {
    }
    ProtocolKind kind_;
    std::optional<double> theta_;
};

/// Probe measurement bases. Outcome 0 is |0>, |+>, |L>; outcome 1 is |1>,
/// |->, |R>, with |L> = (|0> + i|1>)/sqrt(2).
enum class ProbeBasis { Z = 0, X = 1, Y = 2 };

inline constexpr std::array<ProbeBasis, 3> kAllBases = {ProbeBasis::Z, ProbeBasis::X, ProbeBasis::Y};

const char *basis_name(ProbeBasis b);

/// Subnormalized probe state left after postselecting the system on |k>.
/// Its trace is the joint probability of that postselection.
struct ProbeBlock {
    size_t n = 0;
    size_t k = 0;
    Complex e00;
    Complex e01;
    Complex e10;
    Complex e11;

    double weight() const {
        return (e00 + e11).real();
    }
    double max_abs_diff(const ProbeBlock &other) const;
};

/// Probability of outcome 0 and 1 when measuring `block` in `basis`.
std::array<double, 2> basis_probabilities(const ProbeBlock &block, ProbeBasis basis);

/// Joint distribution over (postselection k, probe outcome j) for one
/// interaction index n and one probe basis. `discard` holds the weight that
/// the contraction removes, so everything sums to one.
struct OutcomeDistribution {
    size_t n = 0;
    ProbeBasis basis = ProbeBasis::Z;
    std::vector<std::array<double, 2>> probs;
    double discard = 0;

    size_t dim() const {
        return probs.size();
    }
    double retained() const;
    double total() const {
        return retained() + discard;
    }
};

struct BranchOperators {
    ComplexMatrix a0;
    ComplexMatrix a1;
};

BranchOperators branch_operators(const Protocol &proto, size_t d, size_t n);

/// exp(-i theta |n><n| (x) sigma_y) on system (x) probe, with joint index
/// 2*m + probe.
ComplexMatrix vnm_unitary(double theta, size_t d, size_t n);

/// Closed-form probe blocks for a fixed state and protocol. Precomputes the
/// postselection weights <k|rho|k> so each block costs O(d).
///
/// TypeII note: the off-diagonal element is
///     e10 = sin(theta)/(2d) [ sum_m e^{i2pi(m-n)k/d} rho_nm - eps rho_nn ]
/// The minus sign on eps rho_nn follows from the branch operators and is
/// confirmed by probe_block_oracle; a plus sign is sometimes quoted for this
/// term but does not match the joint-operator computation.
class ProbeModel {
   public:
    ProbeModel(const DensityMatrix &rho, Protocol proto);

    size_t dim() const {
        return d_;
    }
    const Protocol &protocol() const {
        return proto_;
    }
    ProbeBlock block(size_t n, size_t k) const;
    OutcomeDistribution distribution(size_t n, ProbeBasis basis) const;

   private:
    Complex coherence_sum(size_t n, size_t k) const;

    size_t d_;
    Protocol proto_;
    ComplexMatrix rho_;
    std::vector<double> postselection_;  // <k|rho|k>
    std::vector<Complex> roots_;         // e^{i 2 pi j / d}
};

ProbeBlock probe_block_closed_form(const DensityMatrix &rho, const Protocol &proto, size_t n, size_t k);

/// Reference computation: builds U on the joint space, forms
/// U (rho (x) |+><+|) U^dagger, then contracts with <k| . |k> on the system.
ProbeBlock probe_block_oracle(const DensityMatrix &rho, const Protocol &proto, size_t n, size_t k);

/// All k at once for one n; same result as calling probe_block_oracle d times.
std::vector<ProbeBlock> probe_blocks_oracle(const DensityMatrix &rho, const Protocol &proto, size_t n);

OutcomeDistribution outcome_distribution(const DensityMatrix &rho, const Protocol &proto, size_t n, ProbeBasis basis);

}  // namespace dsm

#endif
