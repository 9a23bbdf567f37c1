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

#ifndef DSM_RNG_H
#define DSM_RNG_H

#include <cstdint>

namespace dsm {

/// Identifies one reproducible random stream. Equal specs give equal
/// sequences; there is no global generator state.
struct SeedSpec {
    uint64_t master_seed = 0;
    uint64_t stream_index = 0;

    /// Child stream keyed by `key`; stateless.
    SeedSpec substream(uint64_t key) const;

    bool operator==(const SeedSpec &) const = default;
};

/// SplitMix64 output finalizer.
uint64_t mix64(uint64_t x);

/// mix64(mix64(h) + v), with wrapping addition. Not symmetric in h and v.
uint64_t combine64(uint64_t h, uint64_t v);

/// SplitMix64 generator. The initial state is
/// combine64(mix64(master_seed), stream_index); each call adds the golden
/// gamma 0x9E3779B97F4A7C15 and returns mix64 of the state.
class SplitMix64 {
   public:
    explicit SplitMix64(const SeedSpec &seed);

    uint64_t next();
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();

   private:
    uint64_t state_;
};

}  // namespace dsm

#endif
