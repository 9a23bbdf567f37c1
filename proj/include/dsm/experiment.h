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

#ifndef DSM_EXPERIMENT_H
#define DSM_EXPERIMENT_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsm/complex_matrix.h"
#include "dsm/config.h"
#include "dsm/confidence.h"
#include "dsm/noise.h"
#include "dsm/protocol.h"
#include "dsm/recon.h"
#include "dsm/rng.h"
#include "dsm/sampler.h"

namespace dsm {

/// Stream for one trial. The mixing rule is
///     stream_index = combine64(combine64(mix64(trial_index), protocol_id), cell_index)
/// with the master seed carried through unchanged. Within a trial, the
/// counts for interaction index n and basis b come from
/// substream(3 n + b).
SeedSpec derive_trial_seed(uint64_t master_seed, uint64_t trial_index, uint64_t protocol_id, uint64_t cell_index);

/// Everything a trial needs that does not depend on the seed. The noisy
/// exact distributions are computed once and shared by all trials.
class TrialSetup {
   public:
    TrialSetup(const PureState &target, double f0, Protocol proto, uint64_t n_copies, const NoiseModel &noise,
               BudgetMode budget = BudgetMode::PreparedCopies, bool psd_projection = false);

    const PureState &target() const {
        return target_;
    }
    const DensityMatrix &initial_state() const {
        return rho0_;
    }
    const Protocol &protocol() const {
        return proto_;
    }
    uint64_t n_copies() const {
        return n_copies_;
    }
    /// Noisy distribution for index n and basis b. Bases the protocol does
    /// not read are left empty.
    const OutcomeDistribution &distribution(size_t n, ProbeBasis b) const {
        return dists_[n][static_cast<size_t>(b)];
    }
    BudgetMode budget() const {
        return budget_;
    }
    bool psd_projection() const {
        return psd_;
    }

   private:
    PureState target_;
    DensityMatrix rho0_;
    Protocol proto_;
    uint64_t n_copies_;
    BudgetMode budget_;
    bool psd_;
    std::vector<std::array<OutcomeDistribution, 3>> dists_;
};

struct TrialOutcome {
    /// NaN unless status is "ok".
    double fidelity = 0;
    /// "ok", "degenerate" or "error".
    std::string status = "ok";
    std::string message;
};

/// One pass of the pipeline: sample (or use the exact distributions when
/// n_copies is 0), estimate probe blocks, reconstruct, optionally project,
/// and score against the target. Never throws on degenerate data.
TrialOutcome run_trial(const TrialSetup &setup, const SeedSpec &seed);

struct TrialRecord {
    std::string experiment;
    std::string protocol;
    std::optional<double> theta;
    size_t n_qubits = 0;
    uint64_t n_copies = 0;
    double eta = 0;
    uint64_t trial = 0;
    double fidelity = 0;
    std::string status;
    uint64_t seed = 0;
};

struct CellSummary {
    std::string experiment;
    std::string protocol;
    std::optional<double> theta;
    size_t n_qubits = 0;
    uint64_t n_copies = 0;
    double eta = 0;
    double f0 = 0;
    SummaryStats stats;
    size_t failed = 0;
    std::optional<double> coverage_pct;
    std::optional<ConfidenceRegion> region;
    /// Threshold from solve_threshold, reported even when f_bar is pinned.
    std::optional<double> solved_f_bar;
    std::string region_note;
    std::vector<double> fidelities;
};

struct ExperimentResult {
    std::vector<TrialRecord> trials;
    std::vector<CellSummary> cells;
    size_t failed_count = 0;
    size_t workers = 1;
};

/// DSM_LAB_THREADS when set and positive, otherwise hardware concurrency.
size_t default_worker_count();

/// Runs the full grid in memory. Rows come back sorted by (n_qubits,
/// n_copies, eta, protocol order, trial).
ExperimentResult execute_experiment(const ExperimentConfig &config, size_t workers);

std::string trials_csv(const ExperimentResult &result);
std::string summary_csv(const ExperimentResult &result);
/// Raw fidelity counts per bin; bins are [j w, (j+1) w) for width w.
std::string histogram_csv(const ExperimentResult &result, double bin_width);
/// Confidence regions for the coverage experiment; header only otherwise.
std::string regions_csv(const ExperimentResult &result);

struct RunOptions {
    std::optional<size_t> workers;
    /// Overrides config.output_dir when set.
    std::optional<std::string> output_dir;
};

/// execute_experiment followed by writing trials.csv, summary.csv,
/// histogram.csv, regions.csv and manifest.json. Throws std::runtime_error
/// when the output directory cannot be written.
ExperimentResult run_experiment(const ExperimentConfig &config, const RunOptions &options = {});

}  // namespace dsm

#endif
