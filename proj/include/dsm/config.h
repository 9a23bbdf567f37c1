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

#ifndef DSM_CONFIG_H
#define DSM_CONFIG_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dsm/complex_matrix.h"
#include "dsm/protocol.h"
#include "dsm/sampler.h"
#include "json.hpp"

namespace dsm {

/// Invalid configuration. The message names the offending field.
class ConfigError : public std::runtime_error {
   public:
    explicit ConfigError(const std::string &what) : std::runtime_error(what) {
    }
};

enum class ExperimentKind { Histogram, FidelityVsCopies, FidelityVsQubits, ConfidenceCoverage, NoiseSweep };

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view name);

/// Target pure state family. `n_qubits` holds several values only for the
/// qubit sweep.
struct StateSpec {
    std::string family = "ghz";  // ghz | w | dicke
    std::vector<size_t> n_qubits = {4};
    size_t excitations = 1;

    PureState build(size_t n_qubits) const;
};

/// Parses "ghz:4", "w:4", "dicke:4:2", or "ghz:2,3,4" for a sweep.
StateSpec parse_state_spec(std::string_view text);

/// Parses "type1", "type2:0.5pi", "weak:0.1pi", or a plain angle in radians
/// such as "type2:1.2".
Protocol parse_protocol(std::string_view text);
std::string format_protocol(const Protocol &proto);

struct ConfidenceSettings {
    double epsilon = 0.005;
    double sigma = 0.005;
    /// When set, used in place of the solved threshold.
    std::optional<double> f_bar;
};

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::Histogram;
    StateSpec state;
    double f0 = 0.9;
    std::vector<Protocol> protocols = {Protocol::type1()};
    /// 0 runs the infinite-statistics path (exact distributions).
    std::vector<uint64_t> n_copies = {400};
    size_t n_trials = 300;
    std::vector<double> eta = {0.0};
    uint64_t master_seed = 0;
    std::string output_dir = "results";
    double histogram_bin_width = 0.01;
    bool psd_projection = false;
    BudgetMode budget_mode = BudgetMode::PreparedCopies;
    bool noise_on_postselection = false;
    double label_spacing = 1;
    /// Largest qubit count accepted; raise to 8 to allow d = 256.
    size_t max_qubits = 6;
    ConfidenceSettings confidence;

    /// Throws ConfigError for invalid values or field combinations.
    void validate() const;
};

/// Reads a JSON object whose keys mirror ExperimentConfig. Scalars are
/// accepted where lists are allowed. Unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json &j);
nlohmann::json config_to_json(const ExperimentConfig &config);
ExperimentConfig load_config(const std::string &path);

}  // namespace dsm

#endif
