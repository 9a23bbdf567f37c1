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

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dsm/config.h"
#include "dsm/experiment.h"
#include "dsm/oracle_check.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitOracle = 3;

template <typename T>
std::vector<T> parse_list(const std::string &text, const std::string &field) {
    std::vector<T> values;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::istringstream one(item);
        T v{};
        if (!(one >> v) || !one.eof()) {
            throw dsm::ConfigError(field + ": cannot parse '" + item + "'");
        }
        values.push_back(v);
    }
    if (values.empty()) {
        throw dsm::ConfigError(field + ": empty list");
    }
    return values;
}

struct RunFlags {
    std::string config_path;
    std::string experiment;
    std::string state;
    std::vector<std::string> protocols;
    std::string n_copies;
    std::optional<size_t> trials;
    std::string eta;
    std::optional<uint64_t> seed;
    std::string out;
    std::optional<size_t> workers;
    bool psd = false;
    std::string budget;
};

dsm::ExperimentConfig config_from_flags(const RunFlags &f) {
    nlohmann::json j;
    j["experiment"] = f.experiment;
    if (!f.state.empty()) {
        auto spec = dsm::parse_state_spec(f.state);
        j["state"] = {{"family", spec.family}, {"n_qubits", spec.n_qubits}, {"excitations", spec.excitations}};
    }
    if (!f.protocols.empty()) {
        j["protocols"] = f.protocols;
    }
    if (!f.n_copies.empty()) {
        j["n_copies"] = parse_list<uint64_t>(f.n_copies, "n_copies");
    }
    if (f.trials) {
        j["n_trials"] = *f.trials;
    }
    if (!f.eta.empty()) {
        j["eta"] = parse_list<double>(f.eta, "eta");
    }
    if (f.seed) {
        j["master_seed"] = *f.seed;
    }
    if (!f.out.empty()) {
        j["output_dir"] = f.out;
    }
    if (f.psd) {
        j["psd_projection"] = true;
    }
    if (!f.budget.empty()) {
        j["budget_mode"] = f.budget;
    }
    return dsm::config_from_json(j);
}

int do_run(const RunFlags &f) {
    dsm::ExperimentConfig config;
    try {
        if (!f.config_path.empty()) {
            config = dsm::load_config(f.config_path);
            if (!f.out.empty()) {
                config.output_dir = f.out;
            }
        } else if (!f.experiment.empty()) {
            config = config_from_flags(f);
        } else {
            std::cerr << "run: give --config or --experiment\n";
            return kExitConfig;
        }
    } catch (const std::exception &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        dsm::RunOptions options;
        options.workers = f.workers;
        auto result = dsm::run_experiment(config, options);
        std::cout << "wrote " << result.trials.size() << " trials (" << result.failed_count << " failed) to "
                  << config.output_dir << "\n";
        std::cout << dsm::summary_csv(result);
    } catch (const std::exception &e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

int do_validate(const std::string &path) {
    try {
        auto config = dsm::load_config(path);
        std::cout << dsm::config_to_json(config).dump(2) << "\n";
    } catch (const std::exception &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}

int do_oracle_check(const std::string &dims_text, size_t samples, uint64_t seed) {
    std::vector<size_t> dims;
    try {
        dims = parse_list<size_t>(dims_text, "dims");
        for (size_t d : dims) {
            if (d < 2) {
                throw dsm::ConfigError("dims: each dimension must be at least 2");
            }
        }
    } catch (const std::exception &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    bool ok = true;
    std::printf("%4s %8s %14s %14s %14s  %s\n", "d", "samples", "closed-form", "round-trip", "weak-bias", "status");
    try {
        for (const auto &row : dsm::oracle_check(dims, samples, seed)) {
            bool pass = dsm::within_limits(row);
            ok = ok && pass;
            std::printf("%4zu %8zu %14.3e %14.3e %14.3e  %s\n", row.dim, row.samples, row.closed_form_gap,
                        row.round_trip_gap, row.weak_bias_gap, pass ? "ok" : "FAIL");
        }
    } catch (const std::exception &e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return ok ? kExitOk : kExitOracle;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Direct state measurement simulator", "dsm-lab"};
    app.set_version_flag("--version", DSM_VERSION);
    app.require_subcommand(1);

    RunFlags run_flags;
    auto *run = app.add_subcommand("run", "Run an experiment grid and write CSV results");
    run->add_option("--config", run_flags.config_path, "JSON experiment config");
    run->add_option("--experiment", run_flags.experiment,
                    "histogram | fidelity_vs_copies | fidelity_vs_qubits | confidence_coverage | noise_sweep");
    run->add_option("--state", run_flags.state, "ghz:4, w:4, dicke:4:2 or ghz:2,3,4");
    run->add_option("--protocol", run_flags.protocols, "type1 | type2:<angle> | weak:<angle>; repeatable");
    run->add_option("--nc", run_flags.n_copies, "copies per setting, integer or comma list (0 = exact)");
    run->add_option("--trials", run_flags.trials, "trials per cell");
    run->add_option("--eta", run_flags.eta, "detector noise, real or comma list");
    run->add_option("--seed", run_flags.seed, "master seed");
    run->add_option("--out", run_flags.out, "output directory");
    run->add_option("--workers", run_flags.workers, "worker threads (default: DSM_LAB_THREADS or all cores)");
    run->add_flag("--psd", run_flags.psd, "project estimates onto density matrices before scoring");
    run->add_option("--budget", run_flags.budget, "prepared-copies | retained-copies");
    run->get_option("--config")->excludes("--experiment");

    std::string validate_path;
    auto *validate = app.add_subcommand("validate", "Check a config file and print it with defaults filled in");
    validate->add_option("--config", validate_path, "JSON experiment config")->required();

    std::string dims = "2,3,4";
    size_t samples = 100;
    uint64_t oracle_seed = 1;
    auto *oracle = app.add_subcommand("oracle-check", "Compare closed forms against the joint-operator reference");
    oracle->add_option("--dims", dims, "comma list of dimensions");
    oracle->add_option("--samples", samples, "random states per dimension");
    oracle->add_option("--seed", oracle_seed, "seed for the random states");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (run->parsed()) {
        return do_run(run_flags);
    }
    if (validate->parsed()) {
        return do_validate(validate_path);
    }
    return do_oracle_check(dims, samples, oracle_seed);
}
