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

#include "dsm/experiment.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <thread>

#include "dsm/errors.h"
#include "dsm/fidelity.h"
#include "dsm/states.h"
#include "json.hpp"

namespace dsm {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string fmt_opt(const std::optional<double> &v) {
    return v ? fmt(*v) : std::string();
}

// Unused Z statistics are represented by an all-discard table so that
// estimate_probe_block sees consistent shapes.
OutcomeDistribution unused_distribution(size_t d, size_t n) {
    OutcomeDistribution dist;
    dist.n = n;
    dist.basis = ProbeBasis::Z;
    dist.probs.assign(d, {0.0, 0.0});
    dist.discard = 1.0;
    return dist;
}

std::string iso_utc(std::chrono::system_clock::time_point t) {
    std::time_t tt = std::chrono::system_clock::to_time_t(t);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    out.close();
    if (!out) {
        throw std::runtime_error("output_dir: cannot write '" + path.string() + "'");
    }
}

struct CellPlan {
    size_t n_qubits;
    uint64_t n_copies;
    double eta;
    size_t cell_index;
    size_t protocol_id;
    std::unique_ptr<TrialSetup> setup;
};

}  // namespace

SeedSpec derive_trial_seed(uint64_t master_seed, uint64_t trial_index, uint64_t protocol_id, uint64_t cell_index) {
    uint64_t h = combine64(combine64(mix64(trial_index), protocol_id), cell_index);
    return {master_seed, h};
}

TrialSetup::TrialSetup(const PureState &target, double f0, Protocol proto, uint64_t n_copies, const NoiseModel &noise,
                       BudgetMode budget, bool psd_projection)
    : target_(target),
      rho0_(mix_white_noise(target, f0).rho),
      proto_(proto),
      n_copies_(n_copies),
      budget_(budget),
      psd_(psd_projection) {
    ProbeModel model(rho0_, proto_);
    size_t d = target_.dim();
    dists_.reserve(d);
    for (size_t n = 0; n < d; n++) {
        std::array<OutcomeDistribution, 3> row;
        for (auto b : kAllBases) {
            auto &slot = row[static_cast<size_t>(b)];
            if (b == ProbeBasis::Z && !proto_.uses_z_basis()) {
                slot = unused_distribution(d, n);
            } else {
                slot = apply_detector_noise(model.distribution(n, b), noise);
            }
        }
        dists_.push_back(std::move(row));
    }
}

TrialOutcome run_trial(const TrialSetup &setup, const SeedSpec &seed) {
    TrialOutcome out;
    try {
        size_t d = setup.target().dim();
        ProbeBlockSet blocks(d);
        for (size_t n = 0; n < d; n++) {
            std::array<OutcomeDistribution, 3> est;
            for (auto b : kAllBases) {
                size_t bi = static_cast<size_t>(b);
                const auto &dist = setup.distribution(n, b);
                bool skip = b == ProbeBasis::Z && !setup.protocol().uses_z_basis();
                if (setup.n_copies() == 0 || skip) {
                    est[bi] = dist;
                } else {
                    est[bi] = estimate_probabilities(
                        sample_counts(dist, setup.n_copies(), seed.substream(3 * n + bi), setup.budget()));
                }
            }
            for (size_t k = 0; k < d; k++) {
                blocks.at(n, k) = estimate_probe_block(est[0], est[1], est[2], k);
            }
        }
        RawEstimate raw = reconstruct(blocks, setup.protocol());
        if (setup.psd_projection()) {
            out.fidelity = fidelity_pure(physicality_projection(raw).matrix(), setup.target()).value;
        } else {
            out.fidelity = fidelity_pure(raw.entries, setup.target()).value;
        }
        if (!std::isfinite(out.fidelity)) {
            throw DegenerateInputError("run_trial: non-finite fidelity");
        }
    } catch (const DegenerateInputError &e) {
        out.fidelity = std::numeric_limits<double>::quiet_NaN();
        out.status = "degenerate";
        out.message = e.what();
    } catch (const std::exception &e) {
        out.fidelity = std::numeric_limits<double>::quiet_NaN();
        out.status = "error";
        out.message = e.what();
    }
    return out;
}

size_t default_worker_count() {
    if (const char *env = std::getenv("DSM_LAB_THREADS")) {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<size_t>(v);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

ExperimentResult execute_experiment(const ExperimentConfig &config, size_t workers) {
    config.validate();
    const std::string exp_name = to_string(config.experiment);

    std::vector<CellPlan> plans;
    size_t cell_index = 0;
    for (size_t nq : config.state.n_qubits) {
        PureState target = config.state.build(nq);
        for (uint64_t nc : config.n_copies) {
            for (double eta : config.eta) {
                NoiseModel noise{eta, config.label_spacing, config.noise_on_postselection};
                for (size_t p = 0; p < config.protocols.size(); p++) {
                    plans.push_back({nq, nc, eta, cell_index, p,
                                     std::make_unique<TrialSetup>(target, config.f0, config.protocols[p], nc, noise,
                                                                  config.budget_mode, config.psd_projection)});
                }
                cell_index++;
            }
        }
    }

    const size_t n_trials = config.n_trials;
    const size_t total = plans.size() * n_trials;
    std::vector<TrialOutcome> outcomes(total);
    std::vector<SeedSpec> seeds(total);
    for (size_t i = 0; i < total; i++) {
        const auto &plan = plans[i / n_trials];
        seeds[i] = derive_trial_seed(config.master_seed, i % n_trials, plan.protocol_id, plan.cell_index);
    }

    workers = std::max<size_t>(1, std::min(workers, total));
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
            outcomes[i] = run_trial(*plans[i / n_trials].setup, seeds[i]);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (size_t w = 0; w < workers; w++) {
            pool.emplace_back(work);
        }
    }

    ExperimentResult result;
    result.workers = workers;
    result.trials.reserve(total);
    for (size_t c = 0; c < plans.size(); c++) {
        const auto &plan = plans[c];
        const Protocol &proto = plan.setup->protocol();
        CellSummary cell;
        cell.experiment = exp_name;
        cell.protocol = proto.label();
        cell.theta = proto.theta();
        cell.n_qubits = plan.n_qubits;
        cell.n_copies = plan.n_copies;
        cell.eta = plan.eta;
        cell.f0 = config.f0;
        for (size_t t = 0; t < n_trials; t++) {
            size_t i = c * n_trials + t;
            const auto &o = outcomes[i];
            result.trials.push_back({exp_name, cell.protocol, cell.theta, plan.n_qubits, plan.n_copies, plan.eta, t,
                                     o.fidelity, o.status, seeds[i].stream_index});
            if (o.status == "ok") {
                cell.fidelities.push_back(o.fidelity);
            } else {
                cell.failed++;
            }
        }
        result.failed_count += cell.failed;
        if (!cell.fidelities.empty()) {
            cell.stats = summarize(cell.fidelities, config.f0);
        }
        if (config.experiment == ExperimentKind::ConfidenceCoverage) {
            ConfidenceSpec spec{config.confidence.epsilon, config.confidence.sigma, config.f0, plan.n_copies,
                                plan.setup->target().dim()};
            try {
                cell.solved_f_bar = solve_threshold(spec);
            } catch (const InfeasibleError &e) {
                cell.region_note = e.what();
            }
            std::optional<double> f_bar = config.confidence.f_bar ? config.confidence.f_bar : cell.solved_f_bar;
            if (f_bar) {
                cell.region = region_with_threshold(spec, *f_bar);
                if (!cell.fidelities.empty()) {
                    cell.coverage_pct = coverage_ratio(cell.fidelities, *cell.region);
                }
            }
        }
        result.cells.push_back(std::move(cell));
    }
    return result;
}

std::string trials_csv(const ExperimentResult &result) {
    std::string out = "experiment,protocol,theta,n_qubits,n_copies,eta,trial,fidelity,status,seed\n";
    for (const auto &r : result.trials) {
        out += r.experiment + ',' + r.protocol + ',' + fmt_opt(r.theta) + ',' + std::to_string(r.n_qubits) + ',' +
               std::to_string(r.n_copies) + ',' + fmt(r.eta) + ',' + std::to_string(r.trial) + ',' +
               (r.status == "ok" ? fmt(r.fidelity) : std::string()) + ',' + r.status + ',' + std::to_string(r.seed) +
               '\n';
    }
    return out;
}

std::string summary_csv(const ExperimentResult &result) {
    std::string out =
        "experiment,protocol,theta,n_qubits,n_copies,eta,n_trials,f0,f_ave,delta_f_bias,std_f,coverage_pct\n";
    for (const auto &c : result.cells) {
        bool has = c.stats.n_trials > 0;
        out += c.experiment + ',' + c.protocol + ',' + fmt_opt(c.theta) + ',' + std::to_string(c.n_qubits) + ',' +
               std::to_string(c.n_copies) + ',' + fmt(c.eta) + ',' + std::to_string(c.stats.n_trials) + ',' +
               fmt(c.f0) + ',' + (has ? fmt(c.stats.mean_fidelity) : "") + ',' + (has ? fmt(c.stats.bias) : "") +
               ',' + (has ? fmt(c.stats.std_fidelity) : "") + ',' + fmt_opt(c.coverage_pct) + '\n';
    }
    return out;
}

std::string histogram_csv(const ExperimentResult &result, double bin_width) {
    std::string out = "experiment,protocol,theta,n_qubits,n_copies,eta,bin_lower,bin_upper,count\n";
    for (const auto &c : result.cells) {
        std::map<long long, size_t> bins;
        for (double f : c.fidelities) {
            bins[static_cast<long long>(std::floor(f / bin_width))]++;
        }
        std::string prefix = c.experiment + ',' + c.protocol + ',' + fmt_opt(c.theta) + ',' +
                             std::to_string(c.n_qubits) + ',' + std::to_string(c.n_copies) + ',' + fmt(c.eta) + ',';
        for (const auto &[j, count] : bins) {
            out += prefix + fmt(static_cast<double>(j) * bin_width) + ',' + fmt(static_cast<double>(j + 1) * bin_width) +
                   ',' + std::to_string(count) + '\n';
        }
    }
    return out;
}

std::string regions_csv(const ExperimentResult &result) {
    std::string out = "protocol,theta,n_qubits,n_copies,f_bar,solved_f_bar,lambda_sq,lower,upper\n";
    for (const auto &c : result.cells) {
        if (!c.region) {
            continue;
        }
        out += c.protocol + ',' + fmt_opt(c.theta) + ',' + std::to_string(c.n_qubits) + ',' +
               std::to_string(c.n_copies) + ',' + fmt(c.region->f_bar) + ',' + fmt_opt(c.solved_f_bar) + ',' +
               fmt(c.region->lambda_sq) + ',' + fmt(c.region->lower) + ',' + fmt(c.region->upper) + '\n';
    }
    return out;
}

ExperimentResult run_experiment(const ExperimentConfig &config, const RunOptions &options) {
    namespace fs = std::filesystem;
    fs::path dir = options.output_dir.value_or(config.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw std::runtime_error("output_dir: cannot create '" + dir.string() + "'");
    }

    auto started = std::chrono::system_clock::now();
    auto t0 = std::chrono::steady_clock::now();
    ExperimentResult result = execute_experiment(config, options.workers.value_or(default_worker_count()));
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    auto finished = std::chrono::system_clock::now();

    write_file(dir / "trials.csv", trials_csv(result));
    write_file(dir / "summary.csv", summary_csv(result));
    write_file(dir / "histogram.csv", histogram_csv(result, config.histogram_bin_width));
    write_file(dir / "regions.csv", regions_csv(result));

    nlohmann::json manifest;
    manifest["config"] = config_to_json(config);
    manifest["started_at"] = iso_utc(started);
    manifest["finished_at"] = iso_utc(finished);
    manifest["wall_clock_seconds"] = wall;
    manifest["trial_count"] = result.trials.size();
    manifest["failed_count"] = result.failed_count;
    manifest["workers"] = result.workers;
    manifest["version"] = DSM_VERSION;
    manifest["cells"] = nlohmann::json::array();
    for (const auto &c : result.cells) {
        nlohmann::json cj = {{"protocol", c.protocol},
                             {"theta", c.theta ? nlohmann::json(*c.theta) : nlohmann::json(nullptr)},
                             {"n_qubits", c.n_qubits},
                             {"n_copies", c.n_copies},
                             {"eta", c.eta},
                             {"ok", c.stats.n_trials},
                             {"failed", c.failed}};
        if (c.solved_f_bar) {
            cj["solved_f_bar"] = *c.solved_f_bar;
        }
        if (c.region) {
            cj["region"] = {{"f_bar", c.region->f_bar},
                            {"lambda_sq", c.region->lambda_sq},
                            {"lower", c.region->lower},
                            {"upper", c.region->upper}};
        }
        if (!c.region_note.empty()) {
            cj["region_note"] = c.region_note;
        }
        manifest["cells"].push_back(cj);
    }
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
    return result;
}

}  // namespace dsm
