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

#include "dsm/config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "dsm/states.h"

namespace dsm {

namespace {

constexpr size_t kHardQubitLimit = 8;

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    size_t start = 0;
    while (true) {
        size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

template <typename T>
T parse_number(std::string_view text, const std::string &field) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError(field + ": cannot parse '" + std::string(text) + "'");
    }
    return value;
}

double parse_angle(std::string_view text) {
    bool in_pi = text.ends_with("pi");
    if (in_pi) {
        text.remove_suffix(2);
    }
    double scale = in_pi ? std::numbers::pi : 1.0;
    if (text.empty()) {
        return scale;
    }
    return parse_number<double>(text, "protocol angle") * scale;
}

template <typename T>
std::vector<T> scalar_or_list(const nlohmann::json &j, const std::string &field) {
    try {
        if (j.is_array()) {
            return j.get<std::vector<T>>();
        }
        return {j.get<T>()};
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(field + ": " + e.what());
    }
}

template <typename T>
T get_field(const nlohmann::json &j, const std::string &field) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(field + ": " + e.what());
    }
}

BudgetMode parse_budget_mode(const std::string &text) {
    if (text == "prepared-copies") {
        return BudgetMode::PreparedCopies;
    }
    if (text == "retained-copies") {
        return BudgetMode::RetainedCopies;
    }
    throw ConfigError("budget_mode: expected prepared-copies or retained-copies, got '" + text + "'");
}

Protocol protocol_from_json(const nlohmann::json &j) {
    if (j.is_string()) {
        return parse_protocol(j.get<std::string>());
    }
    if (!j.is_object() || !j.contains("kind")) {
        throw ConfigError("protocols: each entry must be a string or an object with 'kind'");
    }
    std::string kind = get_field<std::string>(j["kind"], "protocols.kind");
    if (kind == "type1") {
        return Protocol::type1();
    }
    if (!j.contains("theta")) {
        throw ConfigError("protocols.theta: required for " + kind);
    }
    double theta = j["theta"].is_string() ? parse_angle(j["theta"].get<std::string>())
                                          : get_field<double>(j["theta"], "protocols.theta");
    try {
        if (kind == "type2") {
            return Protocol::type2(theta);
        }
        if (kind == "weak") {
            return Protocol::weak(theta);
        }
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("protocols.theta: ") + e.what());
    }
    throw ConfigError("protocols.kind: unknown kind '" + kind + "'");
}

}  // namespace

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Histogram:
            return "histogram";
        case ExperimentKind::FidelityVsCopies:
            return "fidelity_vs_copies";
        case ExperimentKind::FidelityVsQubits:
            return "fidelity_vs_qubits";
        case ExperimentKind::ConfidenceCoverage:
            return "confidence_coverage";
        case ExperimentKind::NoiseSweep:
            return "noise_sweep";
    }
    return "?";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
    for (auto kind : {ExperimentKind::Histogram, ExperimentKind::FidelityVsCopies, ExperimentKind::FidelityVsQubits,
                      ExperimentKind::ConfidenceCoverage, ExperimentKind::NoiseSweep}) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    throw ConfigError("experiment: unknown experiment '" + std::string(name) + "'");
}

PureState StateSpec::build(size_t nq) const {
    if (family == "ghz") {
        return ghz_state(nq);
    }
    if (family == "w") {
        return dicke_state(nq, 1);
    }
    if (family == "dicke") {
        return dicke_state(nq, excitations);
    }
    throw ConfigError("state.family: unknown family '" + family + "'");
}

StateSpec parse_state_spec(std::string_view text) {
    auto parts = split(text, ':');
    if (parts.size() < 2 || parts.size() > 3) {
        throw ConfigError("state: expected family:n_qubits[:excitations], got '" + std::string(text) + "'");
    }
    StateSpec spec;
    spec.family = std::string(parts[0]);
    spec.n_qubits.clear();
    for (auto q : split(parts[1], ',')) {
        spec.n_qubits.push_back(parse_number<size_t>(q, "state.n_qubits"));
    }
    if (parts.size() == 3) {
        if (spec.family != "dicke") {
            throw ConfigError("state.excitations: only meaningful for the dicke family");
        }
        spec.excitations = parse_number<size_t>(parts[2], "state.excitations");
    }
    return spec;
}

Protocol parse_protocol(std::string_view text) {
    auto parts = split(text, ':');
    try {
        if (parts[0] == "type1" && parts.size() == 1) {
            return Protocol::type1();
        }
        if (parts.size() == 2 && parts[0] == "type2") {
            return Protocol::type2(parse_angle(parts[1]));
        }
        if (parts.size() == 2 && parts[0] == "weak") {
            return Protocol::weak(parse_angle(parts[1]));
        }
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("protocols: ") + e.what());
    }
    throw ConfigError("protocols: cannot parse '" + std::string(text) + "' (expected type1, type2:<angle>, weak:<angle>)");
}

std::string format_protocol(const Protocol &proto) {
    if (!proto.theta()) {
        return proto.label();
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s:%.9gpi", proto.label().c_str(), *proto.theta() / std::numbers::pi);
    return buf;
}

void ExperimentConfig::validate() const {
    auto require_single = [](size_t size, const char *field, const std::string &why) {
        if (size != 1) {
            throw ConfigError(std::string(field) + ": must hold exactly one value for " + why);
        }
    };
    if (protocols.empty()) {
        throw ConfigError("protocols: must be nonempty");
    }
    if (n_copies.empty()) {
        throw ConfigError("n_copies: must be nonempty");
    }
    if (eta.empty()) {
        throw ConfigError("eta: must be nonempty");
    }
    if (state.n_qubits.empty()) {
        throw ConfigError("state.n_qubits: must be nonempty");
    }
    if (n_trials < 1) {
        throw ConfigError("n_trials: must be at least 1");
    }
    if (max_qubits < 1 || max_qubits > kHardQubitLimit) {
        throw ConfigError("max_qubits: must lie in [1, " + std::to_string(kHardQubitLimit) + "]");
    }
    if (state.family != "ghz" && state.family != "w" && state.family != "dicke") {
        throw ConfigError("state.family: unknown family '" + state.family + "'");
    }
    for (size_t nq : state.n_qubits) {
        if (nq < 1 || nq > max_qubits) {
            throw ConfigError("state.n_qubits: " + std::to_string(nq) + " outside [1, max_qubits=" +
                              std::to_string(max_qubits) + "]");
        }
        if (state.family == "dicke" && state.excitations > nq) {
            throw ConfigError("state.excitations: exceeds n_qubits");
        }
        double d = std::ldexp(1.0, static_cast<int>(nq));
        if (!(f0 > 1 / d) || f0 > 1) {
            throw ConfigError("f0: must lie in (1/d, 1] for every swept dimension");
        }
    }
    for (double e : eta) {
        if (!(e >= 0)) {
            throw ConfigError("eta: values must be >= 0");
        }
    }
    if (!(histogram_bin_width > 0)) {
        throw ConfigError("histogram_bin_width: must be positive");
    }
    if (!(label_spacing > 0)) {
        throw ConfigError("label_spacing: must be positive");
    }
    if (std::set<uint64_t>(n_copies.begin(), n_copies.end()).size() != n_copies.size()) {
        throw ConfigError("n_copies: duplicate values");
    }

    std::string why = "experiment " + to_string(experiment);
    switch (experiment) {
        case ExperimentKind::Histogram:
            require_single(n_copies.size(), "n_copies", why);
            require_single(eta.size(), "eta", why);
            require_single(state.n_qubits.size(), "state.n_qubits", why);
            break;
        case ExperimentKind::FidelityVsCopies:
            require_single(eta.size(), "eta", why);
            require_single(state.n_qubits.size(), "state.n_qubits", why);
            break;
        case ExperimentKind::FidelityVsQubits:
            require_single(n_copies.size(), "n_copies", why);
            require_single(eta.size(), "eta", why);
            break;
        case ExperimentKind::ConfidenceCoverage:
            require_single(eta.size(), "eta", why);
            require_single(state.n_qubits.size(), "state.n_qubits", why);
            for (auto nc : n_copies) {
                if (nc == 0) {
                    throw ConfigError("n_copies: the exact path (0) has no confidence region");
                }
            }
            if (!(confidence.epsilon > 0 && confidence.epsilon < 1)) {
                throw ConfigError("confidence.epsilon: must lie in (0, 1)");
            }
            if (!(confidence.sigma > 0)) {
                throw ConfigError("confidence.sigma: must be positive");
            }
            break;
        case ExperimentKind::NoiseSweep:
            require_single(n_copies.size(), "n_copies", why);
            require_single(state.n_qubits.size(), "state.n_qubits", why);
            break;
    }
}

ExperimentConfig config_from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw ConfigError("config: top level must be a JSON object");
    }
    static const std::set<std::string> known = {
        "experiment",   "state",      "f0",          "protocols",   "n_copies",
        "n_trials",     "eta",        "master_seed", "output_dir",  "histogram_bin_width",
        "psd_projection", "budget_mode", "noise_on_postselection", "label_spacing", "max_qubits",
        "confidence"};
    for (const auto &[key, _] : j.items()) {
        if (!known.contains(key)) {
            throw ConfigError(key + ": unknown field");
        }
    }
    ExperimentConfig c;
    if (!j.contains("experiment")) {
        throw ConfigError("experiment: required field missing");
    }
    c.experiment = parse_experiment_kind(get_field<std::string>(j["experiment"], "experiment"));
    if (j.contains("state")) {
        const auto &s = j["state"];
        if (s.is_string()) {
            c.state = parse_state_spec(s.get<std::string>());
        } else {
            if (s.contains("family")) {
                c.state.family = get_field<std::string>(s["family"], "state.family");
            }
            if (s.contains("n_qubits")) {
                c.state.n_qubits = scalar_or_list<size_t>(s["n_qubits"], "state.n_qubits");
            }
            if (s.contains("excitations")) {
                c.state.excitations = get_field<size_t>(s["excitations"], "state.excitations");
            }
        }
    }
    if (j.contains("f0")) {
        c.f0 = get_field<double>(j["f0"], "f0");
    }
    if (j.contains("protocols")) {
        const auto &p = j["protocols"];
        c.protocols.clear();
        if (p.is_array()) {
            for (const auto &entry : p) {
                c.protocols.push_back(protocol_from_json(entry));
            }
        } else {
            c.protocols.push_back(protocol_from_json(p));
        }
    }
    if (j.contains("n_copies")) {
        c.n_copies = scalar_or_list<uint64_t>(j["n_copies"], "n_copies");
    }
    if (j.contains("n_trials")) {
        c.n_trials = get_field<size_t>(j["n_trials"], "n_trials");
    }
    if (j.contains("eta")) {
        c.eta = scalar_or_list<double>(j["eta"], "eta");
    }
    if (j.contains("master_seed")) {
        c.master_seed = get_field<uint64_t>(j["master_seed"], "master_seed");
    }
    if (j.contains("output_dir")) {
        c.output_dir = get_field<std::string>(j["output_dir"], "output_dir");
    }
    if (j.contains("histogram_bin_width")) {
        c.histogram_bin_width = get_field<double>(j["histogram_bin_width"], "histogram_bin_width");
    }
    if (j.contains("psd_projection")) {
        c.psd_projection = get_field<bool>(j["psd_projection"], "psd_projection");
    }
    if (j.contains("budget_mode")) {
        c.budget_mode = parse_budget_mode(get_field<std::string>(j["budget_mode"], "budget_mode"));
    }
    if (j.contains("noise_on_postselection")) {
        c.noise_on_postselection = get_field<bool>(j["noise_on_postselection"], "noise_on_postselection");
    }
    if (j.contains("label_spacing")) {
        c.label_spacing = get_field<double>(j["label_spacing"], "label_spacing");
    }
    if (j.contains("max_qubits")) {
        c.max_qubits = get_field<size_t>(j["max_qubits"], "max_qubits");
    }
    if (j.contains("confidence")) {
        const auto &cj = j["confidence"];
        if (cj.contains("epsilon")) {
            c.confidence.epsilon = get_field<double>(cj["epsilon"], "confidence.epsilon");
        }
        if (cj.contains("sigma")) {
            c.confidence.sigma = get_field<double>(cj["sigma"], "confidence.sigma");
        }
        if (cj.contains("f_bar") && !cj["f_bar"].is_null()) {
            c.confidence.f_bar = get_field<double>(cj["f_bar"], "confidence.f_bar");
        }
    }
    c.validate();
    return c;
}

nlohmann::json config_to_json(const ExperimentConfig &c) {
    nlohmann::json j;
    j["experiment"] = to_string(c.experiment);
    j["state"] = {{"family", c.state.family}, {"n_qubits", c.state.n_qubits}, {"excitations", c.state.excitations}};
    j["f0"] = c.f0;
    std::vector<std::string> protos;
    for (const auto &p : c.protocols) {
        protos.push_back(format_protocol(p));
    }
    j["protocols"] = protos;
    j["n_copies"] = c.n_copies;
    j["n_trials"] = c.n_trials;
    j["eta"] = c.eta;
    j["master_seed"] = c.master_seed;
    j["output_dir"] = c.output_dir;
    j["histogram_bin_width"] = c.histogram_bin_width;
    j["psd_projection"] = c.psd_projection;
    j["budget_mode"] = c.budget_mode == BudgetMode::PreparedCopies ? "prepared-copies" : "retained-copies";
    j["noise_on_postselection"] = c.noise_on_postselection;
    j["label_spacing"] = c.label_spacing;
    j["max_qubits"] = c.max_qubits;
    j["confidence"] = {{"epsilon", c.confidence.epsilon}, {"sigma", c.confidence.sigma}};
    j["confidence"]["f_bar"] = c.confidence.f_bar ? nlohmann::json(*c.confidence.f_bar) : nlohmann::json(nullptr);
    return j;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError("config: invalid JSON in '" + path + "': " + e.what());
    }
    return config_from_json(j);
}

}  // namespace dsm
