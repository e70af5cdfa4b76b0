// Copyright 2026 The cqed-teleport Authors
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

#include "cqed/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <regex>
#include <set>
#include <sstream>
#include <typeinfo>

#include "json.hpp"

namespace cqed {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string &field, const std::string &why) {
    throw ConfigError(field + ": " + why);
}

std::string join(const std::string &parent, const std::string &key) {
    return parent.empty() ? key : parent + "." + key;
}

void require_keys(const json &obj, const std::string &where,
                  std::initializer_list<const char *> allowed) {
    if (!obj.is_object()) {
        fail(where, "expected an object");
    }
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto &item : obj.items()) {
        if (!ok.contains(item.key())) {
            fail(join(where, item.key()), "unknown key");
        }
    }
}

double as_number(const json &v, const std::string &field) {
    if (!v.is_number()) {
        fail(field, "expected a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        fail(field, "must be finite");
    }
    return x;
}

std::int64_t as_integer(const json &v, const std::string &field) {
    if (v.is_number_integer()) {
        return v.get<std::int64_t>();
    }
    if (v.is_number_float()) {
        const double x = v.get<double>();
        if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9e15) {
            return static_cast<std::int64_t>(x);
        }
    }
    fail(field, "expected an integer");
}

bool as_bool(const json &v, const std::string &field) {
    if (!v.is_boolean()) {
        fail(field, "expected true or false");
    }
    return v.get<bool>();
}

std::string as_string(const json &v, const std::string &field) {
    if (!v.is_string()) {
        fail(field, "expected a string");
    }
    return v.get<std::string>();
}

/// A two-element array, or one number applied to both qubits.
std::array<double, 2> as_pair(const json &v, const std::string &field) {
    if (v.is_number()) {
        const double x = as_number(v, field);
        return {x, x};
    }
    if (!v.is_array() || v.size() != 2) {
        fail(field, "expected a number or a two-element array");
    }
    return {as_number(v[0], field + "[0]"), as_number(v[1], field + "[1]")};
}

cplx as_complex(const json &v, const std::string &field) {
    if (v.is_number()) {
        return {as_number(v, field), 0.0};
    }
    if (!v.is_array() || v.size() != 2) {
        fail(field, "expected a number, [re, im] or \"random\"");
    }
    return {as_number(v[0], field + "[0]"), as_number(v[1], field + "[1]")};
}

DeviceParams parse_device(const json &j) {
    require_keys(j, "device",
                 {"omega_r", "omega_a", "g", "kappa", "Q", "gamma1", "gamma_phi", "T1", "T2",
                  "epsilon", "omega_d", "n_max", "coupled", "bias_shift"});
    DeviceParams d = default_device();
    if (j.contains("omega_r")) {
        d.omega_r = as_number(j["omega_r"], "device.omega_r");
    }
    if (j.contains("omega_a")) {
        d.omega_a = as_pair(j["omega_a"], "device.omega_a");
    }
    if (j.contains("g")) {
        d.g = as_pair(j["g"], "device.g");
    }
    if (j.contains("kappa") && j.contains("Q")) {
        fail("device.Q", "give either kappa or Q, not both");
    }
    if (j.contains("kappa")) {
        d.kappa = as_number(j["kappa"], "device.kappa");
    } else if (j.contains("Q")) {
        try {
            d.kappa = kappa_from_quality(d.omega_r, as_number(j["Q"], "device.Q")).kappa;
        } catch (const ArgumentError &e) {
            fail("device.Q", e.what());
        }
    }
    const bool rates = j.contains("gamma1") || j.contains("gamma_phi");
    const bool times = j.contains("T1") || j.contains("T2");
    if (rates && times) {
        fail("device.T1", "give either gamma1/gamma_phi or T1/T2, not both");
    }
    if (j.contains("gamma1")) {
        d.gamma1 = as_pair(j["gamma1"], "device.gamma1");
    }
    if (j.contains("gamma_phi")) {
        d.gamma_phi = as_pair(j["gamma_phi"], "device.gamma_phi");
    }
    if (times) {
        if (!j.contains("T1") || !j.contains("T2")) {
            fail(j.contains("T1") ? "device.T2" : "device.T1", "T1 and T2 must be given together");
        }
        const auto t1 = as_pair(j["T1"], "device.T1");
        const auto t2 = as_pair(j["T2"], "device.T2");
        for (std::size_t q = 0; q < 2; ++q) {
            try {
                const CoherenceRates r = rates_from_coherence_times(t1[q], t2[q]);
                d.gamma1[q] = r.gamma1;
                d.gamma_phi[q] = r.gamma_phi;
            } catch (const Error &e) {
                fail("device.T2[" + std::to_string(q) + "]", e.what());
            }
        }
    }
    if (j.contains("n_max")) {
        const std::int64_t n = as_integer(j["n_max"], "device.n_max");
        if (n < 1 || n > 64) {
            fail("device.n_max", "must be in [1, 64]");
        }
        d.n_max = static_cast<int>(n);
    }
    if (j.contains("coupled")) {
        const json &c = j["coupled"];
        if (!c.is_array() || c.size() != 2) {
            fail("device.coupled", "expected a two-element array");
        }
        d.coupled = {as_bool(c[0], "device.coupled[0]"), as_bool(c[1], "device.coupled[1]")};
    }
    if (j.contains("bias_shift")) {
        d.bias_shift = as_number(j["bias_shift"], "device.bias_shift");
    }
    if (j.contains("omega_d")) {
        d.omega_d = as_number(j["omega_d"], "device.omega_d");
    } else {
        try {
            d.omega_d = dressed_qubit_frequency(d, Qubit::first);
        } catch (const SingularityError &) {
            d.omega_d = d.omega_a[0];
        }
    }
    if (j.contains("epsilon")) {
        d.epsilon = as_number(j["epsilon"], "device.epsilon");
    } else {
        d.epsilon = 1.47 * std::abs(d.omega_r - d.omega_d);
    }
    return d;
}

ProtocolConfig parse_protocol(const json &j) {
    require_keys(j, "protocol", {"mode", "noise", "C0", "C1", "trials", "seed", "feed_forward"});
    ProtocolConfig p;
    if (j.contains("mode")) {
        const std::string m = as_string(j["mode"], "protocol.mode");
        if (m == "ideal") {
            p.mode = MeasurementMode::ideal;
        } else if (m == "physical") {
            p.mode = MeasurementMode::physical;
        } else {
            fail("protocol.mode", "expected \"ideal\" or \"physical\", got \"" + m + "\"");
        }
    }
    if (j.contains("noise")) {
        p.noise = as_bool(j["noise"], "protocol.noise");
    }
    if (j.contains("feed_forward")) {
        p.feed_forward = as_bool(j["feed_forward"], "protocol.feed_forward");
    }
    if (j.contains("C0")) {
        const json &c0 = j["C0"];
        if (c0.is_string()) {
            if (c0.get<std::string>() != "random") {
                fail("protocol.C0", "expected a number, [re, im] or \"random\"");
            }
            p.random_input = true;
            if (j.contains("C1") && !(j["C1"].is_string() && j["C1"] == "random")) {
                fail("protocol.C1", "must be omitted when C0 is \"random\"");
            }
        } else {
            p.c0 = as_complex(c0, "protocol.C0");
            if (!j.contains("C1")) {
                fail("protocol.C1", "required when C0 is given");
            }
            p.c1 = as_complex(j["C1"], "protocol.C1");
        }
    } else if (j.contains("C1")) {
        fail("protocol.C0", "required when C1 is given");
    }
    if (j.contains("trials")) {
        p.trials = as_integer(j["trials"], "protocol.trials");
    }
    if (j.contains("seed")) {
        const std::int64_t s = as_integer(j["seed"], "protocol.seed");
        if (s < 0) {
            fail("protocol.seed", "must be non-negative");
        }
        p.seed = static_cast<std::uint64_t>(s);
    }
    return p;
}

SweepConfig parse_sweep(const json &j) {
    require_keys(j, "sweep", {"parameter", "values"});
    SweepConfig s;
    if (!j.contains("parameter")) {
        fail("sweep.parameter", "required");
    }
    s.parameter = as_string(j["parameter"], "sweep.parameter");
    if (!j.contains("values") || !j["values"].is_array()) {
        fail("sweep.values", "expected an array of numbers");
    }
    for (std::size_t i = 0; i < j["values"].size(); ++i) {
        s.values.push_back(as_number(j["values"][i], "sweep.values[" + std::to_string(i) + "]"));
    }
    return s;
}

OutputConfig parse_output(const json &j) {
    require_keys(j, "output", {"format", "path", "snapshot_series"});
    OutputConfig o;
    if (j.contains("format")) {
        const std::string f = as_string(j["format"], "output.format");
        if (f == "csv") {
            o.format = OutputFormat::csv;
        } else if (f == "json") {
            o.format = OutputFormat::json;
        } else {
            fail("output.format", "expected \"csv\" or \"json\", got \"" + f + "\"");
        }
    }
    if (j.contains("path")) {
        o.path = as_string(j["path"], "output.path");
    }
    if (j.contains("snapshot_series")) {
        o.snapshot_series = as_bool(j["snapshot_series"], "output.snapshot_series");
    }
    return o;
}

int as_qubit(const json &v, const std::string &field) {
    return static_cast<int>(as_integer(v, field));
}

struct LineColumn {
    std::size_t line = 1;
    std::size_t column = 1;
};

LineColumn locate(const std::string &text, std::size_t byte) {
    LineColumn lc;
    const std::size_t end = std::min(byte, text.size());
    for (std::size_t i = 0; i + 1 < end; ++i) {
        if (text[i] == '\n') {
            ++lc.line;
            lc.column = 1;
        } else {
            ++lc.column;
        }
    }
    return lc;
}

std::string mode_name(MeasurementMode m) {
    return m == MeasurementMode::ideal ? "ideal" : "physical";
}

ordered_json complex_json(cplx c) { return ordered_json::array({c.real(), c.imag()}); }

ordered_json pair_json(const std::array<double, 2> &a) { return ordered_json::array({a[0], a[1]}); }

/// Parses "field" or "field[i]" into (field, index or -1).
bool split_path(const std::string &path, std::string &section, std::string &field, int &index) {
    static const std::regex re(R"(^([a-z_]+)\.([A-Za-z_0-9]+)(?:\[([01])\])?$)");
    std::smatch m;
    if (!std::regex_match(path, m, re)) {
        return false;
    }
    section = m[1];
    field = m[2];
    index = m[3].matched ? std::stoi(m[3]) : -1;
    return true;
}

const std::set<std::string> kDeviceScalars{"omega_r", "kappa", "epsilon", "omega_d", "n_max",
                                           "bias_shift"};
const std::set<std::string> kDevicePairs{"omega_a", "g", "gamma1", "gamma_phi"};

std::string error_kind(const Error &e) {
    if (dynamic_cast<const LayoutError *>(&e)) return "LayoutError";
    if (dynamic_cast<const ArgumentError *>(&e)) return "ArgumentError";
    if (dynamic_cast<const StateSupportError *>(&e)) return "StateSupportError";
    if (dynamic_cast<const SingularityError *>(&e)) return "SingularityError";
    if (dynamic_cast<const UnphysicalInputError *>(&e)) return "UnphysicalInputError";
    if (dynamic_cast<const ConfigurationError *>(&e)) return "ConfigurationError";
    if (dynamic_cast<const BudgetError *>(&e)) return "BudgetError";
    if (dynamic_cast<const IntegrationQualityError *>(&e)) return "IntegrationQualityError";
    if (dynamic_cast<const FitError *>(&e)) return "FitError";
    return "Error";
}

} // namespace

void ScenarioConfig::validate() const {
    if (name.empty()) {
        fail("name", "must not be empty");
    }
    try {
        device.validate();
    } catch (const ArgumentError &e) {
        throw ConfigError(std::string("device: ") + e.what());
    }
    if (protocol.trials < 1) {
        fail("protocol.trials", "must be >= 1, got " + std::to_string(protocol.trials));
    }
    if (!protocol.seed && (protocol.trials > 1 || protocol.random_input)) {
        fail("protocol.seed", "required when trials > 1 or C0 is \"random\"");
    }
    if (!protocol.random_input) {
        const double n2 = std::norm(protocol.c0) + std::norm(protocol.c1);
        if (std::abs(n2 - 1.0) > 1e-9) {
            std::ostringstream msg;
            msg << "|C0|^2 + |C1|^2 must be 1, got " << n2;
            fail("protocol.C0", msg.str());
        }
    }
    if (sweep) {
        if (!is_sweep_parameter(sweep->parameter)) {
            fail("sweep.parameter", "\"" + sweep->parameter + "\" is not a numeric config field");
        }
        if (sweep->values.empty()) {
            fail("sweep.values", "must not be empty");
        }
    }
    if (rabi.qubit != 1 && rabi.qubit != 2) {
        fail("rabi.qubit", "must be 1 or 2");
    }
    if (!(rabi.duration_us > 0.0)) {
        fail("rabi.duration_us", "must be positive");
    }
    if (dispersive.qubit != 1 && dispersive.qubit != 2) {
        fail("dispersive.qubit", "must be 1 or 2");
    }
    if (dispersive.ratios.empty()) {
        fail("dispersive.ratios", "must not be empty");
    }
    for (double r : dispersive.ratios) {
        if (!(r > 0.0 && r < 1.0)) {
            fail("dispersive.ratios", "entries must lie in (0, 1)");
        }
    }
    if (tomography.shots < 1) {
        fail("tomography.shots", "must be >= 1");
    }
}

ScenarioConfig parse_config(const std::string &text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error &e) {
        const LineColumn lc = locate(text, e.byte);
        std::ostringstream msg;
        msg << "parse error at line " << lc.line << ", column " << lc.column << ": " << e.what();
        throw ConfigError(msg.str());
    }
    require_keys(root, "",
                 {"name", "device", "protocol", "sweep", "output", "rabi", "dispersive",
                  "tomography"});
    ScenarioConfig cfg;
    if (root.contains("name")) {
        cfg.name = as_string(root["name"], "name");
    }
    if (root.contains("device")) {
        cfg.device = parse_device(root["device"]);
    }
    if (root.contains("protocol")) {
        cfg.protocol = parse_protocol(root["protocol"]);
    }
    if (root.contains("sweep")) {
        cfg.sweep = parse_sweep(root["sweep"]);
    }
    if (root.contains("output")) {
        cfg.output = parse_output(root["output"]);
    }
    if (root.contains("rabi")) {
        const json &r = root["rabi"];
        require_keys(r, "rabi", {"qubit", "duration_us"});
        if (r.contains("qubit")) cfg.rabi.qubit = as_qubit(r["qubit"], "rabi.qubit");
        if (r.contains("duration_us")) {
            cfg.rabi.duration_us = as_number(r["duration_us"], "rabi.duration_us");
        }
    }
    if (root.contains("dispersive")) {
        const json &d = root["dispersive"];
        require_keys(d, "dispersive", {"qubit", "ratios"});
        if (d.contains("qubit")) cfg.dispersive.qubit = as_qubit(d["qubit"], "dispersive.qubit");
        if (d.contains("ratios")) {
            if (!d["ratios"].is_array()) {
                fail("dispersive.ratios", "expected an array of numbers");
            }
            cfg.dispersive.ratios.clear();
            for (std::size_t i = 0; i < d["ratios"].size(); ++i) {
                cfg.dispersive.ratios.push_back(
                    as_number(d["ratios"][i], "dispersive.ratios[" + std::to_string(i) + "]"));
            }
        }
    }
    if (root.contains("tomography")) {
        const json &t = root["tomography"];
        require_keys(t, "tomography", {"shots"});
        if (t.contains("shots")) cfg.tomography.shots = as_integer(t["shots"], "tomography.shots");
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const ConfigError &e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::string emit_config(const ScenarioConfig &cfg) {
    ordered_json root;
    root["name"] = cfg.name;
    const DeviceParams &d = cfg.device;
    ordered_json dev;
    dev["omega_r"] = d.omega_r;
    dev["omega_a"] = pair_json(d.omega_a);
    dev["g"] = pair_json(d.g);
    dev["kappa"] = d.kappa;
    dev["gamma1"] = pair_json(d.gamma1);
    dev["gamma_phi"] = pair_json(d.gamma_phi);
    dev["epsilon"] = d.epsilon;
    dev["omega_d"] = d.omega_d;
    dev["n_max"] = d.n_max;
    dev["coupled"] = ordered_json::array({d.coupled[0], d.coupled[1]});
    dev["bias_shift"] = d.bias_shift;
    root["device"] = dev;

    const ProtocolConfig &p = cfg.protocol;
    ordered_json prot;
    prot["mode"] = mode_name(p.mode);
    prot["noise"] = p.noise;
    if (p.random_input) {
        prot["C0"] = "random";
    } else {
        prot["C0"] = complex_json(p.c0);
        prot["C1"] = complex_json(p.c1);
    }
    prot["trials"] = p.trials;
    if (p.seed) {
        prot["seed"] = *p.seed;
    }
    prot["feed_forward"] = p.feed_forward;
    root["protocol"] = prot;

    if (cfg.sweep) {
        root["sweep"] = {{"parameter", cfg.sweep->parameter}, {"values", cfg.sweep->values}};
    }
    ordered_json out;
    out["format"] = cfg.output.format == OutputFormat::csv ? "csv" : "json";
    out["path"] = cfg.output.path;
    out["snapshot_series"] = cfg.output.snapshot_series;
    root["output"] = out;
    root["rabi"] = {{"qubit", cfg.rabi.qubit}, {"duration_us", cfg.rabi.duration_us}};
    root["dispersive"] = {{"qubit", cfg.dispersive.qubit}, {"ratios", cfg.dispersive.ratios}};
    root["tomography"] = {{"shots", cfg.tomography.shots}};
    return root.dump(2) + "\n";
}

bool is_sweep_parameter(const std::string &path) {
    if (path == "rabi.duration_us" || path == "tomography.shots") {
        return true;
    }
    std::string section, field;
    int index = -1;
    if (!split_path(path, section, field, index) || section != "device") {
        return false;
    }
    if (kDeviceScalars.contains(field)) {
        return index < 0;
    }
    return kDevicePairs.contains(field);
}

void set_parameter(ScenarioConfig &cfg, const std::string &path, double value) {
    if (!is_sweep_parameter(path)) {
        fail("sweep.parameter", "\"" + path + "\" is not a numeric config field");
    }
    const auto integral = [&](const char *what) {
        if (value != std::floor(value) || std::abs(value) > 1e15) {
            fail(what, "sweep value must be an integer");
        }
        return static_cast<std::int64_t>(value);
    };
    if (path == "rabi.duration_us") {
        cfg.rabi.duration_us = value;
        return;
    }
    if (path == "tomography.shots") {
        cfg.tomography.shots = integral("tomography.shots");
        return;
    }
    std::string section, field;
    int index = -1;
    split_path(path, section, field, index);
    DeviceParams &d = cfg.device;
    if (field == "omega_r") d.omega_r = value;
    else if (field == "kappa") d.kappa = value;
    else if (field == "epsilon") d.epsilon = value;
    else if (field == "omega_d") d.omega_d = value;
    else if (field == "bias_shift") d.bias_shift = value;
    else if (field == "n_max") d.n_max = static_cast<int>(integral("device.n_max"));
    else {
        std::array<double, 2> *target = field == "omega_a" ? &d.omega_a
                                        : field == "g"     ? &d.g
                                        : field == "gamma1" ? &d.gamma1
                                                            : &d.gamma_phi;
        if (index < 0) {
            *target = {value, value};
        } else {
            (*target)[static_cast<std::size_t>(index)] = value;
        }
    }
}

std::uint64_t trial_seed(const ScenarioConfig &cfg, std::size_t index) {
    return cfg.protocol.seed.value_or(0) + static_cast<std::uint64_t>(index);
}

ResultSet run_scenario(const ScenarioConfig &cfg) {
    cfg.validate();
    ResultSet out;
    std::vector<std::optional<double>> group_values;
    if (cfg.sweep) {
        out.sweep_parameter = cfg.sweep->parameter;
        group_values.assign(cfg.sweep->values.begin(), cfg.sweep->values.end());
    } else {
        group_values.push_back(std::nullopt);
    }

    const auto trials = static_cast<std::size_t>(cfg.protocol.trials);
    for (std::size_t g = 0; g < group_values.size(); ++g) {
        ScenarioConfig group_cfg = cfg;
        std::optional<std::size_t> sweep_index;
        if (group_values[g]) {
            sweep_index = g;
            set_parameter(group_cfg, cfg.sweep->parameter, *group_values[g]);
            try {
                group_cfg.validate();
            } catch (const ConfigError &e) {
                throw ConfigError("sweep.values[" + std::to_string(g) + "]: " + e.what());
            }
        }
        TeleportOptions options;
        options.mode = cfg.protocol.mode;
        options.noise = cfg.protocol.noise;
        options.feed_forward = cfg.protocol.feed_forward;

        GroupSummary summary;
        summary.sweep_index = sweep_index;
        summary.sweep_value = group_values[g];
        double fidelity_sum = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            const std::uint64_t seed = trial_seed(cfg, t);
            Rng rng(seed);
            TrialRow row;
            row.scenario = cfg.name;
            row.trial = t;
            row.seed = seed;
            row.sweep_index = sweep_index;
            row.sweep_value = group_values[g];
            try {
                cplx c0 = cfg.protocol.c0;
                cplx c1 = cfg.protocol.c1;
                if (cfg.protocol.random_input) {
                    std::tie(c0, c1) = random_input(rng);
                }
                const TeleportResult r =
                    run_teleportation(c0, c1, options, group_cfg.device, rng);
                row.outcome = r.outcome;
                row.fidelity = r.fidelity;
                row.duration_us = r.protocol_duration;
            } catch (const Error &e) {
                std::ostringstream msg;
                if (sweep_index) {
                    msg << "sweep " << *sweep_index << ", ";
                }
                msg << "trial " << t << ": " << e.what();
                throw TrialError(msg.str(), t, error_kind(e));
            }
            fidelity_sum += row.fidelity;
            ++summary.outcome_counts[static_cast<std::size_t>(row.outcome)];
            out.rows.push_back(std::move(row));
        }
        summary.trials = trials;
        summary.mean_fidelity = fidelity_sum / static_cast<double>(trials);
        out.groups.push_back(summary);
    }
    return out;
}

} // namespace cqed
