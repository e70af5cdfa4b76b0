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

// Acceptance suite: one PASS/FAIL line per criterion, each timed against its
// runtime limit. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "cqed/experiments.hpp"
#include "cqed/protocol.hpp"
#include "cqed/scenario.hpp"
#include "cqed/tomography.hpp"
#include "oracles.hpp"

using namespace cqed;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

struct Verdict {
    bool pass;
    std::string detail;
};

int g_failures = 0;

void criterion(int id, const char *title, double limit_s, const std::function<Verdict()> &body) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v{false, ""};
    try {
        v = body();
    } catch (const std::exception &e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = elapsed < limit_s;
    const bool pass = v.pass && in_time;
    if (!pass) {
        ++g_failures;
    }
    std::printf("[%s] %2d %s (%.2f s, limit %.0f s%s): %s\n", pass ? "PASS" : "FAIL", id, title,
                elapsed, limit_s, in_time ? "" : ", over time", v.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Verdict ideal_identity() {
    const DeviceParams p = default_device();
    constexpr int kInputs = 20;
    constexpr int kPerInput = 50;
    constexpr int kTrials = kInputs * kPerInput;
    std::array<int, 4> counts{};
    double worst = 0.0;
    Rng inputs(20260101);
    for (int i = 0; i < kInputs; ++i) {
        const auto [c0, c1] = random_input(inputs);
        for (int k = 0; k < kPerInput; ++k) {
            Rng rng(static_cast<std::uint64_t>(1000 * i + k));
            const TeleportResult r = run_teleportation(c0, c1, {}, p, rng);
            worst = std::max(worst, std::abs(r.fidelity - 1.0));
            ++counts[static_cast<std::size_t>(r.outcome)];
        }
    }
    const double bound = 3.0 * std::sqrt(0.25 * 0.75 / kTrials);
    double dev = 0.0;
    for (int c : counts) {
        dev = std::max(dev, std::abs(c / double(kTrials) - 0.25));
    }
    return {worst <= 1e-9 && dev <= bound,
            fmt("max |F-1| = %.2e; max |f-1/4| = %.4f (3 sigma %.4f)", worst, dev, bound)};
}

Verdict oracle_equivalence() {
    DeviceParams p = default_device();
    p.n_max = 1;
    Rng rng(4242);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const auto [c0, c1] = random_input(rng);
        const auto expected = oracle::bell_branches(oracle::joint_state(c0, c1));
        const QuantumState joint =
            tensor(prepare_input(c0, c1), prepare_channel(ChannelMode::ideal, p));
        Rng run(static_cast<std::uint64_t>(k));
        const TeleportResult r = run_teleportation(c0, c1, {}, p, run);
        const auto branches = decompose_bell(joint);
        for (std::size_t b = 0; b < 4; ++b) {
            worst = std::max(worst, std::abs(r.outcome_probabilities[b] - expected[b].probability));
            const Vector post =
                tensor(bell_state(branches[b].label, 1), branches[b].conditional).amplitudes();
            for (std::size_t i = 0; i < 8; ++i) {
                worst = std::max(worst, std::abs(post(static_cast<Eigen::Index>(i)) - expected[b].post[i]));
            }
        }
        Rng meas(static_cast<std::uint64_t>(k));
        const BellOutcome o = bell_measurement(joint, meas);
        const auto &e = expected[static_cast<std::size_t>(o.label)];
        for (std::size_t i = 0; i < 8; ++i) {
            worst = std::max(worst, std::abs(o.collapsed_state.amplitudes()(static_cast<Eigen::Index>(i)) -
                                             e.post[i]));
        }
    }
    return {worst <= 1e-10, fmt("max deviation %.2e over 50 inputs", worst)};
}

Verdict channel_generation() {
    const DeviceParams p = default_device();
    const QuantumState target = prepare_channel(ChannelMode::ideal, p);
    Vector amps = Vector::Zero(6);
    amps(1) = 1.0 / std::sqrt(2.0);
    amps(2) = cplx(0.0, -1.0 / std::sqrt(2.0));
    const double f_written = fidelity(target, QuantumState(target.layout(), amps));
    const double f_ideal = fidelity(target, prepare_channel(ChannelMode::jc_pulse, p, PulseMode::ideal));
    const double f_int =
        fidelity(target, prepare_channel(ChannelMode::jc_pulse, p, PulseMode::integrated));
    const double worst = std::min({f_written, f_ideal, f_int});
    return {worst >= 1.0 - 1e-8, fmt("1-F ideal %.2e, integrated %.2e", 1.0 - f_ideal, 1.0 - f_int)};
}

Verdict device_numbers() {
    const ResonatorDecay d = kappa_from_quality(5000.0, 1e6);
    const CoherenceRates r = rates_from_coherence_times(7.3, 0.5);
    const double e_kappa = std::abs(d.kappa - 0.005) / 0.005;
    const double e_life = std::abs(d.photon_lifetime - 31.0) / 31.0;
    const double e_g1 = std::abs(r.gamma1 - 0.02) / 0.02;
    const double e_gphi = std::abs(r.gamma_phi - 0.31) / 0.31;
    const bool ok = e_kappa <= 0.03 && e_life <= 0.03 && e_g1 <= 0.10 && e_gphi <= 0.03;
    std::ostringstream s;
    s << "kappa " << d.kappa * 1e3 << " kHz, lifetime " << d.photon_lifetime << " us, gamma1 "
      << r.gamma1 << " MHz, gamma_phi " << r.gamma_phi << " MHz";
    return {ok, s.str()};
}

Verdict rabi_check() {
    ScenarioConfig cfg;
    cfg.device.epsilon =
        50.0 * std::abs(cfg.device.omega_r - cfg.device.omega_d) / (2.0 * cfg.device.g[0]);
    const ExperimentOutput out = run_rabi(cfg);
    const auto &cols = out.summary.columns;
    const auto at = [&](const std::string &name) {
        const auto it = std::find(cols.begin(), cols.end(), name);
        return std::get<double>(out.summary.rows[0][static_cast<std::size_t>(it - cols.begin())]);
    };
    const double predicted = at("rabi_predicted_mhz");
    const double fitted = at("rabi_fitted_mhz");
    const double rel = std::abs(fitted - predicted) / predicted;
    return {std::abs(predicted - 50.0) < 1e-9 && rel <= 0.02,
            fmt("predicted %.4f MHz, fitted %.4f MHz, rel error %.2e", predicted, fitted, rel)};
}

Verdict dispersive_validity() {
    DeviceParams p = default_device();
    const double delta = p.omega_a[0] - p.omega_r;
    bool ok = true;
    std::ostringstream s;
    for (double ratio : {0.02, 0.05, 0.1}) {
        p.g[0] = ratio * delta;
        const double chi = dispersive_chi(p.g[0], delta);
        const double rel = std::abs(exact_dispersive_shift(p, Qubit::first) - chi) / chi;
        ok = ok && rel <= 2.0 * ratio * ratio;
        s << "g/D=" << ratio << ": " << rel << " <= " << 2.0 * ratio * ratio << "; ";
    }
    return {ok, s.str()};
}

Verdict decoherence_analytics() {
    const DeviceParams base = default_device();
    const HilbertLayout l = protocol_layout(base.n_max);
    const Hamiltonian zero = Hamiltonian::constant(OperatorMatrix(l, Matrix::Zero(12, 12), true));

    const auto max_error = [&](const DensityTrajectory &tr, const std::string &name, double rate) {
        double worst = 0.0;
        for (std::size_t k = 0; k < tr.times.size(); ++k) {
            worst = std::max(worst, std::abs(tr.observables.at(name)[k] - std::exp(-kTwoPi * rate * tr.times[k])));
        }
        return worst;
    };

    DeviceParams d = base;
    d.kappa = 0.0;
    d.gamma_phi = {0.0, 0.0};
    d.coupled = {true, false};
    Matrix up = Matrix::Zero(2, 2);
    up(1, 1) = 1.0;
    const std::vector<Observable> p_up{{"p_up", embed(OperatorMatrix(HilbertLayout({2}), up, true), l, 0)}};
    const auto t1 = evolve_lindblad(DensityMatrix::from_state(QuantumState::basis(l, {1, 0, 0})), zero,
                                    collapse_operators(d), {0.0, 3.0 / (kTwoPi * d.gamma1[0])}, {}, p_up);
    const double e1 = max_error(t1, "p_up", d.gamma1[0]);

    d = base;
    d.gamma1 = {0.0, 0.0};
    d.gamma_phi = {0.0, 0.0};
    const std::vector<Observable> n{{"n", embed(number_operator(3), l, 1)}};
    const auto tk = evolve_lindblad(DensityMatrix::from_state(QuantumState::basis(l, {0, 1, 0})), zero,
                                    collapse_operators(d), {0.0, 3.0 / (kTwoPi * d.kappa)}, {}, n);
    const double ek = max_error(tk, "n", d.kappa);

    const HilbertLayout q({2});
    Vector plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const Hamiltonian zq = Hamiltonian::constant(OperatorMatrix(q, Matrix::Zero(2, 2), true));
    const auto tc = evolve_lindblad(DensityMatrix::from_state(QuantumState(q, plus)), zq,
                                    qubit_collapse_operators(base, Qubit::first), {0.0, 2.0 * 0.5});
    const double gamma2 = base.gamma1[0] / 2 + base.gamma_phi[0];
    double ec = 0.0;
    for (std::size_t k = 1; k < tc.times.size(); ++k) {
        const double c = 2.0 * std::abs(tc.states[k].elements()(0, 1));
        const double rate = -std::log(c) / (kTwoPi * tc.times[k]);
        ec = std::max(ec, std::abs(rate - gamma2) / gamma2);
    }
    return {e1 <= 1e-6 && ek <= 1e-6 && ec <= 0.01,
            fmt("gamma1 err %.2e, kappa err %.2e, gamma2 rel err %.2e", e1, ek, ec)};
}

Verdict noisy_protocol() {
    constexpr int kTrials = 200;
    const DeviceParams base = default_device();
    TeleportOptions o;
    o.noise = true;
    o.mode = MeasurementMode::physical;
    std::array<double, 8> mean{};
    for (int mask = 0; mask < 8; ++mask) {
        DeviceParams p = base;
        if (mask & 1) p.kappa *= 2.0;
        if (mask & 2) p.gamma1 = {2.0 * p.gamma1[0], 2.0 * p.gamma1[1]};
        if (mask & 4) p.gamma_phi = {2.0 * p.gamma_phi[0], 2.0 * p.gamma_phi[1]};
        double sum = 0.0;
        for (int t = 0; t < kTrials; ++t) {
            Rng rng(static_cast<std::uint64_t>(500 + t));
            const auto [c0, c1] = random_input(rng);
            sum += run_teleportation(c0, c1, o, p, rng).fidelity;
        }
        mean[static_cast<std::size_t>(mask)] = sum / kTrials;
    }
    bool monotone = true;
    for (int mask = 0; mask < 8; ++mask) {
        for (int bit : {1, 2, 4}) {
            if (!(mask & bit)) {
                monotone = monotone && mean[static_cast<std::size_t>(mask | bit)] <=
                                           mean[static_cast<std::size_t>(mask)];
            }
        }
    }
    std::ostringstream s;
    s << "mean F base " << mean[0] << ", all doubled " << mean[7] << ", 12 doubling edges "
      << (monotone ? "non-increasing" : "VIOLATED");
    return {mean[0] < 1.0 && monotone, s.str()};
}

Verdict tomography() {
    const QuantumState pair =
        truncate_resonator(prepare_channel(ChannelMode::jc_pulse, default_device()));
    const DensityMatrix truth = DensityMatrix::from_state(pair);
    const double c = concurrence(tomography_reconstruct(exact_tomography(truth)));
    Rng rng(99);
    const DensityMatrix sampled = tomography_reconstruct(sampled_tomography(truth, 10000, rng));
    const double f =
        (pair.amplitudes().adjoint() * sampled.elements() * pair.amplitudes())(0, 0).real();
    return {std::abs(c - 1.0) <= 1e-8 && f >= 0.98,
            fmt("exact concurrence 1 - %.2e; sampled fidelity %.5f", 1.0 - c, f)};
}

Verdict cli_determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "cqed_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path cfg = dir / "scenario.json";
    std::ofstream(cfg) << R"({"name": "determinism",
  "protocol": {"mode": "physical", "noise": true, "C0": "random", "trials": 40, "seed": 17},
  "device": {"n_max": 1}})";
    std::string out[2];
    for (int k = 0; k < 2; ++k) {
        const fs::path csv = dir / ("run" + std::to_string(k) + ".csv");
        const std::string cmd = std::string("\"") + CQED_CLI + "\" teleport --config " +
                                cfg.string() + " --output " + csv.string() + " 2>/dev/null";
        if (std::system(cmd.c_str()) != 0) {
            return {false, "CLI exited with an error"};
        }
        std::ifstream in(csv, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        out[k] = s.str();
    }
    const bool same = !out[0].empty() && out[0] == out[1];
    return {same, std::to_string(out[0].size()) + " bytes, " + (same ? "identical" : "DIFFERENT")};
}

} // namespace

int main() {
    criterion(1, "ideal teleportation identity", 10, ideal_identity);
    criterion(2, "brute-force oracle equivalence", 5, oracle_equivalence);
    criterion(3, "channel generation", 5, channel_generation);
    criterion(4, "device-number reproduction", 1, device_numbers);
    criterion(5, "Rabi frequency check", 30, rabi_check);
    criterion(6, "dispersive validity", 5, dispersive_validity);
    criterion(7, "decoherence analytics", 30, decoherence_analytics);
    criterion(8, "noisy-protocol properties", 120, noisy_protocol);
    criterion(9, "tomography", 10, tomography);
    criterion(10, "CLI determinism", 10, cli_determinism);
    std::printf("%d of 10 criteria failed\n", g_failures);
    return g_failures;
}
