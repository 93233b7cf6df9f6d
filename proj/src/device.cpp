// Copyright 2026 The qcal Authors
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

#include "qcal/device.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcal/error.hpp"

namespace qcal {

std::string_view to_string(GateKind k) {
    switch (k) {
    case GateKind::OneQ:
        return "1Q";
    case GateKind::TwoQ:
        return "2Q";
    case GateKind::Meas:
        return "Meas";
    case GateKind::Reset:
        return "Reset";
    }
    return "?";
}

GateKind gate_kind_from_string(std::string_view s) {
    for (GateKind k : {GateKind::OneQ, GateKind::TwoQ, GateKind::Meas, GateKind::Reset}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    throw ValidationError("unknown gate kind: " + std::string(s));
}

std::vector<QubitId> GateProfile::footprint() const {
    std::vector<QubitId> f = qubits;
    f.insert(f.end(), nbr.begin(), nbr.end());
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    return f;
}

void DeviceParams::validate() const {
    auto require = [](bool ok, const char *field, const char *rule) {
        if (!ok) {
            throw ValidationError(std::string("device.") + field + " must be " + rule);
        }
    };
    require(mean_t_drift_h > 0, "mean_t_drift_h", "positive");
    require(sigma > 0, "sigma", "positive");
    require(p0 > 0 && p0 < 0.5, "p0", "in (0, 0.5)");
    require(t_cali_1q_h > 0, "t_cali_1q_h", "positive");
    require(t_cali_2q_h > 0, "t_cali_2q_h", "positive");
    require(t_cali_meas_h > 0, "t_cali_meas_h", "positive");
    require(t_cali_jitter >= 0 && t_cali_jitter < 1, "t_cali_jitter", "in [0, 1)");
    require(nbr_radius >= 0, "nbr_radius", "non-negative");
}

nlohmann::json DeviceParams::to_json() const {
    return {{"mean_t_drift_h", mean_t_drift_h}, {"sigma", sigma},           {"p0", p0},
            {"t_cali_1q_h", t_cali_1q_h},       {"t_cali_2q_h", t_cali_2q_h}, {"t_cali_meas_h", t_cali_meas_h},
            {"t_cali_jitter", t_cali_jitter},   {"nbr_radius", nbr_radius}};
}

DeviceParams DeviceParams::from_json(const nlohmann::json &j) {
    DeviceParams p;
    p.mean_t_drift_h = j.value("mean_t_drift_h", p.mean_t_drift_h);
    p.sigma = j.value("sigma", p.sigma);
    p.p0 = j.value("p0", p.p0);
    p.t_cali_1q_h = j.value("t_cali_1q_h", p.t_cali_1q_h);
    p.t_cali_2q_h = j.value("t_cali_2q_h", p.t_cali_2q_h);
    p.t_cali_meas_h = j.value("t_cali_meas_h", p.t_cali_meas_h);
    p.t_cali_jitter = j.value("t_cali_jitter", p.t_cali_jitter);
    p.nbr_radius = j.value("nbr_radius", p.nbr_radius);
    p.validate();
    return p;
}

double Rng::uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = 0;
    while (u1 <= 0) {
        u1 = uniform();
    }
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

double lognormal_mu(double mean, double sigma) { return std::log(mean) - 0.5 * sigma * sigma; }

DeviceModel::DeviceModel(std::shared_ptr<const Lattice> lattice, DeviceParams params, uint64_t seed,
                         std::vector<GateProfile> gates)
    : lattice_(std::move(lattice)), params_(params), seed_(seed), gates_(std::move(gates)) {
    for (size_t i = 0; i < gates_.size(); ++i) {
        const auto &g = gates_[i];
        if (g.id != static_cast<int>(i)) {
            throw ValidationError("gate ids must be dense and ordered");
        }
        if (!(g.p0 > 0) || !(g.t_drift_h > 0) || !(g.t_cali_h > 0) || g.qubits.empty()) {
            throw ValidationError("gate " + std::to_string(g.id) + " has a non-positive parameter");
        }
        for (QubitId q : g.footprint()) {
            if (q < 0 || static_cast<size_t>(q) >= lattice_->num_qubits()) {
                throw ValidationError("gate " + std::to_string(g.id) + " references an unknown qubit");
            }
        }
    }
}

double DeviceModel::max_p0() const {
    double m = 0;
    for (const auto &g : gates_) {
        m = std::max(m, g.p0);
    }
    return m;
}

std::vector<int> DeviceModel::gates_within(const std::vector<bool> &qubits) const {
    std::vector<int> out;
    for (const auto &g : gates_) {
        if (std::all_of(g.qubits.begin(), g.qubits.end(), [&](QubitId q) { return qubits[static_cast<size_t>(q)]; })) {
            out.push_back(g.id);
        }
    }
    return out;
}

nlohmann::json DeviceModel::to_json() const {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto &g : gates_) {
        gates.push_back({{"id", g.id},
                         {"kind", to_string(g.kind)},
                         {"qubits", g.qubits},
                         {"p0", g.p0},
                         {"t_drift_h", g.t_drift_h},
                         {"t_cali_h", g.t_cali_h},
                         {"nbr", g.nbr}});
    }
    const Lattice &L = *lattice_;
    return {{"seed", seed_},
            {"lattice",
             {{"topology", to_string(L.topology())},
              {"distance", L.distance()},
              {"margin", L.patch().row0 - L.device().row0},
              {"rows", L.device().rows},
              {"cols", L.device().cols}}},
            {"params", params_.to_json()},
            {"gates", gates}};
}

DeviceModel DeviceModel::from_json(const nlohmann::json &j) {
    try {
        const auto &l = j.at("lattice");
        Topology t = topology_from_string(l.at("topology").get<std::string>());
        int d = l.at("distance").get<int>();
        int margin = l.value("margin", 0);
        int rows = l.value("rows", d + 2 * margin);
        int cols = l.value("cols", d + 2 * margin);
        auto lat = std::make_shared<const Lattice>(margin == 0 && rows != cols ? Lattice::build_rect(t, rows, cols)
                                                                               : Lattice::build(t, d, margin));
        std::vector<GateProfile> gates;
        for (const auto &g : j.at("gates")) {
            GateProfile p;
            p.id = g.at("id").get<int>();
            p.kind = gate_kind_from_string(g.at("kind").get<std::string>());
            p.qubits = g.at("qubits").get<std::vector<QubitId>>();
            p.p0 = g.at("p0").get<double>();
            p.t_drift_h = g.at("t_drift_h").get<double>();
            p.t_cali_h = g.at("t_cali_h").get<double>();
            p.nbr = g.at("nbr").get<std::vector<QubitId>>();
            gates.push_back(std::move(p));
        }
        DeviceParams params = j.contains("params") ? DeviceParams::from_json(j.at("params")) : DeviceParams{};
        return DeviceModel(std::move(lat), params, j.at("seed").get<uint64_t>(), std::move(gates));
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("malformed device profile: ") + e.what());
    }
}

DeviceModel synthesize_device(std::shared_ptr<const Lattice> lattice, const DeviceParams &params, uint64_t seed) {
    params.validate();
    const Lattice &L = *lattice;
    Rng rng(seed);
    const double mu = lognormal_mu(params.mean_t_drift_h, params.sigma);
    std::vector<GateProfile> gates;
    auto add = [&](GateKind kind, std::vector<QubitId> qubits, double t_cali) {
        GateProfile g;
        g.id = static_cast<int>(gates.size());
        g.kind = kind;
        g.qubits = std::move(qubits);
        g.p0 = params.p0;
        g.t_drift_h = std::exp(mu + params.sigma * rng.normal());
        g.t_cali_h = t_cali * rng.uniform(1.0 - params.t_cali_jitter, 1.0 + params.t_cali_jitter);
        g.nbr = L.ball(g.qubits, params.nbr_radius);
        gates.push_back(std::move(g));
    };
    for (const auto &q : L.qubits()) {
        add(GateKind::OneQ, {q.id}, params.t_cali_1q_h);
    }
    for (auto [a, b] : L.edges()) {
        add(GateKind::TwoQ, {a, b}, params.t_cali_2q_h);
    }
    for (const auto &q : L.qubits()) {
        if (q.role != QubitRole::Data) {
            add(GateKind::Meas, {q.id}, params.t_cali_meas_h);
        }
    }
    return DeviceModel(std::move(lattice), params, seed, std::move(gates));
}

double drift_error_rate(const GateProfile &g, double t_hours) {
    if (!(t_hours >= 0)) {
        throw ValidationError("drift time must be non-negative");
    }
    return std::min(g.p0 * std::pow(10.0, t_hours / g.t_drift_h), 0.5);
}

double drift_time_to_target(const GateProfile &g, double p_tar) {
    if (!(p_tar > g.p0)) {
        throw ValidationError("target error rate must exceed the calibrated rate");
    }
    return g.t_drift_h * std::log10(p_tar / g.p0);
}

CrosstalkConflict::CrosstalkConflict(const DeviceModel &device) {
    const auto &gates = device.gates();
    adj_.resize(gates.size());
    std::vector<std::vector<int>> by_qubit(device.lattice().num_qubits());
    for (const auto &g : gates) {
        for (QubitId q : g.footprint()) {
            by_qubit[static_cast<size_t>(q)].push_back(g.id);
        }
    }
    for (const auto &list : by_qubit) {
        for (int a : list) {
            for (int b : list) {
                if (a != b) {
                    adj_[static_cast<size_t>(a)].push_back(b);
                }
            }
        }
    }
    for (auto &n : adj_) {
        std::sort(n.begin(), n.end());
        n.erase(std::unique(n.begin(), n.end()), n.end());
    }
}

bool CrosstalkConflict::conflict(int a, int b) const {
    const auto &n = adj_.at(static_cast<size_t>(a));
    return std::binary_search(n.begin(), n.end(), b);
}

CrosstalkConflict conflicts(const DeviceModel &device) { return CrosstalkConflict(device); }

}  // namespace qcal
