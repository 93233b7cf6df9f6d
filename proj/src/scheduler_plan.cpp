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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "qcal/error.hpp"
#include "qcal/scheduler.hpp"

namespace qcal {

nlohmann::json SchedulerConfig::to_json() const {
    return {{"ler_tar", ler_tar},     {"target_d", target_d}, {"alpha", alpha},
            {"p_th", p_th},           {"horizon_h", horizon_h},
            {"delta_d_candidates", delta_d_candidates}, {"enlarge", enlarge}};
}

SchedulerConfig SchedulerConfig::from_json(const nlohmann::json &j) {
    SchedulerConfig c;
    c.ler_tar = j.value("ler_tar", c.ler_tar);
    c.target_d = j.value("target_d", c.target_d);
    c.alpha = j.value("alpha", c.alpha);
    c.p_th = j.value("p_th", c.p_th);
    c.horizon_h = j.value("horizon_h", c.horizon_h);
    c.delta_d_candidates = j.value("delta_d_candidates", c.delta_d_candidates);
    c.enlarge = j.value("enlarge", c.enlarge);
    if (!(c.horizon_h > 0)) {
        throw ValidationError("horizon_h must be positive");
    }
    for (int d : c.delta_d_candidates) {
        if (d < 0) {
            throw ValidationError("delta_d_candidates must be non-negative");
        }
    }
    return c;
}

std::vector<int> code_gates(const DeviceModel &device, const SurfaceCode &code) {
    std::vector<int> out;
    for (const auto &g : device.gates()) {
        if (std::all_of(g.qubits.begin(), g.qubits.end(), [&](QubitId q) { return code.is_active(q); })) {
            out.push_back(g.id);
        }
    }
    return out;
}

Schedule build_schedule(const DeviceModel &device, const SurfaceCode &code, const SchedulerConfig &cfg) {
    if (&code.lattice() != &device.lattice() && code.lattice().to_json() != device.lattice().to_json()) {
        throw ValidationError("code and device use different lattices");
    }
    const std::vector<int> gates = code_gates(device, code);
    if (gates.empty()) {
        throw ValidationError("no device gate acts on the code");
    }
    double p0_max = 0;
    for (int id : gates) {
        p0_max = std::max(p0_max, device.gate(id).p0);
    }
    Schedule s;
    const int d0 = Deformer(code).distance();
    s.target = determine_p_tar(cfg.ler_tar, cfg.target_d > 0 ? cfg.target_d : code.lattice().distance(), cfg.alpha,
                               cfg.p_th);
    if (!(s.target.p_tar > p0_max)) {
        // Name the offending gate.
        group_assignment(device, gates, s.target.p_tar);
    }
    s.groups = group_assignment(device, gates, s.target.p_tar);
    s.horizon_h = cfg.horizon_h;
    const double T = s.groups.t_cali_h;
    const CrosstalkConflict cc = conflicts(device);
    std::map<std::vector<int>, FiringPlan> memo;
    const int M = static_cast<int>(std::floor(cfg.horizon_h / T * (1.0 + 1e-12)));
    for (int m = 1; m <= M; ++m) {
        Firing f;
        f.m = m;
        f.t_h = m * T;
        std::vector<int> due;
        for (const auto &[k, ids] : s.groups.groups) {
            if (m % k == 0) {
                f.ks.push_back(k);
                due.insert(due.end(), ids.begin(), ids.end());
            }
        }
        auto it = memo.find(f.ks);
        if (it == memo.end()) {
            std::sort(due.begin(), due.end());
            auto clusters = cluster_dependencies(due, device);
            PlanFilter enlargeable;
            if (cfg.enlarge) {
                enlargeable = [&](FiringPlan &plan) {
                    bool all = true;
                    for (auto &b : plan.batches) {
                        Deformer d(code);
                        d.apply_all(b.instructions);
                        try {
                            b.enlarge_qubits = static_cast<int>(enlarge_to_distance(d, d0).added_qubits.size());
                        } catch (const InfeasibleError &) {
                            b.enlarge_qubits = -1;
                            all = false;
                        }
                    }
                    return all;
                };
            }
            FiringPlan plan = optimize_delta_d(clusters, cluster_conflicts(clusters, cc), code, T, cfg.delta_d_candidates,
                                               enlargeable);
            for (auto &b : plan.batches) {
                b.clusters.clear();
            }
            it = memo.emplace(f.ks, std::move(plan)).first;
        }
        f.plan = it->second;
        s.firings.push_back(std::move(f));
    }
    return s;
}

nlohmann::json Schedule::to_json() const {
    nlohmann::json fs = nlohmann::json::array();
    for (const auto &f : firings) {
        nlohmann::json bs = nlohmann::json::array();
        for (const auto &b : f.plan.batches) {
            nlohmann::json ins = nlohmann::json::array();
            for (const auto &i : b.instructions) {
                ins.push_back(i.to_json());
            }
            bs.push_back({{"gates", b.gates},
                          {"instructions", ins},
                          {"delta_d", b.delta_d},
                          {"duration_h", b.duration_h},
                          {"enlarge_qubits", b.enlarge_qubits}});
        }
        fs.push_back({{"m", f.m},
                      {"t_h", f.t_h},
                      {"groups", f.ks},
                      {"delta_d_max", f.plan.delta_d_max},
                      {"wall_h", f.plan.wall_h},
                      {"batches", bs}});
    }
    nlohmann::json g = groups.to_json();
    return {{"t_cali_h", groups.t_cali_h}, {"groups", g["groups"]}, {"target", target.to_json()},
            {"horizon_h", horizon_h},      {"firings", fs}};
}

Schedule Schedule::from_json(const nlohmann::json &j) {
    try {
        Schedule s;
        s.groups = CalibrationGroups::from_json(j);
        s.target = TargetSpec::from_json(j.at("target"));
        s.horizon_h = j.at("horizon_h").get<double>();
        for (const auto &fj : j.at("firings")) {
            Firing f;
            f.m = fj.at("m").get<int>();
            f.t_h = fj.at("t_h").get<double>();
            f.ks = fj.at("groups").get<std::vector<int>>();
            f.plan.delta_d_max = fj.at("delta_d_max").get<int>();
            f.plan.wall_h = fj.at("wall_h").get<double>();
            for (const auto &bj : fj.at("batches")) {
                Batch b;
                b.gates = bj.at("gates").get<std::vector<int>>();
                for (const auto &ij : bj.at("instructions")) {
                    b.instructions.push_back(DeformInstruction::from_json(ij));
                }
                b.delta_d = bj.at("delta_d").get<int>();
                b.duration_h = bj.at("duration_h").get<double>();
                b.enlarge_qubits = bj.value("enlarge_qubits", 0);
                f.plan.batches.push_back(std::move(b));
            }
            s.firings.push_back(std::move(f));
        }
        return s;
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("malformed schedule: ") + e.what());
    }
}

}  // namespace qcal
