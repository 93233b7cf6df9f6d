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
#include <climits>
#include <cmath>
#include <numeric>
#include <set>

#include "qcal/error.hpp"
#include "qcal/scheduler.hpp"

namespace qcal {

namespace {

std::vector<QubitId> active_targets(const Cluster &c, const SurfaceCode &code) {
    std::vector<QubitId> t;
    for (QubitId q : c.footprint) {
        if (code.is_active(q)) {
            t.push_back(q);
        }
    }
    return t;
}

std::string describe(const Cluster &c) {
    std::string s = "{";
    for (size_t i = 0; i < c.gates.size(); ++i) {
        s += (i ? "," : "") + std::to_string(c.gates[i]);
    }
    return s + "}";
}

// Tries to add one cluster's isolation on top of `cur`; returns the measured distance loss or -1.
int try_isolate(Deformer &cur, const Cluster &c, int d0, int bound, std::vector<DeformInstruction> &out) {
    auto targets = active_targets(c, cur.code());
    if (targets.empty()) {
        return std::max(0, d0 - cur.distance());
    }
    try {
        Deformer scratch = cur;
        auto seq = isolate_in_place(scratch, targets);
        int dd = d0 - scratch.distance();
        if (dd > bound) {
            return -1;
        }
        cur = std::move(scratch);
        out.insert(out.end(), seq.begin(), seq.end());
        return dd;
    } catch (const std::exception &) {
        return -1;
    }
}

void finish(FiringPlan &plan, const std::vector<Cluster> &clusters, double window_h) {
    plan.wall_h = 0;
    for (auto &b : plan.batches) {
        b.duration_h = 0;
        for (int ci : b.clusters) {
            const auto &c = clusters[static_cast<size_t>(ci)];
            b.duration_h = std::max(b.duration_h, c.duration_h);
            b.gates.insert(b.gates.end(), c.gates.begin(), c.gates.end());
        }
        plan.wall_h += b.duration_h;
    }
    if (plan.wall_h > window_h * (1.0 + 1e-12)) {
        throw InfeasibleError("firing needs " + std::to_string(plan.wall_h) + " h but the interval is " +
                              std::to_string(window_h) + " h");
    }
}

}  // namespace

int FiringPlan::max_delta_d() const {
    int m = 0;
    for (const auto &b : batches) {
        m = std::max(m, b.delta_d);
    }
    return m;
}

std::vector<Cluster> cluster_dependencies(const std::vector<int> &gates, const DeviceModel &device) {
    std::vector<int> sorted = gates;
    std::sort(sorted.begin(), sorted.end());
    std::map<QubitId, int> one_q;
    for (int id : sorted) {
        const auto &g = device.gate(id);
        if (g.kind == GateKind::OneQ) {
            one_q[g.qubits[0]] = id;
        }
    }
    std::vector<std::vector<int>> parts;
    std::set<int> claimed;
    for (int id : sorted) {
        const auto &g = device.gate(id);
        if (g.kind == GateKind::OneQ) {
            continue;
        }
        std::vector<int> part;
        for (QubitId q : g.qubits) {
            auto it = one_q.find(q);
            if (it != one_q.end() && claimed.insert(it->second).second) {
                part.push_back(it->second);
            }
        }
        std::sort(part.begin(), part.end());
        part.push_back(id);
        parts.push_back(std::move(part));
    }
    for (const auto &[q, id] : one_q) {
        if (!claimed.count(id)) {
            parts.push_back({id});
        }
    }
    std::sort(parts.begin(), parts.end(), [](const auto &a, const auto &b) {
        return *std::min_element(a.begin(), a.end()) < *std::min_element(b.begin(), b.end());
    });
    std::map<int, int> home;
    for (size_t i = 0; i < parts.size(); ++i) {
        for (int id : parts[i]) {
            home[id] = static_cast<int>(i);
        }
    }
    std::vector<Cluster> out(parts.size());
    for (size_t i = 0; i < parts.size(); ++i) {
        Cluster &c = out[i];
        c.gates = parts[i];
        for (int id : c.gates) {
            const auto &g = device.gate(id);
            auto f = g.footprint();
            c.footprint.insert(c.footprint.end(), f.begin(), f.end());
            c.duration_h += g.t_cali_h;
            if (g.kind == GateKind::OneQ) {
                continue;
            }
            for (QubitId q : g.qubits) {
                auto it = one_q.find(q);
                if (it != one_q.end() && home[it->second] != static_cast<int>(i)) {
                    c.after.push_back(home[it->second]);
                }
            }
        }
        std::sort(c.footprint.begin(), c.footprint.end());
        c.footprint.erase(std::unique(c.footprint.begin(), c.footprint.end()), c.footprint.end());
        std::sort(c.after.begin(), c.after.end());
        c.after.erase(std::unique(c.after.begin(), c.after.end()), c.after.end());
    }
    return out;
}

ClusterConflicts cluster_conflicts(const std::vector<Cluster> &clusters, const CrosstalkConflict &cc) {
    const size_t n = clusters.size();
    ClusterConflicts m(n, std::vector<bool>(n, false));
    for (size_t a = 0; a < n; ++a) {
        for (size_t b = a + 1; b < n; ++b) {
            bool hit = false;
            for (int x : clusters[a].gates) {
                for (int y : clusters[b].gates) {
                    hit = hit || cc.conflict(x, y);
                }
            }
            m[a][b] = m[b][a] = hit;
        }
    }
    return m;
}

FiringPlan greedy_batches(const std::vector<Cluster> &clusters, const ClusterConflicts &conf, int delta_d_max,
                          const SurfaceCode &code, double window_h) {
    FiringPlan plan;
    plan.delta_d_max = delta_d_max;
    std::vector<int> order(clusters.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return clusters[static_cast<size_t>(a)].footprint.size() > clusters[static_cast<size_t>(b)].footprint.size();
    });
    const Deformer base(code);
    const int d0 = base.distance();
    std::vector<bool> done(clusters.size(), false);
    while (!order.empty()) {
        Deformer cur = base;
        Batch batch;
        std::vector<int> rest;
        for (int ci : order) {
            const auto &after = clusters[static_cast<size_t>(ci)].after;
            bool clash = !std::all_of(after.begin(), after.end(), [&](int o) { return done[static_cast<size_t>(o)]; }) ||
                         std::any_of(batch.clusters.begin(), batch.clusters.end(),
                                     [&](int o) { return conf[static_cast<size_t>(ci)][static_cast<size_t>(o)]; });
            int dd = clash ? -1 : try_isolate(cur, clusters[static_cast<size_t>(ci)], d0, delta_d_max, batch.instructions);
            if (dd < 0) {
                rest.push_back(ci);
            } else {
                batch.clusters.push_back(ci);
                batch.delta_d = std::max(batch.delta_d, dd);
            }
        }
        if (batch.clusters.empty()) {
            throw InfeasibleError("cluster " + describe(clusters[static_cast<size_t>(order.front())]) +
                                  " cannot be isolated with distance loss <= " + std::to_string(delta_d_max));
        }
        for (int ci : batch.clusters) {
            done[static_cast<size_t>(ci)] = true;
        }
        plan.batches.push_back(std::move(batch));
        order = std::move(rest);
    }
    finish(plan, clusters, window_h);
    return plan;
}

FiringPlan sequential_batches(const std::vector<Cluster> &clusters, const SurfaceCode &code, double window_h) {
    FiringPlan plan;
    const Deformer base(code);
    const int d0 = base.distance();
    std::vector<bool> done(clusters.size(), false);
    for (size_t step = 0; step < clusters.size(); ++step) {
        size_t ci = 0;
        while (done[ci] || !std::all_of(clusters[ci].after.begin(), clusters[ci].after.end(),
                                        [&](int o) { return done[static_cast<size_t>(o)]; })) {
            ++ci;
        }
        done[ci] = true;
        Deformer cur = base;
        Batch b;
        b.clusters = {static_cast<int>(ci)};
        b.delta_d = try_isolate(cur, clusters[ci], d0, INT_MAX, b.instructions);
        if (b.delta_d < 0) {
            throw InfeasibleError("cluster " + describe(clusters[ci]) + " cannot be isolated");
        }
        plan.batches.push_back(std::move(b));
    }
    plan.delta_d_max = plan.max_delta_d();
    finish(plan, clusters, window_h);
    return plan;
}

FiringPlan optimize_delta_d(const std::vector<Cluster> &clusters, const ClusterConflicts &conf, const SurfaceCode &code,
                            double window_h, std::vector<int> candidates, const PlanFilter &accept) {
    if (candidates.empty()) {
        for (int c = 1; c <= (code.lattice().distance() + 1) / 2; ++c) {
            candidates.push_back(c);
        }
    }
    std::vector<FiringPlan> plans;
    std::string last_error = "no candidate";
    auto attempt = [&](auto make) {
        try {
            plans.push_back(make());
            return true;
        } catch (const InfeasibleError &e) {
            last_error = e.what();
            return false;
        }
    };
    // Any bound at or above the unbounded plan's loss reproduces that plan.
    int reach = INT_MAX;
    if (attempt([&] {
            FiringPlan p = greedy_batches(clusters, conf, INT_MAX, code, window_h);
            p.delta_d_max = p.max_delta_d();
            return p;
        })) {
        reach = plans.back().max_delta_d();
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (int c : candidates) {
        if (c < reach) {
            attempt([&] { return greedy_batches(clusters, conf, c, code, window_h); });
        }
    }
    attempt([&] { return sequential_batches(clusters, code, window_h); });
    if (plans.empty()) {
        throw InfeasibleError("no feasible batching: " + last_error);
    }
    std::vector<char> ok(plans.size(), 1);
    if (accept) {
        for (size_t i = 0; i < plans.size(); ++i) {
            ok[i] = accept(plans[i]);
        }
    }
    size_t best = 0;
    for (size_t i = 1; i < plans.size(); ++i) {
        const auto &a = plans[i];
        const auto &b = plans[best];
        if (ok[i] != ok[best]) {
            if (ok[i]) {
                best = i;
            }
            continue;
        }
        double ca = a.cost(), cb = b.cost();
        bool tie = std::abs(ca - cb) <= 1e-12 * std::max(ca, cb);
        if (!tie ? ca < cb
                 : (a.max_delta_d() != b.max_delta_d() ? a.max_delta_d() < b.max_delta_d() : a.wall_h < b.wall_h)) {
            best = i;
        }
    }
    return plans[best];
}

}  // namespace qcal
