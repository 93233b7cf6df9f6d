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
#include <set>

#include "qcal/scheduler.hpp"

namespace qcal {

std::vector<std::string> validate_schedule(const Schedule &s, const DeviceModel &device, const SurfaceCode &code) {
    std::vector<std::string> bad;
    auto fail = [&](const std::string &msg) { bad.push_back(msg); };
    const double T = s.groups.t_cali_h;
    const auto gates = code_gates(device, code);
    if (!(T > 0)) {
        fail("t_cali_h must be positive");
        return bad;
    }
    if (s.groups.num_gates() != gates.size()) {
        fail("groups hold " + std::to_string(s.groups.num_gates()) + " gates, the code uses " +
             std::to_string(gates.size()));
    }
    for (int id : gates) {
        int k = s.groups.k_of(id);
        if (k < 1) {
            fail("gate " + std::to_string(id) + " is in no group");
            continue;
        }
        const auto &g = device.gate(id);
        if (!(g.p0 < s.target.p_tar)) {
            fail("gate " + std::to_string(id) + " starts above p_tar");
            continue;
        }
        double t = drift_time_to_target(g, s.target.p_tar);
        if (k * T > t * (1 + 1e-12) || !(t < (k + 1) * T)) {
            fail("gate " + std::to_string(id) + " violates k*T <= t_drift < (k+1)*T");
        }
    }
    const CrosstalkConflict cc = conflicts(device);
    const Deformer base(code);
    for (const auto &f : s.firings) {
        const std::string at = "firing " + std::to_string(f.m) + ": ";
        if (std::abs(f.t_h - f.m * T) > 1e-9 * f.t_h) {
            fail(at + "time is not m * t_cali_h");
        }
        std::multiset<int> seen;
        double wall = 0;
        for (const auto &b : f.plan.batches) {
            seen.insert(b.gates.begin(), b.gates.end());
            auto parts = cluster_dependencies(b.gates, device);
            double dur = 0;
            for (size_t i = 0; i < parts.size(); ++i) {
                dur = std::max(dur, parts[i].duration_h);
                for (size_t j = i + 1; j < parts.size(); ++j) {
                    for (int x : parts[i].gates) {
                        for (int y : parts[j].gates) {
                            if (cc.conflict(x, y)) {
                                fail(at + "gates " + std::to_string(x) + " and " + std::to_string(y) +
                                     " conflict in one batch");
                            }
                        }
                    }
                }
            }
            if (std::abs(dur - b.duration_h) > 1e-9) {
                fail(at + "batch duration mismatch");
            }
            wall += b.duration_h;
            if (b.delta_d > f.plan.delta_d_max) {
                fail(at + "batch exceeds its distance-loss bound");
            }
            Deformer d = base;
            try {
                d.apply_all(b.instructions);
                if (base.distance() - d.distance() != b.delta_d) {
                    fail(at + "recorded distance loss does not match the replayed isolation");
                }
            } catch (const std::exception &e) {
                fail(at + "isolation replay failed: " + e.what());
            }
        }
        if (wall > T * (1 + 1e-12)) {
            fail(at + "batches overflow the interval");
        }
        std::multiset<int> due;
        for (const auto &[k, ids] : s.groups.groups) {
            if (f.m % k == 0) {
                due.insert(ids.begin(), ids.end());
            }
        }
        if (seen != due) {
            fail(at + "calibrated gates differ from the due groups");
        }
    }
    return bad;
}

}  // namespace qcal
