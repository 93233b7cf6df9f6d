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
#include <limits>

#include "qcal/error.hpp"
#include "qcal/scheduler.hpp"

namespace qcal {

namespace {

constexpr double kRelTol = 1e-12;

int group_of(double t, double t_cali) { return static_cast<int>(std::floor(t / t_cali * (1.0 + kRelTol))); }

}  // namespace

nlohmann::json TargetSpec::to_json() const {
    return {{"ler_tar", ler_tar}, {"d", d}, {"alpha", alpha}, {"p_th", p_th}, {"p_tar", p_tar}, {"lambda", lambda}};
}

TargetSpec TargetSpec::from_json(const nlohmann::json &j) {
    TargetSpec t;
    t.ler_tar = j.at("ler_tar").get<double>();
    t.d = j.at("d").get<int>();
    t.alpha = j.at("alpha").get<double>();
    t.p_th = j.at("p_th").get<double>();
    t.p_tar = j.at("p_tar").get<double>();
    t.lambda = j.at("lambda").get<double>();
    return t;
}

TargetSpec determine_p_tar(double ler_tar, int d, double alpha, double p_th, double p0_max) {
    if (!(ler_tar > 0) || !(ler_tar < 1)) {
        throw ValidationError("ler_tar must lie in (0, 1)");
    }
    if (d < 3 || d % 2 == 0) {
        throw ValidationError("distance must be odd and at least 3");
    }
    if (!(alpha > 0) || !(p_th > 0)) {
        throw ValidationError("alpha and p_th must be positive");
    }
    TargetSpec t{ler_tar, d, alpha, p_th, 0, 0};
    t.p_tar = p_th * std::pow(ler_tar / alpha, 2.0 / (d + 1));
    t.lambda = 2.0 * std::log(alpha / ler_tar);
    if (!(t.p_tar < p_th)) {
        throw InfeasibleError("target rate reaches the threshold; lower ler_tar");
    }
    if (!(t.p_tar > p0_max)) {
        throw InfeasibleError("p_tar " + std::to_string(t.p_tar) + " is not above the calibrated rate " +
                              std::to_string(p0_max) + "; use a larger distance");
    }
    return t;
}

int CalibrationGroups::k_of(int gate) const {
    for (const auto &[k, ids] : groups) {
        if (std::binary_search(ids.begin(), ids.end(), gate)) {
            return k;
        }
    }
    return 0;
}

size_t CalibrationGroups::num_gates() const {
    size_t n = 0;
    for (const auto &[k, ids] : groups) {
        n += ids.size();
    }
    return n;
}

nlohmann::json CalibrationGroups::to_json() const {
    nlohmann::json g = nlohmann::json::object();
    for (const auto &[k, ids] : groups) {
        g[std::to_string(k)] = ids;
    }
    return {{"t_cali_h", t_cali_h}, {"groups", g}};
}

CalibrationGroups CalibrationGroups::from_json(const nlohmann::json &j) {
    CalibrationGroups c;
    c.t_cali_h = j.at("t_cali_h").get<double>();
    for (const auto &[k, ids] : j.at("groups").items()) {
        c.groups[std::stoi(k)] = ids.get<std::vector<int>>();
    }
    return c;
}

double frequency(const CalibrationGroups &g) {
    if (g.groups.empty()) {
        return 0.0;
    }
    double s = 0;
    for (const auto &[k, ids] : g.groups) {
        s += static_cast<double>(ids.size()) / k;
    }
    return s / g.t_cali_h;
}

double frequency_at(const std::vector<double> &t_drift, double t_cali) {
    double s = 0;
    for (double t : t_drift) {
        int k = group_of(t, t_cali);
        if (k < 1) {
            return std::numeric_limits<double>::infinity();
        }
        s += 1.0 / k;
    }
    return s / t_cali;
}

CalibrationGroups group_assignment(const std::vector<double> &t_drift) {
    if (t_drift.empty()) {
        throw ValidationError("group assignment needs at least one gate");
    }
    for (double t : t_drift) {
        if (!(t > 0) || !std::isfinite(t)) {
            throw ValidationError("drift times must be positive and finite");
        }
    }
    const double t_min = *std::min_element(t_drift.begin(), t_drift.end());
    double best_t = 0;
    double best_f = std::numeric_limits<double>::infinity();
    // Every breakpoint t/k in [t_min / 2, t_min].
    for (double t : t_drift) {
        for (double k = std::max(1.0, std::ceil(t / t_min * (1.0 - kRelTol)));; k += 1.0) {
            double cand = t / k;
            if (cand > t_min) {
                continue;
            }
            if (cand < 0.5 * t_min * (1.0 - kRelTol)) {
                break;
            }
            double f = frequency_at(t_drift, cand);
            bool tie = std::abs(f - best_f) <= kRelTol * best_f;
            if ((!tie && f < best_f) || (tie && cand > best_t)) {
                best_f = f;
                best_t = cand;
            }
        }
    }
    // Pin k * T <= t for every gate despite rounding.
    double T = best_t;
    for (bool ok = false; !ok;) {
        ok = true;
        for (double t : t_drift) {
            int k = group_of(t, T);
            if (k * T > t) {
                T = std::nextafter(T, 0.0);
                ok = false;
                break;
            }
        }
    }
    CalibrationGroups g;
    g.t_cali_h = T;
    for (size_t i = 0; i < t_drift.size(); ++i) {
        g.groups[group_of(t_drift[i], T)].push_back(static_cast<int>(i));
    }
    return g;
}

CalibrationGroups group_assignment(const DeviceModel &device, const std::vector<int> &gates, double p_tar) {
    std::vector<double> t;
    t.reserve(gates.size());
    for (int id : gates) {
        const auto &g = device.gate(id);
        if (!(g.p0 < p_tar)) {
            throw InfeasibleError("gate " + std::to_string(id) + " starts at p0 = " + std::to_string(g.p0) +
                                  ", not below p_tar = " + std::to_string(p_tar));
        }
        t.push_back(drift_time_to_target(g, p_tar));
    }
    CalibrationGroups local = group_assignment(t);
    CalibrationGroups out;
    out.t_cali_h = local.t_cali_h;
    for (const auto &[k, pos] : local.groups) {
        auto &ids = out.groups[k];
        for (int p : pos) {
            ids.push_back(gates[static_cast<size_t>(p)]);
        }
        std::sort(ids.begin(), ids.end());
    }
    return out;
}

}  // namespace qcal
