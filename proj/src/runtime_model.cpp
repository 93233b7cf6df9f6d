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
#include <cstdio>
#include <map>

#include "qcal/error.hpp"
#include "qcal/runtime.hpp"

namespace qcal {

double ler_analytic(double d_eff, double p_avg, double alpha, double p_th) {
    if (!(d_eff >= 1) || !(p_avg > 0) || !(alpha > 0) || !(p_th > 0)) {
        throw ValidationError("ler_analytic needs d_eff >= 1 and positive rates");
    }
    return std::min(1.0, alpha * std::pow(p_avg / p_th, (d_eff + 1.0) / 2.0));
}

std::string_view to_string(Policy p) {
    switch (p) {
    case Policy::NoChange:
        return "no-change";
    case Policy::Lsc:
        return "lsc";
    case Policy::CaliScalpel:
        return "caliscalpel";
    }
    return "?";
}

Policy policy_from_string(std::string_view s) {
    for (Policy p : {Policy::NoChange, Policy::Lsc, Policy::CaliScalpel}) {
        if (to_string(p) == s) {
            return p;
        }
    }
    throw ValidationError("unknown policy: " + std::string(s));
}

double LogicalProgram::duration_h(double cycle_us) const {
    const double cycles = cycles_per_op > 0 ? cycles_per_op : d;
    return (n_cx + n_t) * cycles * cycle_us / kCyclesPerHour;
}

void LogicalProgram::validate() const {
    if (n_logical < 1) {
        throw ValidationError("program needs at least one logical qubit");
    }
    if (!(n_cx >= 0) || !(n_t >= 0) || !(n_cx + n_t > 0)) {
        throw ValidationError("program needs a positive operation count");
    }
    if (d < 3 || d % 2 == 0) {
        throw ValidationError("program distance must be odd and at least 3");
    }
    if (cycles_per_op < 0) {
        throw ValidationError("cycles_per_op must be non-negative");
    }
}

nlohmann::json LogicalProgram::to_json() const {
    return {{"name", name}, {"n_logical", n_logical}, {"n_cx", n_cx},
            {"n_t", n_t},   {"d", d},                 {"cycles_per_op", cycles_per_op}};
}

LogicalProgram LogicalProgram::from_json(const nlohmann::json &j) {
    try {
        LogicalProgram p;
        p.name = j.value("name", p.name);
        p.n_logical = j.at("n_logical").get<int>();
        p.n_cx = j.at("n_cx").get<double>();
        p.n_t = j.value("n_t", p.n_t);
        p.d = j.at("d").get<int>();
        p.cycles_per_op = j.value("cycles_per_op", p.cycles_per_op);
        p.validate();
        return p;
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("malformed program: ") + e.what());
    }
}

nlohmann::json RuntimeOptions::to_json() const {
    return {{"alpha", alpha},
            {"p_th", p_th},
            {"cycle_us", cycle_us},
            {"sample_dt_h", sample_dt_h},
            {"enlarge", enlarge},
            {"lsc_spare_fraction", lsc_spare_fraction},
            {"lsc_routing_fraction", lsc_routing_fraction},
            {"lsc_swap_h", lsc_swap_h},
            {"lsc_trigger", lsc_trigger == LscTrigger::WorstGate ? "worst_gate" : "patch_average"}};
}

RuntimeOptions RuntimeOptions::from_json(const nlohmann::json &j) {
    try {
        RuntimeOptions o;
        o.alpha = j.value("alpha", o.alpha);
        o.p_th = j.value("p_th", o.p_th);
        o.cycle_us = j.value("cycle_us", o.cycle_us);
        o.sample_dt_h = j.value("sample_dt_h", o.sample_dt_h);
        o.enlarge = j.value("enlarge", o.enlarge);
        o.lsc_spare_fraction = j.value("lsc_spare_fraction", o.lsc_spare_fraction);
        o.lsc_routing_fraction = j.value("lsc_routing_fraction", o.lsc_routing_fraction);
        o.lsc_swap_h = j.value("lsc_swap_h", o.lsc_swap_h);
        const std::string trig = j.value("lsc_trigger", std::string("patch_average"));
        if (trig == "worst_gate") {
            o.lsc_trigger = LscTrigger::WorstGate;
        } else if (trig != "patch_average") {
            throw ValidationError("lsc_trigger must be worst_gate or patch_average");
        }
        if (!(o.alpha > 0) || !(o.p_th > 0) || !(o.cycle_us > 0) || !(o.sample_dt_h > 0) ||
            !(o.lsc_spare_fraction >= 0) || !(o.lsc_routing_fraction >= 0) || !(o.lsc_swap_h >= 0)) {
            throw ValidationError("runtime options out of range");
        }
        return o;
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("malformed runtime options: ") + e.what());
    }
}

nlohmann::json RetryRiskReport::to_json() const {
    return {{"policy", std::string(to_string(policy))},
            {"program", program},
            {"retry_risk", retry_risk},
            {"peak_ler", peak_ler},
            {"nominal_h", nominal_h},
            {"exec_time_h", exec_time_h},
            {"qubits", qubits},
            {"calibrations", calibrations},
            {"peak_gate_p_at_firing", peak_gate_p_at_firing}};
}

std::string RunResult::csv() const {
    std::string out = "t_h,p_avg,d_eff,ler,qubits,event\n";
    char buf[160];
    for (const auto &p : timeline) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%.17g,%lld,", p.t_h, p.p_avg, p.d_eff, p.ler, p.qubits);
        out += buf;
        out += p.event;
        out += '\n';
    }
    return out;
}

long long patch_qubits(Topology topology, int d) {
    static std::map<std::pair<int, int>, long long> cache;
    const auto key = std::make_pair(static_cast<int>(topology), d);
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, static_cast<long long>(Lattice::build(topology, d).num_qubits())).first;
    }
    return it->second;
}

nlohmann::json AdaptiveReport::to_json() const {
    return {{"uniform_h", uniform_h},
            {"adaptive_t_cali_h", adaptive_t_cali_h},
            {"uniform_calibrations", uniform_calibrations},
            {"adaptive_calibrations", adaptive_calibrations},
            {"ratio", ratio}};
}

AdaptiveReport adaptive_vs_uniform(const std::vector<double> &t_drift, double horizon_h) {
    if (!(horizon_h > 0)) {
        throw ValidationError("horizon must be positive");
    }
    const CalibrationGroups g = group_assignment(t_drift);
    AdaptiveReport r;
    r.uniform_h = *std::min_element(t_drift.begin(), t_drift.end());
    r.adaptive_t_cali_h = g.t_cali_h;
    const auto firings = [&](double period) {
        return static_cast<long long>(std::floor(horizon_h / period * (1.0 + 1e-12)));
    };
    r.uniform_calibrations = static_cast<long long>(t_drift.size()) * firings(r.uniform_h);
    for (const auto &[k, ids] : g.groups) {
        r.adaptive_calibrations += static_cast<long long>(ids.size()) * firings(k * g.t_cali_h);
    }
    r.ratio = r.adaptive_calibrations > 0
                  ? static_cast<double>(r.uniform_calibrations) / static_cast<double>(r.adaptive_calibrations)
                  : 0.0;
    return r;
}

}  // namespace qcal
