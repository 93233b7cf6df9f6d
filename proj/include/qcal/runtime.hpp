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

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qcal/code.hpp"
#include "qcal/device.hpp"
#include "qcal/scheduler.hpp"

namespace qcal {

inline constexpr double kCyclesPerHour = 3.6e9;

/// alpha * (p / p_th)^((d_eff + 1) / 2), capped at 1.
double ler_analytic(double d_eff, double p_avg, double alpha = 0.03, double p_th = 0.01);

enum class Policy { NoChange, Lsc, CaliScalpel };
std::string_view to_string(Policy p);
Policy policy_from_string(std::string_view s);

enum class LscTrigger { WorstGate, PatchAverage };

struct LogicalProgram {
    std::string name;
    int n_logical = 1;
    double n_cx = 0;
    double n_t = 0;
    int d = 25;
    /// QEC cycles per logical operation; 0 means d.
    double cycles_per_op = 0;

    double duration_h(double cycle_us = 1.0) const;
    void validate() const;
    nlohmann::json to_json() const;
    static LogicalProgram from_json(const nlohmann::json &j);
};

struct RuntimeOptions {
    double alpha = 0.03;
    double p_th = 0.01;
    double cycle_us = 1.0;
    double sample_dt_h = 0.05;
    bool enlarge = true;
    double lsc_spare_fraction = 1.0;
    double lsc_routing_fraction = 0.1;
    double lsc_swap_h = 0.01;
    LscTrigger lsc_trigger = LscTrigger::PatchAverage;

    nlohmann::json to_json() const;
    static RuntimeOptions from_json(const nlohmann::json &j);
};

struct TimelinePoint {
    double t_h = 0;
    double p_avg = 0;
    int d_eff = 0;
    double ler = 0;
    long long qubits = 0;
    std::string event;
};

struct RetryRiskReport {
    Policy policy = Policy::CaliScalpel;
    std::string program;
    double retry_risk = 0;
    double peak_ler = 0;
    double nominal_h = 0;
    double exec_time_h = 0;
    long long qubits = 0;
    long long calibrations = 0;
    /// Largest single-gate rate seen at a calibration firing, before its batches run.
    double peak_gate_p_at_firing = 0;

    nlohmann::json to_json() const;
};

struct RunResult {
    std::vector<TimelinePoint> timeline;
    RetryRiskReport report;
    /// t_h,p_avg,d_eff,ler,qubits,event
    std::string csv() const;
};

/// Physical qubits of one patch at distance d.
long long patch_qubits(Topology topology, int d);

/// Runs the program against the device under a policy. The schedule drives CaliScalpel and
/// supplies p_tar to every policy; its horizon must cover the program.
RunResult simulate(const LogicalProgram &program, const DeviceModel &device, const Schedule &schedule,
                   const SurfaceCode &code, Policy policy, const RuntimeOptions &opts = {});

struct AdaptiveReport {
    double uniform_h = 0;
    double adaptive_t_cali_h = 0;
    long long uniform_calibrations = 0;
    long long adaptive_calibrations = 0;
    double ratio = 0;

    nlohmann::json to_json() const;
};

/// Calibration counts over a horizon: every gate at the shortest drift time versus grouped.
AdaptiveReport adaptive_vs_uniform(const std::vector<double> &t_drift, double horizon_h);

}  // namespace qcal
