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

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "qcal/code.hpp"
#include "qcal/deform.hpp"
#include "qcal/device.hpp"

namespace qcal {

struct TargetSpec {
    double ler_tar = 0;
    int d = 0;
    double alpha = 0.03;
    double p_th = 0.01;
    double p_tar = 0;
    /// Right-hand side of ln(p_th / p_tar) * (d + 1) >= lambda.
    double lambda = 0;

    nlohmann::json to_json() const;
    static TargetSpec from_json(const nlohmann::json &j);
};

/// Largest physical rate meeting the per-cycle logical target at distance d.
TargetSpec determine_p_tar(double ler_tar, int d, double alpha = 0.03, double p_th = 0.01, double p0_max = 0.0);

struct CalibrationGroups {
    double t_cali_h = 0;
    /// k -> sorted gate ids.
    std::map<int, std::vector<int>> groups;

    int k_of(int gate) const;
    size_t num_gates() const;
    nlohmann::json to_json() const;
    static CalibrationGroups from_json(const nlohmann::json &j);
};

/// Calibrations per hour, (1/T) * sum_k n_k / k.
double frequency(const CalibrationGroups &g);
/// Calibrations per hour when every gate uses the largest multiple of t_cali not above its drift time.
double frequency_at(const std::vector<double> &t_drift, double t_cali);

/// Group assignment over drift-to-target times; gate ids are vector positions. The base interval
/// minimizes frequency over all t_g / k in [t_min / 2, t_min], ties going to the larger interval.
CalibrationGroups group_assignment(const std::vector<double> &t_drift);
/// Same over the listed device gates. Throws InfeasibleError naming a gate with p0 >= p_tar.
CalibrationGroups group_assignment(const DeviceModel &device, const std::vector<int> &gates, double p_tar);

struct Cluster {
    /// 1Q gates first, then the rest, each part by id.
    std::vector<int> gates;
    /// Union of gate footprints.
    std::vector<QubitId> footprint;
    /// Members run back to back.
    double duration_h = 0;
    /// Clusters holding 1Q prerequisites of this one.
    std::vector<int> after;
};

/// Each multi-qubit or measurement gate with its not yet claimed 1Q prerequisites, 1Q gates left over
/// as singletons. Ordered by smallest gate id.
std::vector<Cluster> cluster_dependencies(const std::vector<int> &gates, const DeviceModel &device);

using ClusterConflicts = std::vector<std::vector<bool>>;
/// Two clusters conflict when any member pair does.
ClusterConflicts cluster_conflicts(const std::vector<Cluster> &clusters, const CrosstalkConflict &cc);

struct Batch {
    std::vector<int> clusters;
    std::vector<int> gates;
    std::vector<DeformInstruction> instructions;
    int delta_d = 0;
    double duration_h = 0;
    /// Qubits added to restore the distance; -1 when the device has no room.
    int enlarge_qubits = 0;
};

struct FiringPlan {
    std::vector<Batch> batches;
    int delta_d_max = 0;
    double wall_h = 0;
    int max_delta_d() const;
    /// max batch delta_d times wall time.
    double cost() const { return max_delta_d() * wall_h; }
};

/// Greedy batching under conflicts and a distance-loss bound. Throws InfeasibleError when a cluster
/// cannot be isolated within the bound or the plan exceeds window_h.
FiringPlan greedy_batches(const std::vector<Cluster> &clusters, const ClusterConflicts &conf, int delta_d_max,
                          const SurfaceCode &code, double window_h);

/// One cluster per batch.
FiringPlan sequential_batches(const std::vector<Cluster> &clusters, const SurfaceCode &code, double window_h);

/// May annotate a plan; false ranks it behind every accepted plan.
using PlanFilter = std::function<bool(FiringPlan &)>;

/// Lowest-cost plan over the candidate bounds plus the sequential and unbounded plans.
/// Empty candidates mean 1..ceil(d/2). Throws InfeasibleError when nothing fits.
FiringPlan optimize_delta_d(const std::vector<Cluster> &clusters, const ClusterConflicts &conf, const SurfaceCode &code,
                            double window_h, std::vector<int> candidates = {}, const PlanFilter &accept = {});

struct SchedulerConfig {
    double ler_tar = 1e-9;
    /// Program distance behind ler_tar; 0 means the lattice distance.
    int target_d = 0;
    double alpha = 0.03;
    double p_th = 0.01;
    double horizon_h = 720.0;
    std::vector<int> delta_d_candidates;
    bool enlarge = true;

    nlohmann::json to_json() const;
    static SchedulerConfig from_json(const nlohmann::json &j);
};

struct Firing {
    int m = 0;
    double t_h = 0;
    std::vector<int> ks;
    FiringPlan plan;
};

struct Schedule {
    TargetSpec target;
    CalibrationGroups groups;
    double horizon_h = 0;
    std::vector<Firing> firings;

    nlohmann::json to_json() const;
    static Schedule from_json(const nlohmann::json &j);
};

/// Gates whose qubits are all active in the code.
std::vector<int> code_gates(const DeviceModel &device, const SurfaceCode &code);

Schedule build_schedule(const DeviceModel &device, const SurfaceCode &code, const SchedulerConfig &cfg);

/// Violated invariants, empty when the schedule is consistent with the device.
std::vector<std::string> validate_schedule(const Schedule &s, const DeviceModel &device, const SurfaceCode &code);

}  // namespace qcal
