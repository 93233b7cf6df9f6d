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

#include <cstdint>
#include <memory>
#include <random>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qcal/lattice.hpp"

namespace qcal {

enum class GateKind { OneQ, TwoQ, Meas, Reset };
std::string_view to_string(GateKind k);
GateKind gate_kind_from_string(std::string_view s);

struct GateProfile {
    int id = 0;
    GateKind kind = GateKind::OneQ;
    std::vector<QubitId> qubits;
    double p0 = 1e-3;
    double t_drift_h = 14.08;
    double t_cali_h = 0.1;
    /// Qubits disturbed by calibrating this gate, own qubits excluded.
    std::vector<QubitId> nbr;

    /// qubits ∪ nbr, sorted.
    std::vector<QubitId> footprint() const;
    bool operator==(const GateProfile &) const = default;
};

struct DeviceParams {
    double mean_t_drift_h = 14.08;
    double sigma = 0.5;
    double p0 = 1e-3;
    double t_cali_1q_h = 0.1;
    double t_cali_2q_h = 0.3;
    double t_cali_meas_h = 0.1;
    /// Relative half-width of the uniform jitter on calibration times.
    double t_cali_jitter = 0.2;
    int nbr_radius = 1;

    void validate() const;
    nlohmann::json to_json() const;
    static DeviceParams from_json(const nlohmann::json &j);
    bool operator==(const DeviceParams &) const = default;
};

/// Mean drift constant of the default and the future-hardware model.
inline constexpr double kMeanDriftHours = 14.08;
inline constexpr double kFutureMeanDriftHours = 28.016;

/// Platform-independent draws on top of mt19937_64.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal via Box-Muller.
    double normal();
    uint64_t next() { return eng_(); }

  private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0;
};

class DeviceModel {
  public:
    DeviceModel(std::shared_ptr<const Lattice> lattice, DeviceParams params, uint64_t seed, std::vector<GateProfile> gates);

    const Lattice &lattice() const { return *lattice_; }
    const std::shared_ptr<const Lattice> &lattice_ptr() const { return lattice_; }
    const DeviceParams &params() const { return params_; }
    uint64_t seed() const { return seed_; }
    const std::vector<GateProfile> &gates() const { return gates_; }
    const GateProfile &gate(int id) const { return gates_.at(static_cast<size_t>(id)); }
    double max_p0() const;

    /// Gates on qubits that are all in `qubits`.
    std::vector<int> gates_within(const std::vector<bool> &qubits) const;

    nlohmann::json to_json() const;
    /// Rebuilds the lattice from the stored topology, distance and margin.
    static DeviceModel from_json(const nlohmann::json &j);

    bool operator==(const DeviceModel &o) const { return seed_ == o.seed_ && params_ == o.params_ && gates_ == o.gates_; }

  private:
    std::shared_ptr<const Lattice> lattice_;
    DeviceParams params_;
    uint64_t seed_;
    std::vector<GateProfile> gates_;
};

/// One 1Q gate per qubit, one 2Q gate per coupling and one measurement per ancilla.
DeviceModel synthesize_device(std::shared_ptr<const Lattice> lattice, const DeviceParams &params, uint64_t seed);

/// Log-normal location parameter giving the requested mean.
double lognormal_mu(double mean, double sigma);

double drift_error_rate(const GateProfile &g, double t_hours);
double drift_time_to_target(const GateProfile &g, double p_tar);

/// Symmetric conflict relation: overlapping footprints, no self loops.
class CrosstalkConflict {
  public:
    explicit CrosstalkConflict(const DeviceModel &device);
    bool conflict(int a, int b) const;
    const std::vector<int> &neighbours(int gate) const { return adj_.at(static_cast<size_t>(gate)); }
    size_t size() const { return adj_.size(); }

  private:
    std::vector<std::vector<int>> adj_;
};

CrosstalkConflict conflicts(const DeviceModel &device);

}  // namespace qcal
