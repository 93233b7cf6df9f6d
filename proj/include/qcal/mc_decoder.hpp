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
#include <string>
#include <vector>

#include "qcal/code.hpp"
#include "qcal/pauli.hpp"

namespace qcal {

struct NoiseModel {
    /// Independent X and Z flip probability per active data qubit.
    double p = 0;
    void validate() const;
};

struct SyndromeSample {
    PauliOp error;
    /// Violated positions in stabilizers_of(X) and stabilizers_of(Z).
    std::vector<int> x_defects;
    std::vector<int> z_defects;
};

inline constexpr int kMaxDefects = 12;

/// Exact minimum-weight matching decoder on the check graphs of one code.
class Decoder {
  public:
    explicit Decoder(const SurfaceCode &code);

    /// Violated stabilizer positions of each type.
    SyndromeSample syndrome(const PauliOp &error) const;
    /// Correction reproducing the defects. Throws ValidationError above kMaxDefects of one type.
    PauliOp decode(const std::vector<int> &x_defects, const std::vector<int> &z_defects) const;
    /// True when the residual error flips a logical.
    bool logical_failure(const PauliOp &residual) const;

  private:
    struct Graph {
        /// Check positions whose product is node i.
        std::vector<std::vector<int>> origins;
        int nodes = 0;
        /// dist[a][b] over nodes plus the boundary at index `nodes`; -1 when unreachable.
        std::vector<std::vector<int>> dist;
        /// Qubits along one shortest path from a to b.
        std::vector<std::vector<std::vector<QubitId>>> path;
    };
    static Graph build(const std::vector<std::vector<QubitId>> &checks);
    std::vector<QubitId> match(const Graph &g, const std::vector<int> &defects) const;

    PauliOp logical_x_;
    PauliOp logical_z_;
    std::vector<std::vector<QubitId>> x_checks_;
    std::vector<std::vector<QubitId>> z_checks_;
    Graph x_graph_;
    Graph z_graph_;
};

SyndromeSample sample_error(const SurfaceCode &code, const NoiseModel &noise, uint64_t seed);
PauliOp decode_exact(const SurfaceCode &code, const std::vector<int> &x_defects, const std::vector<int> &z_defects);

struct LerEstimate {
    long long shots = 0;
    long long failures = 0;
    /// Shots above the exact-matching bound.
    long long discarded = 0;
    /// Shots whose correction missed a defect; zero for a sound decoder.
    long long inconsistent = 0;
    double ler = 0;
    double stderr_ = 0;
};

/// Seed of shot i, derived by SplitMix64 from the run seed.
uint64_t shot_seed(uint64_t seed, uint64_t shot);

/// Parallel over shots with OpenMP; identical to the serial version for equal arguments.
LerEstimate estimate_ler(const SurfaceCode &code, const NoiseModel &noise, long long shots, uint64_t seed);
LerEstimate estimate_ler_serial(const SurfaceCode &code, const NoiseModel &noise, long long shots, uint64_t seed);

}  // namespace qcal
