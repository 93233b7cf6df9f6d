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

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace qcal {

using QubitId = int;

/// Sparse Pauli operator with the phase dropped. A Y on q puts q in both supports.
/// Supports are kept sorted and duplicate free.
class PauliOp {
  public:
    PauliOp() = default;
    PauliOp(std::vector<QubitId> x_support, std::vector<QubitId> z_support);

    static PauliOp x(std::initializer_list<QubitId> qubits);
    static PauliOp z(std::initializer_list<QubitId> qubits);
    static PauliOp x(const std::vector<QubitId> &qubits);
    static PauliOp z(const std::vector<QubitId> &qubits);

    const std::vector<QubitId> &x_support() const { return x_; }
    const std::vector<QubitId> &z_support() const { return z_; }

    bool is_identity() const { return x_.empty() && z_.empty(); }
    size_t weight() const;
    bool acts_on(QubitId q) const;
    /// Qubits touched by either support, sorted.
    std::vector<QubitId> support() const;

    /// Drops every factor on qubit q.
    PauliOp without(QubitId q) const;

    std::string to_string() const;

    auto operator<=>(const PauliOp &) const = default;
    bool operator==(const PauliOp &) const = default;

  private:
    std::vector<QubitId> x_;
    std::vector<QubitId> z_;
};

/// True iff the symplectic inner product of a and b is zero.
bool commutes(const PauliOp &a, const PauliOp &b);

/// Product with the phase discarded: supports combine by symmetric difference.
PauliOp multiply(const PauliOp &a, const PauliOp &b);

enum class GeneratorKind { Stabilizer, Gauge };

/// Ordered generator list with a kind tag per generator.
class StabilizerSet {
  public:
    StabilizerSet() = default;

    void add(PauliOp op, GeneratorKind kind = GeneratorKind::Stabilizer);

    size_t size() const { return gens_.size(); }
    bool empty() const { return gens_.empty(); }
    const PauliOp &operator[](size_t i) const { return gens_[i]; }
    GeneratorKind kind(size_t i) const { return kinds_[i]; }
    const std::vector<PauliOp> &generators() const { return gens_; }

    /// Every pair of stabilizer-kind generators commutes.
    bool stabilizers_commute() const;
    /// Rank of the generators over GF(2) in the symplectic representation.
    size_t rank() const;
    bool independent() const { return rank() == size(); }

    auto begin() const { return gens_.begin(); }
    auto end() const { return gens_.end(); }

  private:
    std::vector<PauliOp> gens_;
    std::vector<GeneratorKind> kinds_;
};

/// True iff op is a product of generators of `gens` (phase ignored).
bool in_group(const PauliOp &op, const StabilizerSet &gens);
bool in_group(const PauliOp &op, const std::vector<PauliOp> &gens);

size_t symplectic_rank(const std::vector<PauliOp> &ops);

}  // namespace qcal
