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

#include <memory>
#include <vector>

#include "json.hpp"
#include "qcal/lattice.hpp"
#include "qcal/pauli.hpp"

namespace qcal {

/// A measured check: one Pauli type on a set of data qubits, read out through `bridge`.
/// `origin` is the plaquette the check descends from.
struct Check {
    CheckType type = CheckType::X;
    std::vector<QubitId> data;
    int origin = -1;
    std::vector<QubitId> bridge;

    PauliOp op() const { return type == CheckType::X ? PauliOp::x(data) : PauliOp::z(data); }
    auto operator<=>(const Check &) const = default;
    bool operator==(const Check &) const = default;
};

/// Product of gauge checks that commutes with every check.
struct SuperStabilizer {
    PauliOp op;
    std::vector<PauliOp> constituents;
};

enum class Side { Top, Bottom, Left, Right };
std::string_view to_string(Side s);
Side side_from_string(std::string_view s);

/// Mutable description of a code: the patch rectangle, the measured checks and which
/// lattice qubits are in use.
struct CodeState {
    Rect rect;
    std::vector<Check> checks;
    std::vector<bool> active;

    /// Sorts checks into canonical order.
    void canonicalize();
    bool operator==(const CodeState &) const = default;
};

/// Shortest contiguous piece of `bridge` reaching every node wired to `data`.
std::vector<QubitId> trim_bridge(const Lattice &lat, const std::vector<QubitId> &bridge, const std::vector<QubitId> &data);

/// Checks of the undeformed rotated code on `rect`.
std::vector<Check> rect_checks(const Lattice &lat, const Rect &rect);

/// Subsystem CSS code derived from a CodeState. Stabilizers are the centre of the
/// group generated by the checks; checks outside the centre are gauges.
class SurfaceCode {
  public:
    /// Throws ValidationError when the state does not encode exactly one logical qubit.
    SurfaceCode(std::shared_ptr<const Lattice> lattice, CodeState state);

    static SurfaceCode construct(std::shared_ptr<const Lattice> lattice);
    static SurfaceCode construct(const Lattice &lattice);

    const Lattice &lattice() const { return *lattice_; }
    const std::shared_ptr<const Lattice> &lattice_ptr() const { return lattice_; }
    const CodeState &state() const { return state_; }
    const Rect &rect() const { return state_.rect; }
    const std::vector<Check> &checks() const { return state_.checks; }

    const StabilizerSet &stabilizers() const { return stabilizers_; }
    const StabilizerSet &gauges() const { return gauges_; }
    const std::vector<SuperStabilizer> &superstabilizers() const { return supers_; }
    /// Stabilizer generators of one Pauli type.
    std::vector<PauliOp> stabilizers_of(CheckType t) const;
    /// Check operators of one Pauli type (stabilizer and gauge checks).
    std::vector<PauliOp> checks_of(CheckType t) const;

    const PauliOp &logical_x() const { return logical_x_; }
    const PauliOp &logical_z() const { return logical_z_; }
    const PauliOp &logical(CheckType t) const { return t == CheckType::X ? logical_x_ : logical_z_; }

    bool is_active(QubitId q) const { return state_.active.at(static_cast<size_t>(q)); }
    const std::vector<QubitId> &active_data() const { return active_data_; }
    std::vector<QubitId> active_qubits() const;
    /// Active data qubits on one side of the patch rectangle.
    std::vector<QubitId> boundary_data(Side s) const;

    int encoded_qubits() const { return encoded_; }

    nlohmann::json to_json() const;

    bool operator==(const SurfaceCode &o) const { return state_ == o.state_ && logical_x_ == o.logical_x_ && logical_z_ == o.logical_z_; }

  private:
    void derive();
    PauliOp pick_logical(CheckType t, const PauliOp *partner) const;

    std::shared_ptr<const Lattice> lattice_;
    CodeState state_;
    std::vector<QubitId> active_data_;
    StabilizerSet stabilizers_;
    StabilizerSet gauges_;
    std::vector<SuperStabilizer> supers_;
    PauliOp logical_x_;
    PauliOp logical_z_;
    int encoded_ = 0;
};

enum class DistanceMethod { GraphPath, BruteForce };

struct DistanceReport {
    int d_x = 0;
    int d_z = 0;
    int d = 0;
    DistanceMethod method = DistanceMethod::GraphPath;
};

/// Generating set of the group spanned by `checks` (sorted supports) in which every qubit lies in
/// at most two members. Entry i lists the input positions whose product is member i. Returns
/// the identity map when the search gives up.
std::vector<std::vector<int>> graphlike_basis(const std::vector<std::vector<QubitId>> &checks);

/// Minimum weight of a `basis`-type dressed logical, by shortest odd cycle in the
/// matching graph of the opposite-type stabilizers. Throws ValidationError when no
/// logical exists.
int distance_graph(const SurfaceCode &code, CheckType basis);

/// Exhaustive search over active data qubits (at most 30).
int distance_bruteforce(const SurfaceCode &code, CheckType basis);

/// Exhaustive search on raw operators: `stabilizers` of the opposite type must commute
/// with the candidate; `same_type_checks` span the trivial class.
int distance_bruteforce(const std::vector<QubitId> &data, const std::vector<PauliOp> &stabilizers,
                        const std::vector<PauliOp> &same_type_checks, CheckType basis);

DistanceReport distance(const SurfaceCode &code, DistanceMethod method = DistanceMethod::GraphPath);

}  // namespace qcal
