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

#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qcal/code.hpp"

namespace qcal {

enum class Opcode { DataQ_RM, SyndromeQ_RM, PatchQ_RM, PatchQ_AD, AncQ_RM_HorDeg2, AncQ_RM_VerDeg2, AncQ_RM_Deg3, Reintegrate };

std::string_view to_string(Opcode op);
Opcode opcode_from_string(std::string_view s);

/// Boundary strip: `count` data rows or columns on one side of the patch.
struct Region {
    Side side = Side::Top;
    int count = 1;
    bool operator==(const Region &) const = default;
};

struct DeformInstruction {
    Opcode opcode = Opcode::DataQ_RM;
    /// Single target for qubit opcodes; the qubit set for Reintegrate.
    std::vector<QubitId> qubits;
    Region region;
    Topology topology = Topology::Square;

    nlohmann::json to_json() const;
    static DeformInstruction from_json(const nlohmann::json &j);
    bool operator==(const DeformInstruction &) const = default;
};

struct DeformResult {
    std::vector<QubitId> removed_qubits;
    std::vector<QubitId> added_qubits;
    std::vector<PauliOp> new_gauges;
    std::vector<PauliOp> new_superstabilizers;
    /// Distance before minus distance after; negative when the patch grew.
    int delta_d = 0;
    int qubit_overhead = 0;

    nlohmann::json to_json() const;
};

/// Code value plus the instruction history needed for reintegration.
class Deformer {
  public:
    explicit Deformer(SurfaceCode code);

    const SurfaceCode &code() const { return code_; }
    /// Graph distance of the current code, min over both bases. Computed on demand.
    int distance() const;

    DeformResult apply(const DeformInstruction &ins);
    /// Same as apply without measuring the result.
    void push(const DeformInstruction &ins);
    DeformResult apply_all(const std::vector<DeformInstruction> &seq);

    DeformResult data_q_rm(QubitId q);
    DeformResult syndrome_q_rm(QubitId q);
    DeformResult patch_q_rm(Region r);
    DeformResult patch_q_ad(Region r);
    DeformResult anc_rm_hordeg2(QubitId q);
    DeformResult anc_rm_verdeg2(QubitId q);
    DeformResult anc_rm_deg3(QubitId q);
    /// Undoes every live isolation that removed any of `qubits`. Later instructions on
    /// disjoint plaquettes are kept; overlapping ones make this an error.
    DeformResult reintegrate(const std::vector<QubitId> &qubits);

    /// Qubits removed by isolation instructions that are still in effect.
    std::set<QubitId> isolated() const;
    size_t history_size() const { return history_.size(); }

  private:
    struct Entry {
        DeformInstruction ins;
        CodeState before;
        std::set<int> footprint;
        std::vector<QubitId> removed;
    };

    DeformResult commit(const DeformInstruction &ins, CodeState next, std::set<int> footprint, bool measure);
    CodeState step(const CodeState &s, const DeformInstruction &ins, std::set<int> &footprint) const;

    SurfaceCode code_;
    mutable int distance_ = -1;
    std::vector<Entry> history_;
};

/// Isolates every active qubit among `targets` in place and returns the instructions used.
std::vector<DeformInstruction> isolate_in_place(Deformer &d, const std::vector<QubitId> &targets);

/// Instruction sequence that isolates every active qubit among `targets`, computed on a
/// scratch copy. Data qubits come first, with one boundary strip replacing two or more
/// removals on the same side; ancillas follow in id order with opcodes chosen by role.
std::vector<DeformInstruction> isolate_targets(const Deformer &d, const std::vector<QubitId> &targets);

/// Isolation of a gate's qubits and their neighbourhood. Throws ValidationError when a
/// gate qubit is outside the patch.
std::vector<DeformInstruction> isolate_for_gate(const Deformer &d, const std::vector<QubitId> &gate_qubits,
                                                const std::vector<QubitId> &nbr);

/// Grows the patch with boundary strips on the side away from the isolated qubits until
/// both distances reach `d_target`. Throws InfeasibleError when the device runs out.
DeformResult enlarge_to_distance(Deformer &d, int d_target);

/// Rectangle grown by `grow` strips on one side (shrunk when negative).
Rect resize_rect(const Rect &r, Side side, int grow);

}  // namespace qcal
