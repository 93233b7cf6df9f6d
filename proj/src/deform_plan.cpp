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

#include "qcal/deform.hpp"
#include "qcal/error.hpp"

namespace qcal {

namespace {

Opcode opcode_for_role(QubitRole r) {
    switch (r) {
    case QubitRole::Data:
        return Opcode::DataQ_RM;
    case QubitRole::Syndrome:
        return Opcode::SyndromeQ_RM;
    case QubitRole::AncDeg3:
        return Opcode::AncQ_RM_Deg3;
    case QubitRole::AncHorDeg2:
        return Opcode::AncQ_RM_HorDeg2;
    case QubitRole::AncVerDeg2:
        return Opcode::AncQ_RM_VerDeg2;
    }
    return Opcode::DataQ_RM;
}

}  // namespace

std::vector<DeformInstruction> isolate_targets(const Deformer &d, const std::vector<QubitId> &targets) {
    Deformer scratch = d;
    return isolate_in_place(scratch, targets);
}

std::vector<DeformInstruction> isolate_in_place(Deformer &scratch, const std::vector<QubitId> &targets) {
    const Lattice &lat = scratch.code().lattice();
    const Topology topo = lat.topology();
    std::vector<QubitId> sorted = targets;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<DeformInstruction> seq;
    auto run = [&](DeformInstruction ins) {
        scratch.push(ins);
        seq.push_back(std::move(ins));
    };

    for (Side side : {Side::Top, Side::Bottom, Side::Left, Side::Right}) {
        auto edge = scratch.code().boundary_data(side);
        size_t hits = static_cast<size_t>(std::count_if(sorted.begin(), sorted.end(), [&](QubitId q) {
            return std::find(edge.begin(), edge.end(), q) != edge.end();
        }));
        if (hits < 2) {
            continue;
        }
        DeformInstruction strip{Opcode::PatchQ_RM, {}, {side, 1}, topo};
        try {
            scratch.push(strip);
            seq.push_back(strip);
        } catch (const ValidationError &) {
            // Strip not removable here; fall back to single removals.
        }
    }
    for (QubitId q : sorted) {
        if (lat.is_data(q) && scratch.code().is_active(q)) {
            run({Opcode::DataQ_RM, {q}, {}, topo});
        }
    }
    for (QubitId q : sorted) {
        if (!lat.is_data(q) && scratch.code().is_active(q)) {
            run({opcode_for_role(lat.qubit(q).role), {q}, {}, topo});
        }
    }
    return seq;
}

std::vector<DeformInstruction> isolate_for_gate(const Deformer &d, const std::vector<QubitId> &gate_qubits,
                                                const std::vector<QubitId> &nbr) {
    const auto &code = d.code();
    for (QubitId q : gate_qubits) {
        if (q < 0 || static_cast<size_t>(q) >= code.lattice().num_qubits() || !code.is_active(q)) {
            throw ValidationError("gate qubit " + std::to_string(q) + " is outside the patch");
        }
    }
    std::vector<QubitId> all = gate_qubits;
    all.insert(all.end(), nbr.begin(), nbr.end());
    return isolate_targets(d, all);
}

DeformResult enlarge_to_distance(Deformer &d, int d_target) {
    const Lattice &lat = d.code().lattice();
    const int scale = lat.topology() == Topology::Square ? 2 : 4;
    // Centroid of isolated qubits in cell units; the patch centre when nothing is isolated.
    const Rect &r0 = d.code().rect();
    double cy = r0.row0 + (r0.rows - 1) / 2.0;
    double cx = r0.col0 + (r0.cols - 1) / 2.0;
    auto iso = d.isolated();
    if (!iso.empty()) {
        cy = cx = 0;
        for (QubitId q : iso) {
            cy += lat.qubit(q).coord.row / static_cast<double>(scale);
            cx += lat.qubit(q).coord.col / static_cast<double>(scale);
        }
        cy /= static_cast<double>(iso.size());
        cx /= static_cast<double>(iso.size());
    }

    DeformResult total;
    const int d0 = d.distance();
    auto grow = [&](Side first, Side second) {
        for (Side s : {first, second}) {
            try {
                DeformResult r = d.patch_q_ad({s, 1});
                total.added_qubits.insert(total.added_qubits.end(), r.added_qubits.begin(), r.added_qubits.end());
                total.new_gauges.insert(total.new_gauges.end(), r.new_gauges.begin(), r.new_gauges.end());
                total.new_superstabilizers.insert(total.new_superstabilizers.end(), r.new_superstabilizers.begin(),
                                                  r.new_superstabilizers.end());
                total.qubit_overhead += r.qubit_overhead;
                return;
            } catch (const ValidationError &) {
            }
        }
        throw InfeasibleError("device has no room left to enlarge the patch");
    };
    const size_t max_steps = lat.num_qubits();
    for (size_t step = 0; step < max_steps; ++step) {
        int dx = distance_graph(d.code(), CheckType::X);
        int dz = distance_graph(d.code(), CheckType::Z);
        if (dx >= d_target && dz >= d_target) {
            total.delta_d = d0 - d.distance();
            std::sort(total.added_qubits.begin(), total.added_qubits.end());
            return total;
        }
        const Rect &R = d.code().rect();
        if (dx < d_target) {
            bool top_far = cy - R.row0 > R.row_end() - 1 - cy;
            grow(top_far ? Side::Top : Side::Bottom, top_far ? Side::Bottom : Side::Top);
        } else {
            bool left_far = cx - R.col0 > R.col_end() - 1 - cx;
            grow(left_far ? Side::Left : Side::Right, left_far ? Side::Right : Side::Left);
        }
    }
    throw InfeasibleError("enlargement did not reach the target distance");
}

}  // namespace qcal
