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

#include "qcal/deform.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "qcal/error.hpp"

namespace qcal {

namespace {

constexpr std::array<std::pair<Opcode, std::string_view>, 8> kOpcodeNames{{
    {Opcode::DataQ_RM, "DataQ_RM"},
    {Opcode::SyndromeQ_RM, "SyndromeQ_RM"},
    {Opcode::PatchQ_RM, "PatchQ_RM"},
    {Opcode::PatchQ_AD, "PatchQ_AD"},
    {Opcode::AncQ_RM_HorDeg2, "AncQ_RM_HorDeg2"},
    {Opcode::AncQ_RM_VerDeg2, "AncQ_RM_VerDeg2"},
    {Opcode::AncQ_RM_Deg3, "AncQ_RM_Deg3"},
    {Opcode::Reintegrate, "Reintegrate"},
}};

bool contains(const std::vector<QubitId> &v, QubitId q) { return std::find(v.begin(), v.end(), q) != v.end(); }

std::vector<bool> derive_active(const Lattice &lat, const std::vector<Check> &checks) {
    std::vector<bool> active(lat.num_qubits(), false);
    for (const auto &c : checks) {
        for (QubitId q : c.data) {
            active[static_cast<size_t>(q)] = true;
        }
        for (QubitId q : c.bridge) {
            active[static_cast<size_t>(q)] = true;
        }
    }
    return active;
}

/// Drops q from every check; checks left empty disappear.
void restrict_data(const Lattice &lat, std::vector<Check> &checks, QubitId q, std::set<int> &footprint) {
    std::vector<Check> out;
    for (auto &c : checks) {
        if (!contains(c.data, q)) {
            out.push_back(std::move(c));
            continue;
        }
        footprint.insert(c.origin);
        std::erase(c.data, q);
        if (c.data.empty()) {
            continue;
        }
        c.bridge = trim_bridge(lat, c.bridge, c.data);
        out.push_back(std::move(c));
    }
    checks = std::move(out);
}

/// Data qubits measured out in both bases leave the code.
void cascade_isolated_data(const Lattice &lat, std::vector<Check> &checks, std::set<int> &footprint) {
    for (;;) {
        std::map<QubitId, int> singles;
        for (const auto &c : checks) {
            if (c.data.size() == 1) {
                singles[c.data[0]] |= c.type == CheckType::X ? 1 : 2;
            }
        }
        auto it = std::find_if(singles.begin(), singles.end(), [](const auto &kv) { return kv.second == 3; });
        if (it == singles.end()) {
            return;
        }
        restrict_data(lat, checks, it->first, footprint);
    }
}

/// Splits every check read out through ancilla a into the pieces still reachable.
void remove_ancilla(const Lattice &lat, std::vector<Check> &checks, QubitId a, std::set<int> &footprint) {
    std::vector<Check> out;
    for (auto &c : checks) {
        auto pos = std::find(c.bridge.begin(), c.bridge.end(), a);
        if (pos == c.bridge.end()) {
            out.push_back(std::move(c));
            continue;
        }
        footprint.insert(c.origin);
        std::vector<std::vector<QubitId>> parts{{c.bridge.begin(), pos}, {pos + 1, c.bridge.end()}};
        for (const auto &part : parts) {
            Check g{c.type, {}, c.origin, {}};
            for (QubitId node : part) {
                for (QubitId dq : lat.attached_data(node)) {
                    if (contains(c.data, dq)) {
                        g.data.push_back(dq);
                    }
                }
            }
            if (g.data.empty()) {
                continue;
            }
            std::sort(g.data.begin(), g.data.end());
            g.bridge = trim_bridge(lat, part, g.data);
            out.push_back(std::move(g));
        }
        // Data wired to the removed ancilla are measured directly.
        for (QubitId dq : lat.attached_data(a)) {
            if (contains(c.data, dq)) {
                out.push_back(Check{c.type, {dq}, c.origin, {}});
            }
        }
    }
    checks = std::move(out);
    cascade_isolated_data(lat, checks, footprint);
}

/// Replaces the checks of plaquettes that differ between two rectangles.
std::vector<Check> swap_rect(const Lattice &lat, const std::vector<Check> &checks, const Rect &from, const Rect &to,
                             std::set<int> &footprint) {
    std::map<int, Check> a;
    std::map<int, Check> b;
    for (auto &c : rect_checks(lat, from)) {
        a[c.origin] = c;
    }
    for (auto &c : rect_checks(lat, to)) {
        b[c.origin] = c;
    }
    std::set<int> delta;
    for (const auto &[o, c] : a) {
        if (!b.contains(o) || !(b[o] == c)) {
            delta.insert(o);
        }
    }
    for (const auto &[o, c] : b) {
        if (!a.contains(o)) {
            delta.insert(o);
        }
    }
    std::vector<Check> current;
    std::vector<Check> out;
    for (const auto &c : checks) {
        (delta.contains(c.origin) ? current : out).push_back(c);
    }
    std::vector<Check> expected;
    for (int o : delta) {
        if (a.contains(o)) {
            expected.push_back(a[o]);
        }
    }
    std::sort(current.begin(), current.end());
    std::sort(expected.begin(), expected.end());
    if (current != expected) {
        throw ValidationError("boundary strip touches deformed stabilizers");
    }
    for (int o : delta) {
        if (b.contains(o)) {
            out.push_back(b[o]);
        }
    }
    footprint.insert(delta.begin(), delta.end());
    return out;
}

void require_topology(const Lattice &lat, Topology t, Opcode op) {
    if (lat.topology() != t) {
        throw ValidationError(std::string(to_string(op)) + " is not available on a " + std::string(to_string(lat.topology())) +
                              " lattice");
    }
}

}  // namespace

std::string_view to_string(Opcode op) {
    for (auto [o, n] : kOpcodeNames) {
        if (o == op) {
            return n;
        }
    }
    return "?";
}

Opcode opcode_from_string(std::string_view s) {
    for (auto [o, n] : kOpcodeNames) {
        if (n == s) {
            return o;
        }
    }
    throw ValidationError("unknown opcode: " + std::string(s));
}

Rect resize_rect(const Rect &r, Side side, int grow) {
    Rect o = r;
    switch (side) {
    case Side::Top:
        o.row0 -= grow;
        o.rows += grow;
        break;
    case Side::Bottom:
        o.rows += grow;
        break;
    case Side::Left:
        o.col0 -= grow;
        o.cols += grow;
        break;
    case Side::Right:
        o.cols += grow;
        break;
    }
    return o;
}

nlohmann::json DeformInstruction::to_json() const {
    nlohmann::json j{{"opcode", to_string(opcode)}, {"topology", to_string(topology)}};
    if (opcode == Opcode::PatchQ_RM || opcode == Opcode::PatchQ_AD) {
        j["region"] = {{"side", to_string(region.side)}, {"count", region.count}};
    } else if (opcode == Opcode::Reintegrate) {
        j["qubits"] = qubits;
    } else {
        j["target"] = qubits.at(0);
    }
    return j;
}

DeformInstruction DeformInstruction::from_json(const nlohmann::json &j) {
    try {
        DeformInstruction d;
        d.opcode = opcode_from_string(j.at("opcode").get<std::string>());
        d.topology = topology_from_string(j.at("topology").get<std::string>());
        if (d.opcode == Opcode::PatchQ_RM || d.opcode == Opcode::PatchQ_AD) {
            d.region.side = side_from_string(j.at("region").at("side").get<std::string>());
            d.region.count = j.at("region").at("count").get<int>();
        } else if (d.opcode == Opcode::Reintegrate) {
            d.qubits = j.at("qubits").get<std::vector<QubitId>>();
        } else {
            d.qubits = {j.at("target").get<QubitId>()};
        }
        return d;
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("malformed instruction: ") + e.what());
    }
}

nlohmann::json DeformResult::to_json() const {
    auto ops = [](const std::vector<PauliOp> &v) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto &p : v) {
            a.push_back(p.to_string());
        }
        return a;
    };
    return {{"removed_qubits", removed_qubits}, {"added_qubits", added_qubits},   {"new_gauges", ops(new_gauges)},
            {"new_superstabilizers", ops(new_superstabilizers)}, {"delta_d", delta_d}, {"qubit_overhead", qubit_overhead}};
}

CodeState Deformer::step(const CodeState &s, const DeformInstruction &ins, std::set<int> &footprint) const {
    const Lattice &lat = code_.lattice();
    CodeState n = s;
    auto target = [&]() {
        if (ins.qubits.size() != 1) {
            throw ValidationError(std::string(to_string(ins.opcode)) + " takes exactly one target");
        }
        QubitId q = ins.qubits[0];
        if (q < 0 || static_cast<size_t>(q) >= lat.num_qubits()) {
            throw ValidationError("qubit id out of range");
        }
        if (!s.active[static_cast<size_t>(q)]) {
            throw ValidationError("qubit " + std::to_string(q) + " is not active");
        }
        return q;
    };
    auto anc_target = [&](Opcode op, QubitRole role) {
        require_topology(lat, Topology::HeavyHex, op);
        QubitId q = target();
        if (lat.classify_ancilla(q) != role) {
            throw ValidationError("qubit " + std::to_string(q) + " has role " + std::string(to_string(lat.qubit(q).role)));
        }
        return q;
    };
    switch (ins.opcode) {
    case Opcode::DataQ_RM: {
        QubitId q = target();
        if (!lat.is_data(q)) {
            throw ValidationError("DataQ_RM target is not a data qubit");
        }
        restrict_data(lat, n.checks, q, footprint);
        break;
    }
    case Opcode::SyndromeQ_RM: {
        require_topology(lat, Topology::Square, ins.opcode);
        QubitId q = target();
        if (lat.qubit(q).role != QubitRole::Syndrome) {
            throw ValidationError("SyndromeQ_RM target is not a syndrome qubit");
        }
        remove_ancilla(lat, n.checks, q, footprint);
        break;
    }
    case Opcode::AncQ_RM_HorDeg2:
        remove_ancilla(lat, n.checks, anc_target(ins.opcode, QubitRole::AncHorDeg2), footprint);
        break;
    case Opcode::AncQ_RM_VerDeg2:
        remove_ancilla(lat, n.checks, anc_target(ins.opcode, QubitRole::AncVerDeg2), footprint);
        break;
    case Opcode::AncQ_RM_Deg3:
        remove_ancilla(lat, n.checks, anc_target(ins.opcode, QubitRole::AncDeg3), footprint);
        break;
    case Opcode::PatchQ_RM:
    case Opcode::PatchQ_AD: {
        if (ins.region.count < 0) {
            throw ValidationError("strip width must be non-negative");
        }
        if (ins.region.count == 0) {
            break;
        }
        bool add = ins.opcode == Opcode::PatchQ_AD;
        Rect to = resize_rect(s.rect, ins.region.side, add ? ins.region.count : -ins.region.count);
        if (to.rows < 2 || to.cols < 2) {
            throw ValidationError("strip removal would disconnect the patch");
        }
        if (add) {
            for (int r = to.row0; r < to.row_end(); ++r) {
                for (int c = to.col0; c < to.col_end(); ++c) {
                    if (s.rect.contains(r, c)) {
                        continue;
                    }
                    QubitId q = lat.data_at(r, c);
                    if (q < 0) {
                        throw ValidationError("strip lies outside the device");
                    }
                    if (s.active[static_cast<size_t>(q)]) {
                        throw ValidationError("strip overlaps active qubits");
                    }
                }
            }
        }
        n.checks = swap_rect(lat, s.checks, s.rect, to, footprint);
        n.rect = to;
        break;
    }
    case Opcode::Reintegrate:
        throw ValidationError("Reintegrate is not a single-step edit");
    }
    n.active = derive_active(lat, n.checks);
    n.canonicalize();
    return n;
}

Deformer::Deformer(SurfaceCode code) : code_(std::move(code)) {}

int Deformer::distance() const {
    if (distance_ < 0) {
        distance_ = qcal::distance(code_).d;
    }
    return distance_;
}

namespace {

DeformResult diff(const SurfaceCode &a, const SurfaceCode &b, int da, int db) {
    DeformResult r;
    for (size_t i = 0; i < a.state().active.size(); ++i) {
        bool x = a.state().active[i];
        bool y = b.state().active[i];
        if (x && !y) {
            r.removed_qubits.push_back(static_cast<QubitId>(i));
        } else if (!x && y) {
            r.added_qubits.push_back(static_cast<QubitId>(i));
        }
    }
    const auto &ga = a.gauges().generators();
    for (const auto &g : b.gauges()) {
        if (std::find(ga.begin(), ga.end(), g) == ga.end()) {
            r.new_gauges.push_back(g);
        }
    }
    for (const auto &s : b.superstabilizers()) {
        bool seen = std::any_of(a.superstabilizers().begin(), a.superstabilizers().end(),
                                [&](const SuperStabilizer &t) { return t.op == s.op; });
        if (!seen) {
            r.new_superstabilizers.push_back(s.op);
        }
    }
    r.delta_d = da - db;
    r.qubit_overhead = static_cast<int>(r.added_qubits.size());
    return r;
}

// Entries whose removed qubits can be brought back by reintegration.
bool is_isolation(Opcode op) { return op != Opcode::PatchQ_AD && op != Opcode::Reintegrate; }

}  // namespace

DeformResult Deformer::commit(const DeformInstruction &ins, CodeState next, std::set<int> footprint, bool measure) {
    SurfaceCode after(code_.lattice_ptr(), std::move(next));
    DeformResult r;
    int d_after = -1;
    if (measure) {
        d_after = qcal::distance(after).d;
        r = diff(code_, after, distance(), d_after);
    } else {
        const auto &a = code_.state().active;
        const auto &b = after.state().active;
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] && !b[i]) {
                r.removed_qubits.push_back(static_cast<QubitId>(i));
            }
        }
    }
    history_.push_back({ins, code_.state(), std::move(footprint), r.removed_qubits});
    code_ = std::move(after);
    distance_ = d_after;
    return r;
}

void Deformer::push(const DeformInstruction &ins) {
    if (ins.opcode == Opcode::Reintegrate) {
        reintegrate(ins.qubits);
        return;
    }
    if (ins.topology != code_.lattice().topology()) {
        throw ValidationError("instruction topology does not match the code");
    }
    std::set<int> footprint;
    CodeState next = step(code_.state(), ins, footprint);
    commit(ins, std::move(next), std::move(footprint), false);
}

DeformResult Deformer::apply(const DeformInstruction &ins) {
    if (ins.opcode == Opcode::Reintegrate) {
        return reintegrate(ins.qubits);
    }
    if (ins.topology != code_.lattice().topology()) {
        throw ValidationError("instruction topology does not match the code");
    }
    std::set<int> footprint;
    CodeState next = step(code_.state(), ins, footprint);
    return commit(ins, std::move(next), std::move(footprint), true);
}

DeformResult Deformer::apply_all(const std::vector<DeformInstruction> &seq) {
    SurfaceCode start = code_;
    int d0 = distance();
    for (const auto &ins : seq) {
        push(ins);
    }
    return diff(start, code_, d0, distance());
}

namespace {

DeformInstruction make(Opcode op, Topology t, QubitId q) { return {op, {q}, {}, t}; }

}  // namespace

DeformResult Deformer::data_q_rm(QubitId q) { return apply(make(Opcode::DataQ_RM, code_.lattice().topology(), q)); }
DeformResult Deformer::syndrome_q_rm(QubitId q) { return apply(make(Opcode::SyndromeQ_RM, code_.lattice().topology(), q)); }
DeformResult Deformer::anc_rm_hordeg2(QubitId q) { return apply(make(Opcode::AncQ_RM_HorDeg2, code_.lattice().topology(), q)); }
DeformResult Deformer::anc_rm_verdeg2(QubitId q) { return apply(make(Opcode::AncQ_RM_VerDeg2, code_.lattice().topology(), q)); }
DeformResult Deformer::anc_rm_deg3(QubitId q) { return apply(make(Opcode::AncQ_RM_Deg3, code_.lattice().topology(), q)); }

DeformResult Deformer::patch_q_rm(Region r) {
    return apply({Opcode::PatchQ_RM, {}, r, code_.lattice().topology()});
}

DeformResult Deformer::patch_q_ad(Region r) {
    return apply({Opcode::PatchQ_AD, {}, r, code_.lattice().topology()});
}

DeformResult Deformer::reintegrate(const std::vector<QubitId> &qubits) {
    std::vector<size_t> targets;
    for (size_t i = 0; i < history_.size(); ++i) {
        if (!is_isolation(history_[i].ins.opcode)) {
            continue;
        }
        const auto &rm = history_[i].removed;
        if (std::any_of(qubits.begin(), qubits.end(), [&](QubitId q) { return contains(rm, q); })) {
            targets.push_back(i);
        }
    }
    if (targets.empty()) {
        throw ValidationError("none of the qubits is isolated");
    }
    auto is_target = [&](size_t i) { return std::binary_search(targets.begin(), targets.end(), i); };
    for (size_t e : targets) {
        for (size_t j = e + 1; j < history_.size(); ++j) {
            if (is_target(j)) {
                continue;
            }
            const auto &fa = history_[e].footprint;
            const auto &fb = history_[j].footprint;
            bool overlap = std::any_of(fa.begin(), fa.end(), [&](int o) { return fb.contains(o); });
            if (overlap) {
                throw ValidationError("out-of-order reintegration: a later instruction touches the same stabilizers");
            }
        }
    }
    SurfaceCode start = code_;
    int d0 = distance();
    size_t first = targets.front();
    std::vector<Entry> replay(history_.begin() + static_cast<long>(first), history_.end());
    SurfaceCode restored(code_.lattice_ptr(), history_[first].before);
    history_.resize(first);
    code_ = std::move(restored);
    distance_ = -1;
    for (size_t k = 0; k < replay.size(); ++k) {
        if (!is_target(first + k)) {
            push(replay[k].ins);
        }
    }
    return diff(start, code_, d0, distance());
}

std::set<QubitId> Deformer::isolated() const {
    std::set<QubitId> out;
    for (const auto &e : history_) {
        if (is_isolation(e.ins.opcode)) {
            out.insert(e.removed.begin(), e.removed.end());
        }
    }
    return out;
}

}  // namespace qcal
