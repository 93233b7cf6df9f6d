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

#include "qcal/code.hpp"

#include <algorithm>
#include <unordered_map>

#include "qcal/error.hpp"
#include "qcal/gf2.hpp"

namespace qcal {

std::string_view to_string(Side s) {
    switch (s) {
    case Side::Top:
        return "top";
    case Side::Bottom:
        return "bottom";
    case Side::Left:
        return "left";
    case Side::Right:
        return "right";
    }
    return "?";
}

Side side_from_string(std::string_view s) {
    if (s == "top") {
        return Side::Top;
    }
    if (s == "bottom") {
        return Side::Bottom;
    }
    if (s == "left") {
        return Side::Left;
    }
    if (s == "right") {
        return Side::Right;
    }
    throw ValidationError("unknown side: " + std::string(s));
}

void CodeState::canonicalize() {
    for (auto &c : checks) {
        std::sort(c.data.begin(), c.data.end());
    }
    std::sort(checks.begin(), checks.end());
}

std::vector<QubitId> trim_bridge(const Lattice &lat, const std::vector<QubitId> &bridge,
                                 const std::vector<QubitId> &data) {
    if (bridge.size() <= 1) {
        return bridge;
    }
    size_t lo = bridge.size();
    size_t hi = 0;
    for (size_t i = 0; i < bridge.size(); ++i) {
        for (QubitId d : lat.attached_data(bridge[i])) {
            if (std::find(data.begin(), data.end(), d) != data.end()) {
                lo = std::min(lo, i);
                hi = std::max(hi, i);
            }
        }
    }
    if (lo > hi) {
        return {};
    }
    return {bridge.begin() + static_cast<long>(lo), bridge.begin() + static_cast<long>(hi) + 1};
}

std::vector<Check> rect_checks(const Lattice &lat, const Rect &rect) {
    std::vector<Check> out;
    for (int i = rect.row0 - 1; i < rect.row_end(); ++i) {
        for (int j = rect.col0 - 1; j < rect.col_end(); ++j) {
            if (!plaquette_in_code(rect, i, j)) {
                continue;
            }
            int p = lat.plaquette_at(i, j);
            if (p < 0) {
                throw ValidationError("patch rectangle leaves the device");
            }
            Check c;
            c.type = plaquette_type(i, j);
            c.origin = p;
            for (auto [r, col] : plaquette_cells(i, j)) {
                if (rect.contains(r, col)) {
                    c.data.push_back(lat.data_at(r, col));
                }
            }
            std::sort(c.data.begin(), c.data.end());
            c.bridge = trim_bridge(lat, lat.plaquettes()[static_cast<size_t>(p)].bridge, c.data);
            out.push_back(std::move(c));
        }
    }
    return out;
}

SurfaceCode SurfaceCode::construct(std::shared_ptr<const Lattice> lattice) {
    CodeState st;
    st.rect = lattice->patch();
    st.checks = rect_checks(*lattice, st.rect);
    st.active.assign(lattice->num_qubits(), false);
    for (int r = st.rect.row0; r < st.rect.row_end(); ++r) {
        for (int c = st.rect.col0; c < st.rect.col_end(); ++c) {
            st.active[static_cast<size_t>(lattice->data_at(r, c))] = true;
        }
    }
    for (const auto &c : st.checks) {
        for (QubitId a : c.bridge) {
            st.active[static_cast<size_t>(a)] = true;
        }
    }
    return SurfaceCode(std::move(lattice), std::move(st));
}

SurfaceCode SurfaceCode::construct(const Lattice &lattice) {
    return construct(std::make_shared<const Lattice>(lattice));
}

SurfaceCode::SurfaceCode(std::shared_ptr<const Lattice> lattice, CodeState state)
    : lattice_(std::move(lattice)), state_(std::move(state)) {
    if (state_.active.size() != lattice_->num_qubits()) {
        throw ValidationError("code state does not match lattice size");
    }
    state_.canonicalize();
    derive();
}

namespace {

/// Rows over a compact index of active data qubits.
struct DataIndex {
    std::unordered_map<QubitId, size_t> pos;
    size_t n = 0;

    explicit DataIndex(const std::vector<QubitId> &data) : n(data.size()) {
        for (size_t i = 0; i < data.size(); ++i) {
            pos[data[i]] = i;
        }
    }
    gf2::BitRow row(const std::vector<QubitId> &support) const {
        gf2::BitRow r(n);
        for (QubitId q : support) {
            r.flip(pos.at(q));
        }
        return r;
    }
};

size_t overlap_parity(const std::vector<QubitId> &a, const std::vector<QubitId> &b) {
    size_t n = 0;
    for (QubitId q : a) {
        n += std::binary_search(b.begin(), b.end(), q) ? 1 : 0;
    }
    return n & 1;
}

}  // namespace

void SurfaceCode::derive() {
    const Lattice &lat = *lattice_;
    active_data_.clear();
    for (const auto &q : lat.qubits()) {
        if (q.role == QubitRole::Data && state_.active[static_cast<size_t>(q.id)]) {
            active_data_.push_back(q.id);
        }
    }
    DataIndex idx(active_data_);
    for (const auto &c : state_.checks) {
        if (c.data.empty()) {
            throw ValidationError("empty check");
        }
        for (QubitId q : c.data) {
            if (!idx.pos.contains(q)) {
                throw ValidationError("check acts on inactive qubit " + std::to_string(q));
            }
        }
    }

    stabilizers_ = StabilizerSet();
    gauges_ = StabilizerSet();
    supers_.clear();
    size_t rank_s = 0;
    size_t rank_m = 0;
    for (CheckType t : {CheckType::X, CheckType::Z}) {
        std::vector<size_t> mine;
        std::vector<size_t> other;
        for (size_t i = 0; i < state_.checks.size(); ++i) {
            (state_.checks[i].type == t ? mine : other).push_back(i);
        }
        // Anticommutation rows of this type's checks against the other type.
        std::vector<size_t> plain;
        std::vector<size_t> gauge_idx;
        std::vector<gf2::BitRow> gauge_rows;
        for (size_t i : mine) {
            gf2::BitRow r(other.size());
            for (size_t j = 0; j < other.size(); ++j) {
                if (overlap_parity(state_.checks[i].data, state_.checks[other[j]].data)) {
                    r.set(j);
                }
            }
            if (r.any()) {
                gauge_idx.push_back(i);
                gauge_rows.push_back(std::move(r));
            } else {
                plain.push_back(i);
            }
        }
        gf2::EchelonBasis basis_s(idx.n);
        for (size_t i : plain) {
            if (basis_s.insert(idx.row(state_.checks[i].data))) {
                stabilizers_.add(state_.checks[i].op(), GeneratorKind::Stabilizer);
            }
        }
        for (const auto &comb : gauge_rows.empty() ? std::vector<gf2::BitRow>{} : gf2::left_nullspace(gauge_rows)) {
            SuperStabilizer s;
            PauliOp prod;
            for (size_t k = 0; k < gauge_idx.size(); ++k) {
                if (comb.get(k)) {
                    PauliOp g = state_.checks[gauge_idx[k]].op();
                    prod = multiply(prod, g);
                    s.constituents.push_back(std::move(g));
                }
            }
            const auto &sup = t == CheckType::X ? prod.x_support() : prod.z_support();
            if (prod.is_identity() || !basis_s.insert(idx.row(sup))) {
                continue;
            }
            s.op = prod;
            stabilizers_.add(prod, GeneratorKind::Stabilizer);
            supers_.push_back(std::move(s));
        }
        for (size_t i : gauge_idx) {
            gauges_.add(state_.checks[i].op(), GeneratorKind::Gauge);
        }
        gf2::EchelonBasis basis_m(idx.n);
        for (size_t i : mine) {
            basis_m.insert(idx.row(state_.checks[i].data));
        }
        rank_s += basis_s.rank();
        rank_m += basis_m.rank();
    }
    if ((rank_m - rank_s) % 2 != 0) {
        throw ValidationError("inconsistent gauge structure");
    }
    encoded_ = static_cast<int>(active_data_.size()) - static_cast<int>(rank_s) - static_cast<int>((rank_m - rank_s) / 2);
    if (encoded_ != 1) {
        throw ValidationError("code encodes " + std::to_string(encoded_) + " logical qubits, expected 1");
    }
    logical_x_ = pick_logical(CheckType::X, nullptr);
    logical_z_ = pick_logical(CheckType::Z, &logical_x_);
}

PauliOp SurfaceCode::pick_logical(CheckType t, const PauliOp *partner) const {
    const Lattice &lat = *lattice_;
    CheckType o = t == CheckType::X ? CheckType::Z : CheckType::X;
    DataIndex idx(active_data_);
    gf2::EchelonBasis same(idx.n);
    std::vector<gf2::BitRow> opp_rows;
    for (const auto &c : state_.checks) {
        if (c.type == t) {
            same.insert(idx.row(c.data));
        } else {
            opp_rows.push_back(idx.row(c.data));
        }
    }
    gf2::BitRow partner_row(idx.n);
    if (partner != nullptr) {
        partner_row = idx.row(o == CheckType::X ? partner->x_support() : partner->z_support());
    }
    auto valid = [&](const gf2::BitRow &v) {
        if (!v.any() || same.contains(v)) {
            return false;
        }
        for (const auto &r : opp_rows) {
            if (r.dot(v)) {
                return false;
            }
        }
        return partner == nullptr || partner_row.dot(v);
    };
    auto to_op = [&](const gf2::BitRow &v) {
        std::vector<QubitId> sup;
        for (size_t i = 0; i < idx.n; ++i) {
            if (v.get(i)) {
                sup.push_back(active_data_[i]);
            }
        }
        return t == CheckType::X ? PauliOp::x(sup) : PauliOp::z(sup);
    };

    // Straight strings across the rectangle first: X along a column, Z along a row.
    const Rect &R = state_.rect;
    int lines = t == CheckType::X ? R.cols : R.rows;
    int len = t == CheckType::X ? R.rows : R.cols;
    for (int k = 0; k < lines; ++k) {
        std::vector<QubitId> sup;
        bool ok = true;
        for (int s = 0; s < len && ok; ++s) {
            QubitId q = t == CheckType::X ? lat.data_at(R.row0 + s, R.col0 + k) : lat.data_at(R.row0 + k, R.col0 + s);
            ok = q >= 0 && idx.pos.contains(q);
            sup.push_back(q);
        }
        if (ok) {
            gf2::BitRow v = idx.row(sup);
            if (valid(v)) {
                return to_op(v);
            }
        }
    }
    for (const auto &v : gf2::right_nullspace(opp_rows, idx.n)) {
        if (valid(v)) {
            return to_op(v);
        }
    }
    // Sums of two nullspace vectors cover the case where the partner condition fails.
    auto ns = gf2::right_nullspace(opp_rows, idx.n);
    for (size_t a = 0; a < ns.size(); ++a) {
        for (size_t b = a + 1; b < ns.size(); ++b) {
            gf2::BitRow v = ns[a];
            v ^= ns[b];
            if (valid(v)) {
                return to_op(v);
            }
        }
    }
    throw ValidationError("no logical operator found");
}

std::vector<PauliOp> SurfaceCode::stabilizers_of(CheckType t) const {
    std::vector<PauliOp> out;
    for (const auto &s : stabilizers_) {
        if ((t == CheckType::X ? s.x_support() : s.z_support()).size() > 0) {
            out.push_back(s);
        }
    }
    return out;
}

std::vector<PauliOp> SurfaceCode::checks_of(CheckType t) const {
    std::vector<PauliOp> out;
    for (const auto &c : state_.checks) {
        if (c.type == t) {
            out.push_back(c.op());
        }
    }
    return out;
}

std::vector<QubitId> SurfaceCode::active_qubits() const {
    std::vector<QubitId> out;
    for (size_t i = 0; i < state_.active.size(); ++i) {
        if (state_.active[i]) {
            out.push_back(static_cast<QubitId>(i));
        }
    }
    return out;
}

std::vector<QubitId> SurfaceCode::boundary_data(Side s) const {
    const Rect &R = state_.rect;
    std::vector<QubitId> out;
    bool horizontal = s == Side::Top || s == Side::Bottom;
    int fixed = s == Side::Top ? R.row0 : s == Side::Bottom ? R.row_end() - 1 : s == Side::Left ? R.col0 : R.col_end() - 1;
    int n = horizontal ? R.cols : R.rows;
    for (int k = 0; k < n; ++k) {
        QubitId q = horizontal ? lattice_->data_at(fixed, R.col0 + k) : lattice_->data_at(R.row0 + k, fixed);
        if (q >= 0 && is_active(q)) {
            out.push_back(q);
        }
    }
    return out;
}

nlohmann::json SurfaceCode::to_json() const {
    using nlohmann::json;
    json checks = json::array();
    for (const auto &c : state_.checks) {
        checks.push_back({{"type", to_string(c.type)}, {"data", c.data}, {"origin", c.origin}, {"bridge", c.bridge}});
    }
    auto ops = [](const auto &list) {
        json a = json::array();
        for (const auto &op : list) {
            a.push_back(op.to_string());
        }
        return a;
    };
    json supers = json::array();
    for (const auto &s : supers_) {
        supers.push_back({{"op", s.op.to_string()}, {"constituents", ops(s.constituents)}});
    }
    const Rect &R = state_.rect;
    return {{"topology", to_string(lattice_->topology())},
            {"rect", {{"row0", R.row0}, {"col0", R.col0}, {"rows", R.rows}, {"cols", R.cols}}},
            {"active_data", active_data_},
            {"active_qubits", active_qubits()},
            {"checks", checks},
            {"stabilizers", ops(stabilizers_)},
            {"gauges", ops(gauges_)},
            {"superstabilizers", supers},
            {"logical_x", logical_x_.to_string()},
            {"logical_z", logical_z_.to_string()}};
}

}  // namespace qcal
