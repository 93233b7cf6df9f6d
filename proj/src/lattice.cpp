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

#include "qcal/lattice.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>

#include "qcal/error.hpp"

namespace qcal {

std::string_view to_string(Topology t) { return t == Topology::Square ? "square" : "heavy_hex"; }

std::string_view to_string(QubitRole r) {
    switch (r) {
    case QubitRole::Data:
        return "Data";
    case QubitRole::Syndrome:
        return "Syndrome";
    case QubitRole::AncDeg3:
        return "AncDeg3";
    case QubitRole::AncHorDeg2:
        return "AncHorDeg2";
    case QubitRole::AncVerDeg2:
        return "AncVerDeg2";
    }
    return "?";
}

std::string_view to_string(CheckType t) { return t == CheckType::X ? "X" : "Z"; }

Topology topology_from_string(std::string_view s) {
    if (s == "square") {
        return Topology::Square;
    }
    if (s == "heavy_hex" || s == "heavy-hex" || s == "heavyhex") {
        return Topology::HeavyHex;
    }
    throw ValidationError("unknown topology: " + std::string(s));
}

CheckType plaquette_type(int row, int col) { return (((row + col) % 2) + 2) % 2 == 0 ? CheckType::X : CheckType::Z; }

std::vector<std::pair<int, int>> plaquette_cells(int row, int col) {
    return {{row, col}, {row + 1, col}, {row, col + 1}, {row + 1, col + 1}};
}

bool plaquette_in_code(const Rect &patch, int row, int col) {
    int inside = 0;
    for (auto [r, c] : plaquette_cells(row, col)) {
        inside += patch.contains(r, c) ? 1 : 0;
    }
    if (inside == 4) {
        return true;
    }
    if (inside != 2) {
        return false;
    }
    CheckType t = plaquette_type(row, col);
    if (row == patch.row0 - 1 || row == patch.row_end() - 1) {
        return t == CheckType::X;
    }
    return t == CheckType::Z;
}

Lattice Lattice::build_square(int d, int margin) { return build(Topology::Square, d, margin); }
Lattice Lattice::build_heavy_hex(int d, int margin) { return build(Topology::HeavyHex, d, margin); }

Lattice Lattice::build(Topology topology, int d, int margin) {
    if (d < 3 || d % 2 == 0 || margin < 0) {
        throw ValidationError("lattice needs odd d >= 3 and margin >= 0");
    }
    Rect device{0, 0, d + 2 * margin, d + 2 * margin};
    Rect patch{margin, margin, d, d};
    return build_impl(topology, device, patch, d);
}

Lattice Lattice::build_rect(Topology topology, int rows, int cols) {
    if (rows < 2 || cols < 2) {
        throw ValidationError("rectangular patch needs at least 2x2 data qubits");
    }
    Rect r{0, 0, rows, cols};
    return build_impl(topology, r, r, std::min(rows, cols));
}

QubitId Lattice::add_qubit(QubitRole role, Coord c) {
    auto id = static_cast<QubitId>(qubits_.size());
    qubits_.push_back({id, role, c});
    adjacency_.emplace_back();
    attached_.emplace_back();
    anc_plaquettes_.emplace_back();
    return id;
}

void Lattice::add_edge(QubitId a, QubitId b) {
    auto &na = adjacency_[static_cast<size_t>(a)];
    if (std::find(na.begin(), na.end(), b) != na.end()) {
        return;
    }
    na.push_back(b);
    adjacency_[static_cast<size_t>(b)].push_back(a);
    edges_.emplace_back(std::min(a, b), std::max(a, b));
    if (is_data(a) != is_data(b)) {
        QubitId anc = is_data(a) ? b : a;
        attached_[static_cast<size_t>(anc)].push_back(is_data(a) ? a : b);
    }
}

Lattice Lattice::build_impl(Topology topology, Rect device, Rect patch, int declared_d) {
    Lattice L;
    L.topology_ = topology;
    L.distance_ = declared_d;
    L.device_ = device;
    L.patch_ = patch;
    const int scale = topology == Topology::Square ? 2 : 4;

    L.data_grid_.assign(static_cast<size_t>(device.rows * device.cols), -1);
    for (int r = device.row0; r < device.row_end(); ++r) {
        for (int c = device.col0; c < device.col_end(); ++c) {
            L.data_grid_[static_cast<size_t>((r - device.row0) * device.cols + (c - device.col0))] =
                L.add_qubit(QubitRole::Data, {scale * r, scale * c});
        }
    }

    // Heavy-hex horizontal segments u-m-v joining data (r, j) and (r, j + 1).
    std::map<std::pair<int, int>, std::array<QubitId, 3>> seg;
    if (topology == Topology::HeavyHex) {
        for (int r = device.row0; r < device.row_end(); ++r) {
            for (int j = device.col0; j + 1 < device.col_end(); ++j) {
                QubitId u = L.add_qubit(QubitRole::AncDeg3, {4 * r, 4 * j + 1});
                QubitId m = L.add_qubit(QubitRole::AncVerDeg2, {4 * r, 4 * j + 2});
                QubitId v = L.add_qubit(QubitRole::AncDeg3, {4 * r, 4 * j + 3});
                L.add_edge(L.data_at(r, j), u);
                L.add_edge(u, m);
                L.add_edge(m, v);
                L.add_edge(v, L.data_at(r, j + 1));
                seg[{r, j}] = {u, m, v};
            }
        }
    }

    L.plaquette_grid_.assign(static_cast<size_t>((device.rows + 1) * (device.cols + 1)), -1);
    for (int i = device.row0 - 1; i < device.row_end(); ++i) {
        for (int j = device.col0 - 1; j < device.col_end(); ++j) {
            if (!plaquette_in_code(device, i, j)) {
                continue;
            }
            Plaquette p;
            p.index = static_cast<int>(L.plaquettes_.size());
            p.row = i;
            p.col = j;
            p.type = plaquette_type(i, j);
            if (topology == Topology::Square) {
                QubitId s = L.add_qubit(QubitRole::Syndrome, {2 * i + 1, 2 * j + 1});
                for (auto [r, c] : plaquette_cells(i, j)) {
                    if (device.contains(r, c)) {
                        L.add_edge(s, L.data_at(r, c));
                    }
                }
                p.bridge = {s};
            } else if (i == device.row0 - 1 || i == device.row_end() - 1) {
                int r = i == device.row0 - 1 ? device.row0 : device.row_end() - 1;
                auto sg = seg.at({r, j});
                p.bridge = {sg[0], sg[1], sg[2]};
            } else if (j == device.col0 - 1 || j == device.col_end() - 1) {
                int c = j == device.col0 - 1 ? device.col0 : device.col_end() - 1;
                int dc = j == device.col0 - 1 ? -1 : 1;
                QubitId h1 = L.add_qubit(QubitRole::AncDeg3, {4 * i + 1, 4 * c + dc});
                QubitId h2 = L.add_qubit(QubitRole::AncHorDeg2, {4 * i + 2, 4 * c + dc});
                QubitId h3 = L.add_qubit(QubitRole::AncDeg3, {4 * i + 3, 4 * c + dc});
                L.add_edge(L.data_at(i, c), h1);
                L.add_edge(h1, h2);
                L.add_edge(h2, h3);
                L.add_edge(h3, L.data_at(i + 1, c));
                p.bridge = {h1, h2, h3};
            } else {
                // S-shaped bridge; the connector side alternates by row so no node exceeds degree 3.
                auto t = seg.at({i, j});
                auto b = seg.at({i + 1, j});
                bool right = ((i % 2) + 2) % 2 == 0;
                QubitId conn = L.add_qubit(QubitRole::AncHorDeg2, {4 * i + 2, right ? 4 * j + 3 : 4 * j + 1});
                if (right) {
                    L.add_edge(t[2], conn);
                    L.add_edge(conn, b[2]);
                    p.bridge = {t[0], t[1], t[2], conn, b[2], b[1], b[0]};
                } else {
                    L.add_edge(t[0], conn);
                    L.add_edge(conn, b[0]);
                    p.bridge = {t[2], t[1], t[0], conn, b[0], b[1], b[2]};
                }
            }
            for (QubitId q : p.bridge) {
                L.anc_plaquettes_[static_cast<size_t>(q)].push_back(p.index);
            }
            L.plaquette_grid_[static_cast<size_t>((i - device.row0 + 1) * (device.cols + 1) + (j - device.col0 + 1))] =
                p.index;
            L.plaquettes_.push_back(std::move(p));
        }
    }
    for (auto &a : L.attached_) {
        std::sort(a.begin(), a.end());
    }
    std::sort(L.edges_.begin(), L.edges_.end());
    return L;
}

QubitId Lattice::data_at(int r, int c) const {
    if (!device_.contains(r, c)) {
        return -1;
    }
    return data_grid_[static_cast<size_t>((r - device_.row0) * device_.cols + (c - device_.col0))];
}

std::pair<int, int> Lattice::cell_of(QubitId data) const {
    if (!is_data(data)) {
        throw ValidationError("qubit " + std::to_string(data) + " is not a data qubit");
    }
    const int scale = topology_ == Topology::Square ? 2 : 4;
    const Coord &c = qubit(data).coord;
    return {c.row / scale, c.col / scale};
}

int Lattice::plaquette_at(int row, int col) const {
    int i = row - device_.row0 + 1;
    int j = col - device_.col0 + 1;
    if (i < 0 || j < 0 || i > device_.rows || j > device_.cols) {
        return -1;
    }
    return plaquette_grid_[static_cast<size_t>(i * (device_.cols + 1) + j)];
}

QubitRole Lattice::classify_ancilla(QubitId q) const {
    if (q < 0 || static_cast<size_t>(q) >= qubits_.size()) {
        throw ValidationError("qubit id out of range");
    }
    QubitRole r = qubit(q).role;
    if (r == QubitRole::Data || r == QubitRole::Syndrome) {
        throw ValidationError("qubit " + std::to_string(q) + " is not a heavy-hex ancilla");
    }
    return r;
}

std::vector<QubitId> Lattice::ball(const std::vector<QubitId> &seeds, int radius) const {
    std::vector<int> dist(qubits_.size(), -1);
    std::deque<QubitId> queue;
    for (QubitId s : seeds) {
        if (dist[static_cast<size_t>(s)] < 0) {
            dist[static_cast<size_t>(s)] = 0;
            queue.push_back(s);
        }
    }
    std::vector<QubitId> out;
    while (!queue.empty()) {
        QubitId q = queue.front();
        queue.pop_front();
        int dq = dist[static_cast<size_t>(q)];
        if (dq > 0) {
            out.push_back(q);
        }
        if (dq == radius) {
            continue;
        }
        for (QubitId n : neighbors(q)) {
            if (dist[static_cast<size_t>(n)] < 0) {
                dist[static_cast<size_t>(n)] = dq + 1;
                queue.push_back(n);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

nlohmann::json Lattice::to_json() const {
    using nlohmann::json;
    auto rect = [](const Rect &r) { return json{{"row0", r.row0}, {"col0", r.col0}, {"rows", r.rows}, {"cols", r.cols}}; };
    json qs = json::array();
    for (const auto &q : qubits_) {
        qs.push_back({{"id", q.id}, {"role", to_string(q.role)}, {"coord", {q.coord.row, q.coord.col}}});
    }
    json es = json::array();
    for (auto [a, b] : edges_) {
        es.push_back({a, b});
    }
    json ps = json::array();
    for (const auto &p : plaquettes_) {
        ps.push_back({{"row", p.row}, {"col", p.col}, {"type", to_string(p.type)}, {"bridge", p.bridge}});
    }
    return {{"topology", to_string(topology_)}, {"distance", distance_}, {"device", rect(device_)},
            {"patch", rect(patch_)}, {"qubits", qs}, {"edges", es}, {"plaquettes", ps}};
}

}  // namespace qcal
