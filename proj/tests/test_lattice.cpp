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
#include <set>

#include "doctest.h"
#include "qcal/error.hpp"
#include "qcal/lattice.hpp"

using namespace qcal;

namespace {

size_t count_role(const Lattice &L, QubitRole r) {
    return static_cast<size_t>(std::count_if(L.qubits().begin(), L.qubits().end(), [r](const Qubit &q) { return q.role == r; }));
}

bool connected(const Lattice &L) {
    auto reach = L.ball({0}, static_cast<int>(L.num_qubits()));
    return reach.size() + 1 == L.num_qubits();
}

bool adjacent(const Lattice &L, QubitId a, QubitId b) {
    const auto &n = L.neighbors(a);
    return std::find(n.begin(), n.end(), b) != n.end();
}

// Heavy-hex ancilla count by walking plaquette slots of a d x d patch: every row has
// d-1 three-node segments, every bulk slot adds one connector and every left/right
// weight-2 slot adds its own three-node bridge.
size_t heavy_hex_ancillas_oracle(int d) {
    size_t segments = static_cast<size_t>(d * (d - 1));
    size_t bulk = 0;
    size_t tb = 0;
    for (int i = -1; i < d; ++i) {
        for (int j = -1; j < d; ++j) {
            bool z_type = ((i + j) % 2 + 2) % 2 == 1;
            bool in_r = i >= 0 && i + 1 < d;
            bool in_c = j >= 0 && j + 1 < d;
            if (in_r && in_c) {
                ++bulk;
            } else if (in_r && (j == -1 || j == d - 1) && z_type) {
                ++tb;
            }
        }
    }
    return 3 * segments + bulk + 3 * tb;
}

}  // namespace

TEST_CASE("square lattice counts") {
    for (int d : {3, 5, 7}) {
        auto L = Lattice::build_square(d);
        CHECK(count_role(L, QubitRole::Data) == static_cast<size_t>(d * d));
        CHECK(count_role(L, QubitRole::Syndrome) == static_cast<size_t>(d * d - 1));
        CHECK(connected(L));
        for (const auto &p : L.plaquettes()) {
            size_t w = L.attached_data(p.bridge[0]).size();
            CHECK((w == 2 || w == 4));
        }
    }
    CHECK_THROWS_AS(Lattice::build_square(2), ValidationError);
    CHECK_THROWS_AS(Lattice::build_square(4), ValidationError);
    CHECK_THROWS_AS(Lattice::build_heavy_hex(1), ValidationError);
}

TEST_CASE("plaquette colouring alternates") {
    auto L = Lattice::build_square(5);
    for (const auto &p : L.plaquettes()) {
        int q = L.plaquette_at(p.row, p.col + 1);
        if (q >= 0) {
            CHECK(L.plaquettes()[static_cast<size_t>(q)].type != p.type);
        }
    }
}

TEST_CASE("heavy-hex structure") {
    for (int d : {3, 5}) {
        auto L = Lattice::build_heavy_hex(d);
        CHECK(count_role(L, QubitRole::Data) == static_cast<size_t>(d * d));
        CHECK(L.num_qubits() - static_cast<size_t>(d * d) == heavy_hex_ancillas_oracle(d));
        CHECK(connected(L));
        for (const auto &q : L.qubits()) {
            if (q.role == QubitRole::Data) {
                continue;
            }
            size_t data_nbrs = L.attached_data(q.id).size();
            size_t deg = L.neighbors(q.id).size();
            if (q.role == QubitRole::AncDeg3) {
                CHECK(data_nbrs == 1);
                CHECK(deg <= 3);
            } else {
                CHECK(data_nbrs == 0);
                CHECK(deg == 2);
            }
        }
        for (const auto &p : L.plaquettes()) {
            for (size_t i = 0; i + 1 < p.bridge.size(); ++i) {
                CHECK(adjacent(L, p.bridge[i], p.bridge[i + 1]));
            }
            if (p.bridge.size() == 7) {
                size_t deg3 = static_cast<size_t>(std::count_if(p.bridge.begin(), p.bridge.end(), [&](QubitId a) {
                    return L.classify_ancilla(a) == QubitRole::AncDeg3;
                }));
                CHECK(deg3 == 4);
                CHECK(L.classify_ancilla(p.bridge[3]) == QubitRole::AncHorDeg2);
                CHECK(L.classify_ancilla(p.bridge[1]) == QubitRole::AncVerDeg2);
            }
            // Every data qubit of the plaquette hangs off its bridge.
            std::set<QubitId> reached;
            for (QubitId a : p.bridge) {
                for (QubitId dq : L.attached_data(a)) {
                    reached.insert(dq);
                }
            }
            size_t cells = 0;
            for (auto [r, c] : plaquette_cells(p.row, p.col)) {
                if (L.device().contains(r, c)) {
                    ++cells;
                    CHECK(reached.count(L.data_at(r, c)) == 1);
                }
            }
            CHECK(reached.size() == cells);
        }
    }
    CHECK(Lattice::build_heavy_hex(3).num_qubits() == 9 + 28);
}

TEST_CASE("classify_ancilla guards") {
    auto H = Lattice::build_heavy_hex(3);
    CHECK_THROWS_AS(H.classify_ancilla(0), ValidationError);
    auto S = Lattice::build_square(3);
    CHECK_THROWS_AS(S.classify_ancilla(static_cast<QubitId>(S.num_qubits() - 1)), ValidationError);
}

TEST_CASE("deterministic rebuild and json") {
    auto a = Lattice::build_heavy_hex(5, 1);
    auto b = Lattice::build_heavy_hex(5, 1);
    CHECK(a.to_json() == b.to_json());
    CHECK(a.to_json()["qubits"].size() == a.num_qubits());
    CHECK(a.patch() == Rect{1, 1, 5, 5});
    for (const auto &q : a.qubits()) {
        if (q.role == QubitRole::Data) {
            CHECK(q.coord.row % 2 == 0);
            CHECK(q.coord.col % 2 == 0);
        }
    }
}

TEST_CASE("ball excludes seeds") {
    auto L = Lattice::build_square(3);
    QubitId center = L.data_at(1, 1);
    auto b = L.ball({center}, 1);
    CHECK(b.size() == 4);
    CHECK(std::find(b.begin(), b.end(), center) == b.end());
}
