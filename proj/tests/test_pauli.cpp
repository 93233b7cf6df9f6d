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

#include <random>

#include "doctest.h"
#include "qcal/code.hpp"
#include "qcal/gf2.hpp"
#include "qcal/pauli.hpp"

using namespace qcal;

namespace {

// Membership by enumerating every subset product; independent of elimination.
bool in_group_by_subsets(const PauliOp &op, const std::vector<PauliOp> &gens) {
    size_t m = gens.size();
    for (uint64_t mask = 0; mask < (uint64_t{1} << m); ++mask) {
        PauliOp p;
        for (size_t i = 0; i < m; ++i) {
            if (mask >> i & 1) {
                p = multiply(p, gens[i]);
            }
        }
        if (p == op) {
            return true;
        }
    }
    return false;
}

PauliOp random_op(std::mt19937 &rng, int n) {
    std::vector<QubitId> xs;
    std::vector<QubitId> zs;
    for (int q = 0; q < n; ++q) {
        if (rng() & 1) {
            xs.push_back(q);
        }
        if (rng() & 1) {
            zs.push_back(q);
        }
    }
    return PauliOp(xs, zs);
}

}  // namespace

TEST_CASE("commutation of small operators") {
    CHECK_FALSE(commutes(PauliOp::x({1}), PauliOp::z({1})));
    CHECK(commutes(PauliOp::x({1}), PauliOp::z({2})));
    CHECK_FALSE(commutes(PauliOp::x({1, 2}), PauliOp::z({2, 3})));
    CHECK(commutes(PauliOp::x({1, 2}), PauliOp::z({1, 2})));
}

TEST_CASE("multiplication") {
    PauliOp a({1, 4}, {2, 4});
    CHECK(multiply(a, PauliOp()) == a);
    CHECK(multiply(a, a).is_identity());
    CHECK(multiply(PauliOp::z({1, 2, 3, 4}), PauliOp::z({3, 4, 5, 6})) == PauliOp::z({1, 2, 5, 6}));
    CHECK(a.weight() == 3);
    CHECK(PauliOp::x({3, 3, 5}) == PauliOp::x({5}));
}

TEST_CASE("algebraic laws on random operators") {
    std::mt19937 rng(7);
    for (int t = 0; t < 200; ++t) {
        PauliOp a = random_op(rng, 8);
        PauliOp b = random_op(rng, 8);
        PauliOp c = random_op(rng, 8);
        CHECK(multiply(a, b) == multiply(b, a));
        CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
        CHECK(multiply(multiply(a, b), b) == a);
        CHECK(commutes(a, b) == commutes(b, a));
    }
}

TEST_CASE("in_group agrees with subset enumeration") {
    std::mt19937 rng(11);
    for (int t = 0; t < 100; ++t) {
        std::vector<PauliOp> gens;
        for (int i = 0; i < 5; ++i) {
            gens.push_back(random_op(rng, 5));
        }
        PauliOp probe = (t % 2) ? multiply(gens[0], gens[3]) : random_op(rng, 5);
        CHECK(in_group(probe, gens) == in_group_by_subsets(probe, gens));
    }
    StabilizerSet s;
    s.add(PauliOp::x({0, 1}));
    CHECK(in_group(PauliOp(), s));
    CHECK(in_group(PauliOp::x({0, 1}), s));
}

TEST_CASE("rank and independence") {
    StabilizerSet s;
    s.add(PauliOp::z({0, 1}));
    s.add(PauliOp::z({1, 2}));
    CHECK(s.independent());
    s.add(PauliOp::z({0, 2}));
    CHECK_FALSE(s.independent());
    CHECK(s.rank() == 2);
    CHECK(s.stabilizers_commute());
}

TEST_CASE("gf2 nullspaces") {
    std::vector<gf2::BitRow> rows;
    for (int r = 0; r < 3; ++r) {
        rows.emplace_back(4);
    }
    rows[0].set(0);
    rows[0].set(1);
    rows[1].set(1);
    rows[1].set(2);
    rows[2].set(0);
    rows[2].set(2);
    auto left = gf2::left_nullspace(rows);
    REQUIRE(left.size() == 1);
    CHECK(left[0].popcount() == 3);
    auto right = gf2::right_nullspace(rows, 4);
    CHECK(right.size() == 2);
    for (const auto &v : right) {
        for (const auto &r : rows) {
            CHECK_FALSE(r.dot(v));
        }
    }
}

TEST_CASE("logical Z of the d=3 code is outside the stabilizer group") {
    auto code = SurfaceCode::construct(Lattice::build_square(3));
    CHECK_FALSE(in_group(code.logical_z(), code.stabilizers()));
    CHECK_FALSE(in_group_by_subsets(code.logical_z(), code.stabilizers().generators()));
    CHECK_FALSE(commutes(code.logical_x(), code.logical_z()));
    for (const auto &s : code.stabilizers()) {
        CHECK(commutes(s, code.logical_x()));
        CHECK(commutes(s, code.logical_z()));
    }
}
