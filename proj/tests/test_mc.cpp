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
#include <map>
#include <memory>
#include <random>

#include "doctest.h"
#include "qcal/deform.hpp"
#include "qcal/error.hpp"
#include "qcal/mc_decoder.hpp"

using namespace qcal;

namespace {

std::shared_ptr<const Lattice> lat(int d, int margin = 0) {
    return std::make_shared<const Lattice>(Lattice::build(Topology::Square, d, margin));
}

// Syndrome bits of an X-type operator against every Z stabilizer, by commutation.
std::vector<int> z_syndrome(const SurfaceCode &code, const std::vector<QubitId> &xs) {
    std::vector<int> out;
    auto stabs = code.stabilizers_of(CheckType::Z);
    PauliOp e = PauliOp::x(xs);
    for (size_t i = 0; i < stabs.size(); ++i) {
        if (!commutes(stabs[i], e)) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

// Smallest X correction weight per Z syndrome, by enumeration over all data subsets.
std::map<std::vector<int>, int> min_weight_table(const SurfaceCode &code) {
    const auto &data = code.active_data();
    std::map<std::vector<int>, int> best;
    for (uint32_t mask = 0; mask < (1u << data.size()); ++mask) {
        std::vector<QubitId> xs;
        for (size_t i = 0; i < data.size(); ++i) {
            if (mask >> i & 1u) {
                xs.push_back(data[i]);
            }
        }
        auto s = z_syndrome(code, xs);
        auto it = best.find(s);
        int w = static_cast<int>(xs.size());
        if (it == best.end() || w < it->second) {
            best[s] = w;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("syndrome of single flips and stabilizers") {
    auto L = lat(3);
    auto code = SurfaceCode::construct(L);
    Decoder dec(code);
    auto s = dec.syndrome(PauliOp::x({L->data_at(1, 1)}));
    CHECK(s.x_defects.empty());
    CHECK(s.z_defects.size() == 2);
    CHECK(s.z_defects == z_syndrome(code, {L->data_at(1, 1)}));
    s = dec.syndrome(PauliOp::z({L->data_at(1, 1)}));
    CHECK(s.z_defects.empty());
    CHECK(s.x_defects.size() == 2);
    for (auto t : {CheckType::X, CheckType::Z}) {
        for (const auto &st : code.stabilizers_of(t)) {
            auto r = dec.syndrome(st);
            CHECK(r.x_defects.empty());
            CHECK(r.z_defects.empty());
        }
    }
    CHECK(dec.decode({}, {}).is_identity());
    CHECK_FALSE(dec.logical_failure(PauliOp{}));
    CHECK(dec.logical_failure(code.logical_x()));
    CHECK(dec.logical_failure(code.logical_z()));
}

TEST_CASE("single flips are undone") {
    auto L = lat(5);
    auto code = SurfaceCode::construct(L);
    Decoder dec(code);
    for (QubitId q : code.active_data()) {
        for (PauliOp e : {PauliOp::x({q}), PauliOp::z({q})}) {
            auto s = dec.syndrome(e);
            CHECK((s.x_defects.size() + s.z_defects.size()) <= 2);
            PauliOp c = dec.decode(s.x_defects, s.z_defects);
            CHECK(c.weight() == 1);
            CHECK_FALSE(dec.logical_failure(multiply(e, c)));
        }
    }
}

TEST_CASE("corrections reach the minimum weight") {
    auto L = lat(3);
    SUBCASE("pristine") {
        auto code = SurfaceCode::construct(L);
        Decoder dec(code);
        auto table = min_weight_table(code);
        CHECK(table.size() == 16);
        for (const auto &[syn, w] : table) {
            PauliOp c = dec.decode({}, syn);
            CHECK(c.z_support().empty());
            CHECK(z_syndrome(code, c.x_support()) == syn);
            CHECK(static_cast<int>(c.weight()) == w);
        }
    }
    SUBCASE("centre qubit removed") {
        Deformer d(SurfaceCode::construct(L));
        d.data_q_rm(L->data_at(1, 1));
        const auto &code = d.code();
        Decoder dec(code);
        for (const auto &[syn, w] : min_weight_table(code)) {
            PauliOp c = dec.decode({}, syn);
            CHECK(z_syndrome(code, c.x_support()) == syn);
            CHECK(static_cast<int>(c.weight()) == w);
        }
    }
}

TEST_CASE("sampled shots are consistent") {
    auto L = lat(5, 2);
    Deformer d(SurfaceCode::construct(L));
    d.data_q_rm(L->data_at(L->patch().row0 + 2, L->patch().col0 + 2));
    Decoder dec(d.code());
    int decoded = 0;
    for (uint64_t i = 0; i < 300; ++i) {
        auto s = sample_error(d.code(), {0.03}, shot_seed(11, i));
        auto r = dec.syndrome(s.error);
        CHECK(r.x_defects == s.x_defects);
        CHECK(r.z_defects == s.z_defects);
        for (QubitId q : s.error.support()) {
            CHECK(d.code().is_active(q));
        }
        if (s.x_defects.size() > kMaxDefects || s.z_defects.size() > kMaxDefects) {
            continue;
        }
        ++decoded;
        PauliOp c = dec.decode(s.x_defects, s.z_defects);
        auto res = dec.syndrome(multiply(s.error, c));
        CHECK(res.x_defects.empty());
        CHECK(res.z_defects.empty());
        CHECK(c == decode_exact(d.code(), s.x_defects, s.z_defects));
    }
    CHECK(decoded > 250);
}

TEST_CASE("noise sampling matches the flip rate") {
    auto code = SurfaceCode::construct(lat(5));
    auto e = sample_error(code, {0.0}, 3);
    CHECK(e.error.is_identity());
    long long flips = 0;
    const int n = 4000;
    for (int i = 0; i < n; ++i) {
        auto s = sample_error(code, {0.1}, shot_seed(5, static_cast<uint64_t>(i)));
        flips += static_cast<long long>(s.error.x_support().size() + s.error.z_support().size());
    }
    const double trials = 2.0 * n * static_cast<double>(code.active_data().size());
    const double rate = static_cast<double>(flips) / trials;
    CHECK(std::abs(rate - 0.1) < 4 * std::sqrt(0.09 / trials));
    CHECK(sample_error(code, {0.1}, 9).error == sample_error(code, {0.1}, 9).error);
}

TEST_CASE("parallel and serial estimates agree") {
    auto code = SurfaceCode::construct(lat(3));
    auto a = estimate_ler(code, {0.02}, 3000, 42);
    auto b = estimate_ler_serial(code, {0.02}, 3000, 42);
    CHECK(a.failures == b.failures);
    CHECK(a.discarded == b.discarded);
    CHECK(a.ler == b.ler);
    CHECK(a.inconsistent == 0);
    CHECK(a.shots == 3000);
    CHECK(a.failures > 0);
    auto c = estimate_ler(code, {0.02}, 3000, 42);
    CHECK(c.failures == a.failures);
    CHECK(shot_seed(1, 0) != shot_seed(2, 0));
    CHECK(shot_seed(1, 0) != shot_seed(1, 1));
    auto z = estimate_ler(code, {0.0}, 100, 1);
    CHECK(z.failures == 0);
    CHECK(z.ler == 0);
}

TEST_CASE("larger distance suppresses failures") {
    auto d3 = estimate_ler(SurfaceCode::construct(lat(3)), {0.01}, 20000, 7);
    auto d5 = estimate_ler(SurfaceCode::construct(lat(5)), {0.01}, 20000, 7);
    CHECK(d5.ler < d3.ler);
    CHECK(d3.ler - d5.ler > 3 * std::hypot(d3.stderr_, d5.stderr_));
}

TEST_CASE("dense noise is discarded, bad input is rejected") {
    auto code = SurfaceCode::construct(lat(7));
    auto e = estimate_ler(code, {0.3}, 200, 1);
    CHECK(e.discarded > 0);
    CHECK(e.inconsistent == 0);
    Decoder dec(code);
    std::vector<int> many(kMaxDefects + 1);
    for (int i = 0; i <= kMaxDefects; ++i) {
        many[static_cast<size_t>(i)] = i;
    }
    CHECK_THROWS_AS(dec.decode(many, {}), ValidationError);
    CHECK_THROWS_AS(dec.decode({1000}, {}), ValidationError);
    CHECK_THROWS_AS(estimate_ler(code, {0.01}, 0, 1), ValidationError);
    CHECK_THROWS_AS(estimate_ler(code, {0.6}, 10, 1), ValidationError);
    CHECK_THROWS_AS(estimate_ler_serial(code, {-0.1}, 10, 1), ValidationError);
}
