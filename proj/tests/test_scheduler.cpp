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
#include <climits>
#include <cmath>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "qcal/error.hpp"
#include "qcal/scheduler.hpp"

using namespace qcal;

namespace {

std::shared_ptr<const Lattice> square(int d, int m = 0) {
    return std::make_shared<const Lattice>(Lattice::build(Topology::Square, d, m));
}

DeviceParams fast_params() {
    DeviceParams p;
    p.t_cali_1q_h = 0.01;
    p.t_cali_2q_h = 0.03;
    p.t_cali_meas_h = 0.01;
    return p;
}

std::vector<double> lognormal_set(Rng &rng, size_t n) {
    std::vector<double> t;
    double mu = lognormal_mu(14.08, 0.5);
    for (size_t i = 0; i < n; ++i) {
        t.push_back(std::exp(mu + 0.5 * rng.normal()) * std::log10(5.0));
    }
    return t;
}

int find_gate(const DeviceModel &dev, GateKind kind, std::vector<QubitId> qubits) {
    std::sort(qubits.begin(), qubits.end());
    for (const auto &g : dev.gates()) {
        auto q = g.qubits;
        std::sort(q.begin(), q.end());
        if (g.kind == kind && q == qubits) {
            return g.id;
        }
    }
    return -1;
}

// Clusters that need no isolation, for pure batching tests.
std::vector<Cluster> bare_clusters(const std::vector<double> &dur) {
    std::vector<Cluster> c(dur.size());
    for (size_t i = 0; i < dur.size(); ++i) {
        c[i].gates = {static_cast<int>(i)};
        c[i].duration_h = dur[i];
    }
    return c;
}

}  // namespace

TEST_CASE("target rate") {
    auto t = determine_p_tar(3e-4, 3);
    CHECK(t.p_tar == doctest::Approx(1e-3));
    CHECK(0.03 * std::pow(t.p_tar / 0.01, 2.0) == doctest::Approx(3e-4));
    CHECK(std::log(t.p_th / t.p_tar) * (t.d + 1) >= t.lambda * (1 - 1e-12));
    CHECK_THROWS_AS(determine_p_tar(0.03, 3), InfeasibleError);
    CHECK(determine_p_tar(1e-6, 5).p_tar > determine_p_tar(1e-6, 3).p_tar);
    CHECK(determine_p_tar(1e-6, 7).p_tar > determine_p_tar(1e-6, 5).p_tar);
    CHECK_THROWS_AS(determine_p_tar(3e-4, 3, 0.03, 0.01, 1e-3), InfeasibleError);
    CHECK_THROWS_AS(determine_p_tar(0, 3), ValidationError);
    CHECK_THROWS_AS(determine_p_tar(1e-3, 4), ValidationError);
}

TEST_CASE("group assignment examples") {
    auto one = group_assignment(std::vector<double>{10.0});
    CHECK(one.t_cali_h == doctest::Approx(10.0));
    CHECK(one.groups.at(1) == std::vector<int>{0});
    CHECK(frequency(one) == doctest::Approx(0.1));

    auto mixed = group_assignment(std::vector<double>{5, 5, 5, 10, 10});
    CHECK(mixed.t_cali_h == doctest::Approx(5.0));
    CHECK(mixed.groups.at(1).size() == 3);
    CHECK(mixed.groups.at(2).size() == 2);
    CHECK(frequency(mixed) == doctest::Approx(0.80).epsilon(1e-12));

    std::vector<double> regroup{5, 8, 9, 12, 14};
    CHECK(frequency_at(regroup, 5.0) == doctest::Approx(0.80));
    CHECK(frequency_at(regroup, 4.0) == doctest::Approx(2.0 / 3.0));
    auto g = group_assignment(regroup);
    CHECK(frequency(g) <= 2.0 / 3.0);
    CHECK(frequency(g) == doctest::Approx(oracle::grid_min_freq(regroup)));

    CHECK(frequency(CalibrationGroups{}) == 0.0);
    CHECK_THROWS_AS(group_assignment(std::vector<double>{}), ValidationError);
    CHECK_THROWS_AS(group_assignment(std::vector<double>{1.0, -2.0}), ValidationError);
}

TEST_CASE("group assignment against the grid oracle") {
    Rng rng(2024);
    int matches = 0;
    const int trials = 300;
    for (int trial = 0; trial < trials; ++trial) {
        auto t = lognormal_set(rng, 1 + static_cast<size_t>(rng.next() % 20));
        auto g = group_assignment(t);
        double T = g.t_cali_h;
        for (size_t i = 0; i < t.size(); ++i) {
            int k = g.k_of(static_cast<int>(i));
            CHECK(k * T <= t[i]);
            CHECK(t[i] < (k + 1) * T);
        }
        double f = frequency(g);
        double t_min = *std::min_element(t.begin(), t.end());
        CHECK(f <= oracle::freq(t, t_min) * (1 + 1e-12));
        double best = oracle::grid_min_freq(t, 1e-3);
        CHECK(f >= best * (1 - 1e-9));
        matches += std::abs(f - best) <= 1e-9 * best;
    }
    CHECK(matches >= trials * 99 / 100);
}

TEST_CASE("device groups name an out-of-spec gate") {
    auto dev = synthesize_device(square(3), {}, 1);
    try {
        group_assignment(dev, {0, 1, 2}, 1e-3);
        FAIL("expected InfeasibleError");
    } catch (const InfeasibleError &e) {
        CHECK(std::string(e.what()).find("gate 0") != std::string::npos);
    }
}

TEST_CASE("dependency clusters") {
    auto L = square(3);
    auto dev = synthesize_device(L, {}, 1);
    QubitId a = L->data_at(1, 1);
    QubitId b = L->neighbors(a)[0];
    QubitId c = L->data_at(0, 0);
    int cx = find_gate(dev, GateKind::TwoQ, {a, b});
    REQUIRE(cx >= 0);
    auto cl = cluster_dependencies({cx, a, b}, dev);
    REQUIRE(cl.size() == 1);
    CHECK(cl[0].gates == std::vector<int>{a, b, cx});
    CHECK(cl[0].duration_h == doctest::Approx(dev.gate(a).t_cali_h + dev.gate(b).t_cali_h + dev.gate(cx).t_cali_h));

    auto single = cluster_dependencies({a, c}, dev);
    CHECK(single.size() == 2);

    // A second coupler on b runs after the cluster that owns b's 1Q calibration.
    QubitId e = L->neighbors(b)[0] == a ? L->neighbors(b)[1] : L->neighbors(b)[0];
    int cx2 = find_gate(dev, GateKind::TwoQ, {b, e});
    REQUIRE(cx2 >= 0);
    auto chain = cluster_dependencies({a, b, e, cx, cx2}, dev);
    REQUIRE(chain.size() == 2);
    CHECK(chain[1].after == std::vector<int>{0});
    CHECK(chain[0].after.empty());
}

TEST_CASE("batching without isolation") {
    auto code = SurfaceCode::construct(square(5));
    auto cl = bare_clusters({0.1, 0.2, 0.3});
    ClusterConflicts none(3, std::vector<bool>(3, false));
    auto p = greedy_batches(cl, none, 1, code, 10.0);
    CHECK(p.batches.size() == 1);
    CHECK(p.wall_h == doctest::Approx(0.3));

    ClusterConflicts all(3, std::vector<bool>(3, true));
    auto q = greedy_batches(cl, all, 1, code, 10.0);
    CHECK(q.batches.size() == 3);
    CHECK(q.wall_h == doctest::Approx(0.6));
    CHECK_THROWS_AS(greedy_batches(cl, all, 1, code, 0.5), InfeasibleError);

    Rng rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const size_t n = 5;
        std::vector<double> dur;
        for (size_t i = 0; i < n; ++i) {
            dur.push_back(0.05 + 0.3 * rng.uniform());
        }
        ClusterConflicts conf(n, std::vector<bool>(n, false));
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = i + 1; j < n; ++j) {
                conf[i][j] = conf[j][i] = rng.uniform() < 0.4;
            }
        }
        auto clusters = bare_clusters(dur);
        auto plan = greedy_batches(clusters, conf, 1, code, 100.0);
        auto again = greedy_batches(clusters, conf, 1, code, 100.0);
        CHECK(plan.wall_h == again.wall_h);
        std::multiset<int> seen;
        for (const auto &b : plan.batches) {
            for (size_t i = 0; i < b.clusters.size(); ++i) {
                seen.insert(b.clusters[i]);
                for (size_t j = i + 1; j < b.clusters.size(); ++j) {
                    CHECK_FALSE(conf[static_cast<size_t>(b.clusters[i])][static_cast<size_t>(b.clusters[j])]);
                }
            }
        }
        CHECK(seen == std::multiset<int>{0, 1, 2, 3, 4});
        double best = oracle::best_partition(dur, conf);
        CHECK(plan.wall_h >= best - 1e-12);
        CHECK(plan.wall_h <= 2.0 * best);
    }
}

TEST_CASE("batching with measured distance loss") {
    auto L = square(5);
    auto dev = synthesize_device(L, fast_params(), 3);
    auto code = SurfaceCode::construct(L);
    const auto gates = code_gates(dev, code);
    auto clusters = cluster_dependencies(std::vector<int>(gates.begin(), gates.begin() + 30), dev);
    auto conf = cluster_conflicts(clusters, conflicts(dev));
    for (int bound : {3, 4}) {
        auto plan = greedy_batches(clusters, conf, bound, code, 100.0);
        for (const auto &b : plan.batches) {
            CHECK(b.delta_d <= bound);
            Deformer d(code);
            d.apply_all(b.instructions);
            CHECK(5 - d.distance() == b.delta_d);
            for (int x : b.gates) {
                for (int y : b.gates) {
                    bool same = false;
                    for (const auto &c : clusters) {
                        bool hx = std::count(c.gates.begin(), c.gates.end(), x) > 0;
                        bool hy = std::count(c.gates.begin(), c.gates.end(), y) > 0;
                        same = same || (hx && hy);
                    }
                    if (!same) {
                        CHECK_FALSE(conflicts(dev).conflict(x, y));
                    }
                }
            }
        }
    }
    auto best = optimize_delta_d(clusters, conf, code, 100.0);
    auto seq = sequential_batches(clusters, code, 100.0);
    auto wide = greedy_batches(clusters, conf, INT_MAX, code, 100.0);
    CHECK(best.cost() <= seq.cost() + 1e-12);
    CHECK(best.cost() <= wide.cost() + 1e-12);

    auto lone = std::vector<Cluster>{clusters[0]};
    auto lone_plan = optimize_delta_d(lone, ClusterConflicts(1, std::vector<bool>(1, false)), code, 100.0);
    REQUIRE(lone_plan.batches.size() == 1);
    CHECK(lone_plan.cost() == doctest::Approx(lone_plan.batches[0].delta_d * clusters[0].duration_h));
}

TEST_CASE("full schedule") {
    auto L = square(5);
    auto dev = synthesize_device(L, fast_params(), 1);
    auto code = SurfaceCode::construct(L);
    SchedulerConfig cfg;
    cfg.ler_tar = 3.75e-3;
    cfg.horizon_h = 24.0;
    cfg.enlarge = false;
    auto s = build_schedule(dev, code, cfg);
    CHECK(s.target.p_tar == doctest::Approx(5e-3));
    CHECK(validate_schedule(s, dev, code).empty());
    CHECK(s.firings.size() == static_cast<size_t>(std::floor(24.0 / s.groups.t_cali_h)));
    auto j = s.to_json();
    CHECK(Schedule::from_json(nlohmann::json::parse(j.dump())).to_json() == j);
    CHECK(build_schedule(dev, code, cfg).to_json().dump() == j.dump());

    // Tampering is caught.
    auto bad = s;
    auto busy = std::find_if(bad.firings.begin(), bad.firings.end(), [](const Firing &f) { return !f.plan.batches.empty(); });
    REQUIRE(busy != bad.firings.end());
    busy->plan.batches.pop_back();
    CHECK_FALSE(validate_schedule(bad, dev, code).empty());

    cfg.ler_tar = 1e-9;
    CHECK_THROWS_AS(build_schedule(dev, code, cfg), InfeasibleError);
}

TEST_CASE("uniform drift gives one group") {
    auto L = square(5);
    auto dev0 = synthesize_device(L, fast_params(), 1);
    std::vector<GateProfile> gates = dev0.gates();
    for (auto &g : gates) {
        g.t_drift_h = 20.0;
    }
    DeviceModel dev(L, dev0.params(), 1, gates);
    auto code = SurfaceCode::construct(L);
    SchedulerConfig cfg;
    cfg.ler_tar = 3.75e-3;
    cfg.horizon_h = 30.0;
    auto s = build_schedule(dev, code, cfg);
    CHECK(s.groups.groups.size() == 1);
    CHECK(s.groups.t_cali_h == doctest::Approx(20.0 * std::log10(5.0)));
}
