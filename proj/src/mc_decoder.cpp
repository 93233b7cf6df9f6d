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
#include <bit>
#include <cmath>
#include <deque>
#include <iterator>
#include <limits>
#include <map>

#include "qcal/device.hpp"
#include "qcal/error.hpp"
#include "qcal/mc_decoder.hpp"

namespace qcal {

namespace {

bool odd_overlap(const std::vector<QubitId> &a, const std::vector<QubitId> &b) {
    size_t i = 0;
    size_t j = 0;
    bool odd = false;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            odd = !odd;
            ++i;
            ++j;
        }
    }
    return odd;
}

std::vector<QubitId> sym_diff(const std::vector<QubitId> &a, const std::vector<QubitId> &b) {
    std::vector<QubitId> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

void NoiseModel::validate() const {
    if (!(p >= 0 && p <= 0.5)) {
        throw ValidationError("noise p must lie in [0, 0.5]");
    }
}

Decoder::Graph Decoder::build(const std::vector<std::vector<QubitId>> &checks) {
    Graph g;
    g.origins = graphlike_basis(checks);
    g.nodes = static_cast<int>(g.origins.size());
    const int n = g.nodes + 1;
    std::map<QubitId, std::vector<int>> owners;
    for (int i = 0; i < g.nodes; ++i) {
        std::vector<QubitId> sup;
        for (int o : g.origins[static_cast<size_t>(i)]) {
            sup = sym_diff(sup, checks[static_cast<size_t>(o)]);
        }
        for (QubitId q : sup) {
            owners[q].push_back(i);
        }
    }
    // Adjacency: (neighbour, qubit).
    std::vector<std::vector<std::pair<int, QubitId>>> adj(static_cast<size_t>(n));
    for (const auto &[q, own] : owners) {
        if (own.size() > 2) {
            throw ValidationError("checks are not graph-like on qubit " + std::to_string(q));
        }
        const int a = own[0];
        const int b = own.size() == 2 ? own[1] : g.nodes;
        adj[static_cast<size_t>(a)].push_back({b, q});
        adj[static_cast<size_t>(b)].push_back({a, q});
    }
    g.dist.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), -1));
    g.path.assign(static_cast<size_t>(n), std::vector<std::vector<QubitId>>(static_cast<size_t>(n)));
    for (int s = 0; s < n; ++s) {
        auto &dist = g.dist[static_cast<size_t>(s)];
        std::vector<std::pair<int, QubitId>> prev(static_cast<size_t>(n), {-1, -1});
        std::deque<int> queue{s};
        dist[static_cast<size_t>(s)] = 0;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (auto [w, q] : adj[static_cast<size_t>(u)]) {
                if (dist[static_cast<size_t>(w)] < 0) {
                    dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(u)] + 1;
                    prev[static_cast<size_t>(w)] = {u, q};
                    queue.push_back(w);
                }
            }
        }
        for (int t = 0; t < n; ++t) {
            auto &p = g.path[static_cast<size_t>(s)][static_cast<size_t>(t)];
            for (int v = t; dist[static_cast<size_t>(t)] > 0 && v != s; v = prev[static_cast<size_t>(v)].first) {
                p.push_back(prev[static_cast<size_t>(v)].second);
            }
            std::sort(p.begin(), p.end());
        }
    }
    return g;
}

Decoder::Decoder(const SurfaceCode &code) : logical_x_(code.logical_x()), logical_z_(code.logical_z()) {
    for (const auto &s : code.stabilizers_of(CheckType::X)) {
        x_checks_.push_back(s.x_support());
    }
    for (const auto &s : code.stabilizers_of(CheckType::Z)) {
        z_checks_.push_back(s.z_support());
    }
    x_graph_ = build(x_checks_);
    z_graph_ = build(z_checks_);
}

SyndromeSample Decoder::syndrome(const PauliOp &error) const {
    SyndromeSample s;
    s.error = error;
    for (size_t i = 0; i < x_checks_.size(); ++i) {
        if (odd_overlap(x_checks_[i], error.z_support())) {
            s.x_defects.push_back(static_cast<int>(i));
        }
    }
    for (size_t i = 0; i < z_checks_.size(); ++i) {
        if (odd_overlap(z_checks_[i], error.x_support())) {
            s.z_defects.push_back(static_cast<int>(i));
        }
    }
    return s;
}

std::vector<QubitId> Decoder::match(const Graph &g, const std::vector<int> &defects) const {
    std::vector<char> bit;
    for (int d : defects) {
        if (static_cast<size_t>(d) >= bit.size()) {
            bit.resize(static_cast<size_t>(d) + 1, 0);
        }
        bit[static_cast<size_t>(d)] ^= 1;
    }
    std::vector<int> lit;
    for (int i = 0; i < g.nodes; ++i) {
        char on = 0;
        for (int o : g.origins[static_cast<size_t>(i)]) {
            on ^= static_cast<size_t>(o) < bit.size() ? bit[static_cast<size_t>(o)] : 0;
        }
        if (on) {
            lit.push_back(i);
        }
    }
    const int m = static_cast<int>(lit.size());
    if (m > kMaxDefects) {
        throw ValidationError("too many defects for exact matching: " + std::to_string(m));
    }
    const int B = g.nodes;
    constexpr int kInf = std::numeric_limits<int>::max() / 4;
    const size_t full = size_t{1} << m;
    // cost[mask]: cheapest matching of the defects in mask; choice: partner, m for boundary.
    std::vector<int> cost(full, kInf);
    std::vector<int> choice(full, -1);
    cost[0] = 0;
    auto d = [&](int a, int b) {
        int v = g.dist[static_cast<size_t>(a)][static_cast<size_t>(b)];
        return v < 0 ? kInf : v;
    };
    for (size_t mask = 1; mask < full; ++mask) {
        const int i = std::countr_zero(mask);
        const size_t rest = mask & ~(size_t{1} << i);
        const int li = lit[static_cast<size_t>(i)];
        if (cost[rest] < kInf && d(li, B) < kInf && cost[rest] + d(li, B) < cost[mask]) {
            cost[mask] = cost[rest] + d(li, B);
            choice[mask] = m;
        }
        for (int j = i + 1; j < m; ++j) {
            if (!(rest >> j & 1)) {
                continue;
            }
            const size_t r2 = rest & ~(size_t{1} << j);
            const int c = d(li, lit[static_cast<size_t>(j)]);
            if (cost[r2] < kInf && c < kInf && cost[r2] + c < cost[mask]) {
                cost[mask] = cost[r2] + c;
                choice[mask] = j;
            }
        }
    }
    if (cost[full - 1] >= kInf) {
        throw ValidationError("defects cannot be matched");
    }
    std::vector<QubitId> corr;
    for (size_t mask = full - 1; mask;) {
        const int i = std::countr_zero(mask);
        const int j = choice[mask];
        const int a = lit[static_cast<size_t>(i)];
        const int b = j == m ? B : lit[static_cast<size_t>(j)];
        corr = sym_diff(corr, g.path[static_cast<size_t>(a)][static_cast<size_t>(b)]);
        mask &= ~(size_t{1} << i);
        if (j != m) {
            mask &= ~(size_t{1} << j);
        }
    }
    return corr;
}

PauliOp Decoder::decode(const std::vector<int> &x_defects, const std::vector<int> &z_defects) const {
    auto in_range = [](const std::vector<int> &defects, size_t n) {
        for (int d : defects) {
            if (d < 0 || static_cast<size_t>(d) >= n) {
                throw ValidationError("defect index " + std::to_string(d) + " is out of range");
            }
        }
    };
    in_range(x_defects, x_checks_.size());
    in_range(z_defects, z_checks_.size());
    // X checks flag Z errors; Z checks flag X errors.
    return PauliOp(match(z_graph_, z_defects), match(x_graph_, x_defects));
}

bool Decoder::logical_failure(const PauliOp &residual) const {
    return odd_overlap(residual.x_support(), logical_z_.z_support()) ||
           odd_overlap(residual.z_support(), logical_x_.x_support());
}

namespace {

PauliOp draw_error(const std::vector<QubitId> &data, double p, uint64_t seed) {
    Rng rng(seed);
    std::vector<QubitId> x;
    std::vector<QubitId> z;
    for (QubitId q : data) {
        if (rng.uniform() < p) {
            x.push_back(q);
        }
        if (rng.uniform() < p) {
            z.push_back(q);
        }
    }
    return PauliOp(std::move(x), std::move(z));
}

struct ShotOutcome {
    bool failed = false;
    bool discarded = false;
    bool inconsistent = false;
};

ShotOutcome run_shot(const Decoder &dec, const std::vector<QubitId> &data, double p, uint64_t seed) {
    ShotOutcome out;
    const SyndromeSample s = dec.syndrome(draw_error(data, p, seed));
    PauliOp corr;
    try {
        corr = dec.decode(s.x_defects, s.z_defects);
    } catch (const ValidationError &) {
        out.discarded = true;
        return out;
    }
    const SyndromeSample back = dec.syndrome(corr);
    out.inconsistent = back.x_defects != s.x_defects || back.z_defects != s.z_defects;
    out.failed = dec.logical_failure(multiply(s.error, corr));
    return out;
}

LerEstimate finish(long long shots, long long failures, long long discarded, long long inconsistent) {
    LerEstimate e;
    e.shots = shots;
    e.failures = failures;
    e.discarded = discarded;
    e.inconsistent = inconsistent;
    const long long kept = shots - discarded;
    if (kept > 0) {
        e.ler = static_cast<double>(failures) / static_cast<double>(kept);
        e.stderr_ = std::sqrt(e.ler * (1 - e.ler) / static_cast<double>(kept));
    }
    return e;
}

void check_run(const NoiseModel &noise, long long shots) {
    noise.validate();
    if (shots < 1) {
        throw ValidationError("shots must be at least 1");
    }
}

}  // namespace

SyndromeSample sample_error(const SurfaceCode &code, const NoiseModel &noise, uint64_t seed) {
    noise.validate();
    return Decoder(code).syndrome(draw_error(code.active_data(), noise.p, seed));
}

PauliOp decode_exact(const SurfaceCode &code, const std::vector<int> &x_defects, const std::vector<int> &z_defects) {
    return Decoder(code).decode(x_defects, z_defects);
}

uint64_t shot_seed(uint64_t seed, uint64_t shot) {
    uint64_t z = seed + (shot + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

LerEstimate estimate_ler_serial(const SurfaceCode &code, const NoiseModel &noise, long long shots, uint64_t seed) {
    check_run(noise, shots);
    const Decoder dec(code);
    const auto data = code.active_data();
    long long f = 0, disc = 0, bad = 0;
    for (long long i = 0; i < shots; ++i) {
        auto o = run_shot(dec, data, noise.p, shot_seed(seed, static_cast<uint64_t>(i)));
        f += o.failed;
        disc += o.discarded;
        bad += o.inconsistent;
    }
    return finish(shots, f, disc, bad);
}

LerEstimate estimate_ler(const SurfaceCode &code, const NoiseModel &noise, long long shots, uint64_t seed) {
    check_run(noise, shots);
    const Decoder dec(code);
    const auto data = code.active_data();
    long long f = 0, disc = 0, bad = 0;
#pragma omp parallel for reduction(+ : f, disc, bad) schedule(static)
    for (long long i = 0; i < shots; ++i) {
        auto o = run_shot(dec, data, noise.p, shot_seed(seed, static_cast<uint64_t>(i)));
        f += o.failed;
        disc += o.discarded;
        bad += o.inconsistent;
    }
    return finish(shots, f, disc, bad);
}

}  // namespace qcal
