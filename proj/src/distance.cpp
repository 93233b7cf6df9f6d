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
#include <cstdint>
#include <deque>
#include <iterator>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "qcal/code.hpp"
#include "qcal/error.hpp"

namespace qcal {

namespace {

const std::vector<QubitId> &support_of(const PauliOp &op, CheckType t) {
    return t == CheckType::X ? op.x_support() : op.z_support();
}

CheckType opposite(CheckType t) { return t == CheckType::X ? CheckType::Z : CheckType::X; }

struct Edge {
    int a;
    int b;
    int parity;
};

using Checks = std::vector<std::vector<QubitId>>;

// Sum over qubits of max(0, checks containing it - 2), then total weight.
std::pair<long, long> overlap_score(const Checks &c) {
    std::unordered_map<QubitId, int> deg;
    long w = 0;
    for (const auto &s : c) {
        w += static_cast<long>(s.size());
        for (QubitId q : s) {
            ++deg[q];
        }
    }
    long ex = 0;
    for (const auto &[q, k] : deg) {
        ex += std::max(0, k - 2);
    }
    return {ex, w};
}

}  // namespace

std::vector<std::vector<int>> graphlike_basis(const std::vector<std::vector<QubitId>> &checks) {
    using Origins = std::vector<std::vector<int>>;
    Origins ident(checks.size());
    for (size_t i = 0; i < checks.size(); ++i) {
        ident[i] = {static_cast<int>(i)};
    }
    if (overlap_score(checks).first == 0) {
        return ident;
    }
    struct Item {
        std::pair<long, long> score;
        Checks c;
        Origins o;
    };
    auto cmp = [](const Item &a, const Item &b) { return a.score > b.score; };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> open(cmp);
    std::set<Checks> seen{checks};
    open.push({overlap_score(checks), checks, ident});
    for (int expanded = 0; !open.empty() && expanded < 5000; ++expanded) {
        Item cur = open.top();
        open.pop();
        if (cur.score.first == 0) {
            return cur.o;
        }
        const Checks &c = cur.c;
        std::map<QubitId, std::vector<int>> owners;
        for (size_t i = 0; i < c.size(); ++i) {
            for (QubitId q : c[i]) {
                owners[q].push_back(static_cast<int>(i));
            }
        }
        for (const auto &[q, own] : owners) {
            if (own.size() <= 2) {
                continue;
            }
            for (int a : own) {
                for (int b : own) {
                    if (a == b) {
                        continue;
                    }
                    const auto &sa = c[static_cast<size_t>(a)];
                    const auto &sb = c[static_cast<size_t>(b)];
                    std::vector<QubitId> prod;
                    std::set_symmetric_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(prod));
                    if (prod.empty()) {
                        continue;
                    }
                    Checks next = c;
                    next[static_cast<size_t>(a)] = std::move(prod);
                    if (seen.insert(next).second) {
                        Origins o = cur.o;
                        const auto &oa = cur.o[static_cast<size_t>(a)];
                        const auto &ob = cur.o[static_cast<size_t>(b)];
                        std::vector<int> mixed;
                        std::set_symmetric_difference(oa.begin(), oa.end(), ob.begin(), ob.end(),
                                                      std::back_inserter(mixed));
                        o[static_cast<size_t>(a)] = std::move(mixed);
                        auto sc = overlap_score(next);
                        open.push({sc, std::move(next), std::move(o)});
                    }
                }
            }
        }
    }
    return ident;
}

int distance_graph(const SurfaceCode &code, CheckType basis) {
    CheckType o = opposite(basis);
    std::vector<std::vector<QubitId>> nodes;
    for (const auto &st : code.stabilizers_of(o)) {
        nodes.push_back(support_of(st, o));
    }
    const int boundary = static_cast<int>(nodes.size());
    {
        std::vector<std::vector<QubitId>> merged;
        for (const auto &o : graphlike_basis(nodes)) {
            std::vector<QubitId> sup;
            for (int i : o) {
                std::vector<QubitId> next;
                const auto &n = nodes[static_cast<size_t>(i)];
                std::set_symmetric_difference(sup.begin(), sup.end(), n.begin(), n.end(), std::back_inserter(next));
                sup = std::move(next);
            }
            merged.push_back(std::move(sup));
        }
        nodes = std::move(merged);
    }
    std::unordered_map<QubitId, std::vector<int>> owners;
    for (int i = 0; i < boundary; ++i) {
        for (QubitId q : nodes[static_cast<size_t>(i)]) {
            owners[q].push_back(i);
        }
    }
    const auto &ref = support_of(code.logical(o), o);
    std::vector<Edge> edges;
    for (QubitId q : code.active_data()) {
        int p = std::binary_search(ref.begin(), ref.end(), q) ? 1 : 0;
        auto it = owners.find(q);
        size_t deg = it == owners.end() ? 0 : it->second.size();
        if (deg == 0) {
            edges.push_back({boundary, boundary, p});
        } else if (deg == 1) {
            edges.push_back({it->second[0], boundary, p});
        } else if (deg == 2) {
            edges.push_back({it->second[0], it->second[1], p});
        } else {
            throw std::logic_error("data qubit " + std::to_string(q) + " lies in more than two stabilizers");
        }
    }
    const int n = boundary + 1;
    // Parity double cover: node (v, s) has index 2v + s.
    std::vector<std::vector<int>> adj(static_cast<size_t>(2 * n));
    for (const auto &e : edges) {
        for (int s = 0; s < 2; ++s) {
            int u = 2 * e.a + s;
            int w = 2 * e.b + (s ^ e.parity);
            adj[static_cast<size_t>(u)].push_back(w);
            adj[static_cast<size_t>(w)].push_back(u);
        }
    }
    int best = -1;
    std::vector<int> dist(static_cast<size_t>(2 * n));
    for (int v = 0; v < n; ++v) {
        std::fill(dist.begin(), dist.end(), -1);
        std::deque<int> queue{2 * v};
        dist[static_cast<size_t>(2 * v)] = 0;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            int du = dist[static_cast<size_t>(u)];
            if (best >= 0 && du + 1 >= best) {
                break;
            }
            for (int w : adj[static_cast<size_t>(u)]) {
                if (dist[static_cast<size_t>(w)] < 0) {
                    dist[static_cast<size_t>(w)] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        int d = dist[static_cast<size_t>(2 * v + 1)];
        if (d > 0 && (best < 0 || d < best)) {
            best = d;
        }
    }
    if (best < 0) {
        throw ValidationError("no logical operator path: deformed code is invalid");
    }
    return best;
}

int distance_bruteforce(const std::vector<QubitId> &data, const std::vector<PauliOp> &stabilizers,
                        const std::vector<PauliOp> &same_type_checks, CheckType basis) {
    const size_t n = data.size();
    if (n > 30) {
        throw ValidationError("exhaustive distance limited to 30 data qubits");
    }
    if (n == 0) {
        throw ValidationError("no data qubits");
    }
    std::unordered_map<QubitId, int> bit;
    for (size_t i = 0; i < n; ++i) {
        bit[data[i]] = static_cast<int>(i);
    }
    auto mask_of = [&](const std::vector<QubitId> &sup) {
        uint32_t m = 0;
        for (QubitId q : sup) {
            auto it = bit.find(q);
            if (it != bit.end()) {
                m ^= uint32_t{1} << it->second;
            }
        }
        return m;
    };
    CheckType o = opposite(basis);
    std::vector<uint32_t> stab;
    for (const auto &s : stabilizers) {
        stab.push_back(mask_of(support_of(s, o)));
    }
    // Row echelon over masks; pivot = highest set bit.
    std::vector<uint32_t> echelon;
    auto reduce = [&](uint32_t v) {
        for (uint32_t r : echelon) {
            v = std::min(v, v ^ r);
        }
        return v;
    };
    for (const auto &g : same_type_checks) {
        uint32_t v = reduce(mask_of(support_of(g, basis)));
        if (v != 0) {
            echelon.push_back(v);
            std::sort(echelon.begin(), echelon.end(), std::greater<>());
        }
    }
    const uint64_t limit = uint64_t{1} << n;
    for (size_t w = 1; w <= n; ++w) {
        // Gosper's hack enumerates all n-bit masks of weight w.
        uint64_t m = (uint64_t{1} << w) - 1;
        while (m < limit) {
            auto e = static_cast<uint32_t>(m);
            bool ok = std::all_of(stab.begin(), stab.end(), [&](uint32_t s) { return (std::popcount(e & s) & 1) == 0; });
            if (ok && reduce(e) != 0) {
                return static_cast<int>(w);
            }
            uint64_t c = m & (~m + 1);
            uint64_t r = m + c;
            m = (((r ^ m) >> 2) / c) | r;
        }
    }
    throw ValidationError("no logical operator exists");
}

int distance_bruteforce(const SurfaceCode &code, CheckType basis) {
    return distance_bruteforce(code.active_data(), code.stabilizers_of(opposite(basis)), code.checks_of(basis), basis);
}

DistanceReport distance(const SurfaceCode &code, DistanceMethod method) {
    DistanceReport r;
    r.method = method;
    if (method == DistanceMethod::GraphPath) {
        r.d_x = distance_graph(code, CheckType::X);
        r.d_z = distance_graph(code, CheckType::Z);
    } else {
        r.d_x = distance_bruteforce(code, CheckType::X);
        r.d_z = distance_bruteforce(code, CheckType::Z);
    }
    r.d = std::min(r.d_x, r.d_z);
    return r;
}

}  // namespace qcal
