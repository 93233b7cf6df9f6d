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

#include "qcal/pauli.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <sstream>

#include "qcal/gf2.hpp"

namespace qcal {

namespace {

std::vector<QubitId> normalized(std::vector<QubitId> v) {
    std::sort(v.begin(), v.end());
    // Repeated ids cancel pairwise over GF(2).
    std::vector<QubitId> out;
    for (size_t i = 0; i < v.size();) {
        size_t j = i;
        while (j < v.size() && v[j] == v[i]) {
            ++j;
        }
        if ((j - i) & 1) {
            out.push_back(v[i]);
        }
        i = j;
    }
    return out;
}

size_t overlap(const std::vector<QubitId> &a, const std::vector<QubitId> &b) {
    size_t n = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++n;
            ++ia;
            ++ib;
        }
    }
    return n;
}

std::vector<QubitId> sym_diff(const std::vector<QubitId> &a, const std::vector<QubitId> &b) {
    std::vector<QubitId> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

PauliOp::PauliOp(std::vector<QubitId> x_support, std::vector<QubitId> z_support)
    : x_(normalized(std::move(x_support))), z_(normalized(std::move(z_support))) {}

PauliOp PauliOp::x(std::initializer_list<QubitId> qubits) { return PauliOp(std::vector<QubitId>(qubits), {}); }
PauliOp PauliOp::z(std::initializer_list<QubitId> qubits) { return PauliOp({}, std::vector<QubitId>(qubits)); }
PauliOp PauliOp::x(const std::vector<QubitId> &qubits) { return PauliOp(qubits, {}); }
PauliOp PauliOp::z(const std::vector<QubitId> &qubits) { return PauliOp({}, qubits); }

size_t PauliOp::weight() const { return x_.size() + z_.size() - overlap(x_, z_); }

bool PauliOp::acts_on(QubitId q) const {
    return std::binary_search(x_.begin(), x_.end(), q) || std::binary_search(z_.begin(), z_.end(), q);
}

std::vector<QubitId> PauliOp::support() const {
    std::vector<QubitId> out;
    std::set_union(x_.begin(), x_.end(), z_.begin(), z_.end(), std::back_inserter(out));
    return out;
}

PauliOp PauliOp::without(QubitId q) const {
    PauliOp r = *this;
    std::erase(r.x_, q);
    std::erase(r.z_, q);
    return r;
}

std::string PauliOp::to_string() const {
    std::ostringstream os;
    auto sup = support();
    if (sup.empty()) {
        return "I";
    }
    bool first = true;
    for (QubitId q : sup) {
        bool hx = std::binary_search(x_.begin(), x_.end(), q);
        bool hz = std::binary_search(z_.begin(), z_.end(), q);
        if (!first) {
            os << ' ';
        }
        first = false;
        os << (hx && hz ? 'Y' : hx ? 'X' : 'Z') << q;
    }
    return os.str();
}

bool commutes(const PauliOp &a, const PauliOp &b) {
    return ((overlap(a.x_support(), b.z_support()) + overlap(a.z_support(), b.x_support())) & 1) == 0;
}

PauliOp multiply(const PauliOp &a, const PauliOp &b) {
    return PauliOp(sym_diff(a.x_support(), b.x_support()), sym_diff(a.z_support(), b.z_support()));
}

void StabilizerSet::add(PauliOp op, GeneratorKind kind) {
    gens_.push_back(std::move(op));
    kinds_.push_back(kind);
}

bool StabilizerSet::stabilizers_commute() const {
    for (size_t i = 0; i < gens_.size(); ++i) {
        if (kinds_[i] != GeneratorKind::Stabilizer) {
            continue;
        }
        for (size_t j = i + 1; j < gens_.size(); ++j) {
            if (kinds_[j] == GeneratorKind::Stabilizer && !commutes(gens_[i], gens_[j])) {
                return false;
            }
        }
    }
    return true;
}

size_t StabilizerSet::rank() const { return symplectic_rank(gens_); }

namespace {

/// Dense symplectic rows over a compact index of all qubits touched.
struct DenseFrame {
    std::map<QubitId, size_t> index;

    void touch(const PauliOp &op) {
        for (QubitId q : op.x_support()) {
            index.emplace(q, 0);
        }
        for (QubitId q : op.z_support()) {
            index.emplace(q, 0);
        }
    }
    void finalize() {
        size_t i = 0;
        for (auto &[q, v] : index) {
            v = i++;
        }
    }
    gf2::BitRow row(const PauliOp &op) const {
        size_t n = index.size();
        gf2::BitRow r(2 * n);
        for (QubitId q : op.x_support()) {
            r.set(index.at(q));
        }
        for (QubitId q : op.z_support()) {
            r.set(n + index.at(q));
        }
        return r;
    }
};

}  // namespace

size_t symplectic_rank(const std::vector<PauliOp> &ops) {
    DenseFrame frame;
    for (const auto &op : ops) {
        frame.touch(op);
    }
    frame.finalize();
    gf2::EchelonBasis basis(2 * frame.index.size());
    for (const auto &op : ops) {
        basis.insert(frame.row(op));
    }
    return basis.rank();
}

bool in_group(const PauliOp &op, const std::vector<PauliOp> &gens) {
    if (op.is_identity()) {
        return true;
    }
    DenseFrame frame;
    frame.touch(op);
    for (const auto &g : gens) {
        frame.touch(g);
    }
    frame.finalize();
    gf2::EchelonBasis basis(2 * frame.index.size());
    for (const auto &g : gens) {
        basis.insert(frame.row(g));
    }
    return basis.contains(frame.row(op));
}

bool in_group(const PauliOp &op, const StabilizerSet &gens) { return in_group(op, gens.generators()); }

}  // namespace qcal
