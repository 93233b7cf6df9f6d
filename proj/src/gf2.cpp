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

#include "qcal/gf2.hpp"

#include <algorithm>
#include <bit>

namespace qcal::gf2 {

BitRow &BitRow::operator^=(const BitRow &other) {
    for (size_t w = 0; w < words_.size(); ++w) {
        words_[w] ^= other.words_[w];
    }
    return *this;
}

bool BitRow::any() const {
    return std::any_of(words_.begin(), words_.end(), [](uint64_t w) { return w != 0; });
}

size_t BitRow::popcount() const {
    size_t n = 0;
    for (uint64_t w : words_) {
        n += std::popcount(w);
    }
    return n;
}

bool BitRow::dot(const BitRow &other) const {
    uint64_t acc = 0;
    for (size_t w = 0; w < words_.size(); ++w) {
        acc ^= words_[w] & other.words_[w];
    }
    return std::popcount(acc) & 1;
}

size_t BitRow::first_set() const {
    for (size_t w = 0; w < words_.size(); ++w) {
        if (words_[w] != 0) {
            return (w << 6) + std::countr_zero(words_[w]);
        }
    }
    return num_bits_;
}

void EchelonBasis::reduce(BitRow &row) const {
    for (size_t i = 0; i < rows_.size(); ++i) {
        if (row.get(pivots_[i])) {
            row ^= rows_[i];
        }
    }
}

bool EchelonBasis::contains(BitRow row) const {
    reduce(row);
    return !row.any();
}

bool EchelonBasis::insert(BitRow row) {
    reduce(row);
    size_t pivot = row.first_set();
    if (pivot == row.size()) {
        return false;
    }
    // Keep earlier rows free of the new pivot so reduce() stays a single pass.
    for (auto &r : rows_) {
        if (r.get(pivot)) {
            r ^= row;
        }
    }
    rows_.push_back(std::move(row));
    pivots_.push_back(pivot);
    return true;
}

size_t rank(const std::vector<BitRow> &rows) {
    if (rows.empty()) {
        return 0;
    }
    EchelonBasis basis(rows.front().size());
    for (const auto &r : rows) {
        basis.insert(r);
    }
    return basis.rank();
}

std::vector<BitRow> left_nullspace(const std::vector<BitRow> &rows) {
    size_t m = rows.size();
    if (m == 0) {
        return {};
    }
    size_t n = rows.front().size();
    // Augmented rows [row | e_i]; a zero left half leaves a dependency in the right half.
    std::vector<BitRow> aug;
    aug.reserve(m);
    for (size_t i = 0; i < m; ++i) {
        BitRow a(n + m);
        for (size_t c = 0; c < n; ++c) {
            if (rows[i].get(c)) {
                a.set(c);
            }
        }
        a.set(n + i);
        aug.push_back(std::move(a));
    }
    size_t pivot_row = 0;
    for (size_t c = 0; c < n && pivot_row < m; ++c) {
        size_t sel = pivot_row;
        while (sel < m && !aug[sel].get(c)) {
            ++sel;
        }
        if (sel == m) {
            continue;
        }
        std::swap(aug[sel], aug[pivot_row]);
        for (size_t r = 0; r < m; ++r) {
            if (r != pivot_row && aug[r].get(c)) {
                aug[r] ^= aug[pivot_row];
            }
        }
        ++pivot_row;
    }
    std::vector<BitRow> deps;
    for (size_t r = pivot_row; r < m; ++r) {
        BitRow c(m);
        for (size_t i = 0; i < m; ++i) {
            if (aug[r].get(n + i)) {
                c.set(i);
            }
        }
        deps.push_back(std::move(c));
    }
    // Reduce the dependency basis so combinations stay small and deterministic.
    EchelonBasis basis(m);
    std::vector<BitRow> out;
    // Insert in order of increasing weight to favour local combinations.
    std::stable_sort(deps.begin(), deps.end(),
                     [](const BitRow &a, const BitRow &b) { return a.popcount() < b.popcount(); });
    for (auto &d : deps) {
        if (basis.insert(d)) {
            out.push_back(d);
        }
    }
    return out;
}

std::vector<BitRow> right_nullspace(const std::vector<BitRow> &rows, size_t num_cols) {
    std::vector<BitRow> work = rows;
    std::vector<size_t> pivot_cols;
    size_t pivot_row = 0;
    for (size_t c = 0; c < num_cols && pivot_row < work.size(); ++c) {
        size_t sel = pivot_row;
        while (sel < work.size() && !work[sel].get(c)) {
            ++sel;
        }
        if (sel == work.size()) {
            continue;
        }
        std::swap(work[sel], work[pivot_row]);
        for (size_t r = 0; r < work.size(); ++r) {
            if (r != pivot_row && work[r].get(c)) {
                work[r] ^= work[pivot_row];
            }
        }
        pivot_cols.push_back(c);
        ++pivot_row;
    }
    std::vector<bool> is_pivot(num_cols, false);
    for (size_t c : pivot_cols) {
        is_pivot[c] = true;
    }
    std::vector<BitRow> basis;
    for (size_t f = 0; f < num_cols; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        BitRow v(num_cols);
        v.set(f);
        for (size_t r = 0; r < pivot_cols.size(); ++r) {
            if (work[r].get(f)) {
                v.set(pivot_cols[r]);
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace qcal::gf2
