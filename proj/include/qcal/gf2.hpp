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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace qcal::gf2 {

/// Dense bit row over GF(2).
class BitRow {
  public:
    BitRow() = default;
    explicit BitRow(size_t num_bits) : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {}

    size_t size() const { return num_bits_; }
    bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i, bool v = true) {
        uint64_t mask = uint64_t{1} << (i & 63);
        if (v) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }
    void flip(size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }

    BitRow &operator^=(const BitRow &other);
    bool any() const;
    size_t popcount() const;
    /// Parity of the bitwise AND; the GF(2) dot product.
    bool dot(const BitRow &other) const;
    /// Index of the lowest set bit, or size() when empty.
    size_t first_set() const;

    bool operator==(const BitRow &other) const = default;

    const std::vector<uint64_t> &words() const { return words_; }

  private:
    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

/// Incrementally built row-echelon basis. Each stored row has a distinct pivot
/// (its lowest set bit) and is reduced against all earlier pivots.
class EchelonBasis {
  public:
    explicit EchelonBasis(size_t num_bits) : num_bits_(num_bits) {}

    /// Reduces `row` against the basis in place; the result is zero iff `row` was in the span.
    void reduce(BitRow &row) const;
    bool contains(BitRow row) const;
    /// Adds `row` if it is independent. Returns true when the rank grew.
    bool insert(BitRow row);
    size_t rank() const { return rows_.size(); }
    size_t num_bits() const { return num_bits_; }

  private:
    size_t num_bits_;
    std::vector<BitRow> rows_;
    std::vector<size_t> pivots_;
};

size_t rank(const std::vector<BitRow> &rows);

/// Basis of {c : sum_i c_i * rows[i] = 0}, one BitRow of length rows.size() per
/// basis vector, in reduced form (each vector has a distinct free coordinate).
std::vector<BitRow> left_nullspace(const std::vector<BitRow> &rows);

/// Basis of {x : rows[i] . x = 0 for all i}, vectors of length num_cols.
std::vector<BitRow> right_nullspace(const std::vector<BitRow> &rows, size_t num_cols);

}  // namespace qcal::gf2
