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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qcal/pauli.hpp"

namespace qcal {

enum class Topology { Square, HeavyHex };
enum class QubitRole { Data, Syndrome, AncDeg3, AncHorDeg2, AncVerDeg2 };
enum class CheckType { X, Z };

std::string_view to_string(Topology t);
std::string_view to_string(QubitRole r);
std::string_view to_string(CheckType t);
Topology topology_from_string(std::string_view s);

struct Coord {
    int row = 0;
    int col = 0;
    bool operator==(const Coord &) const = default;
};

struct Qubit {
    QubitId id = 0;
    QubitRole role = QubitRole::Data;
    Coord coord;
};

/// Rectangle of data cells [row0, row0 + rows) x [col0, col0 + cols).
struct Rect {
    int row0 = 0;
    int col0 = 0;
    int rows = 0;
    int cols = 0;

    int row_end() const { return row0 + rows; }
    int col_end() const { return col0 + cols; }
    bool contains(int r, int c) const { return r >= row0 && r < row_end() && c >= col0 && c < col_end(); }
    bool operator==(const Rect &) const = default;
};

/// A stabilizer slot of the rotated layout. (row, col) is the top-left data cell;
/// the plaquette touches data cells (row, col), (row+1, col), (row, col+1), (row+1, col+1).
/// `bridge` is the ancilla path used to measure it: one syndrome qubit on the square
/// lattice, a 7-node (bulk) or 3-node (device boundary) path on heavy-hex. Bulk heavy-hex
/// bridges run along the top row segment, through a connector, and back along the bottom one.
struct Plaquette {
    int index = 0;
    int row = 0;
    int col = 0;
    CheckType type = CheckType::X;
    std::vector<QubitId> bridge;
};

/// X-type iff (row + col) is even.
CheckType plaquette_type(int row, int col);

/// The four data cells of plaquette (row, col) in bridge order
/// (top-left, bottom-left, top-right, bottom-right).
std::vector<std::pair<int, int>> plaquette_cells(int row, int col);

/// True when plaquette (row, col) carries a stabilizer of the rotated code on `patch`.
bool plaquette_in_code(const Rect &patch, int row, int col);

/// Device qubit layout with a declared code patch inside it. Immutable after construction.
class Lattice {
  public:
    /// Rotated surface code layout of distance d. `margin` extra data rows/columns on
    /// every side give room for enlargement.
    static Lattice build_square(int d, int margin = 0);
    static Lattice build_heavy_hex(int d, int margin = 0);
    static Lattice build(Topology topology, int d, int margin = 0);
    /// Rectangular patch (rows x cols data qubits) without margin.
    static Lattice build_rect(Topology topology, int rows, int cols);

    Topology topology() const { return topology_; }
    int distance() const { return distance_; }
    const Rect &device() const { return device_; }
    const Rect &patch() const { return patch_; }

    const std::vector<Qubit> &qubits() const { return qubits_; }
    const Qubit &qubit(QubitId id) const { return qubits_.at(static_cast<size_t>(id)); }
    size_t num_qubits() const { return qubits_.size(); }
    const std::vector<std::pair<QubitId, QubitId>> &edges() const { return edges_; }
    const std::vector<QubitId> &neighbors(QubitId q) const { return adjacency_.at(static_cast<size_t>(q)); }
    bool is_data(QubitId q) const { return qubit(q).role == QubitRole::Data; }

    /// Data qubit at cell (r, c), or -1 outside the device.
    QubitId data_at(int r, int c) const;
    /// Cell of a data qubit.
    std::pair<int, int> cell_of(QubitId data) const;
    /// Data qubits wired directly to an ancilla.
    const std::vector<QubitId> &attached_data(QubitId ancilla) const { return attached_.at(static_cast<size_t>(ancilla)); }

    const std::vector<Plaquette> &plaquettes() const { return plaquettes_; }
    /// Plaquette index at (row, col), or -1.
    int plaquette_at(int row, int col) const;
    /// Plaquettes whose bridge contains ancilla q.
    const std::vector<int> &plaquettes_of_ancilla(QubitId q) const { return anc_plaquettes_.at(static_cast<size_t>(q)); }

    /// Role of a heavy-hex ancilla. Throws ValidationError for data qubits or square lattices.
    QubitRole classify_ancilla(QubitId q) const;

    /// Qubits within `radius` hops of any of `seeds`, seeds excluded.
    std::vector<QubitId> ball(const std::vector<QubitId> &seeds, int radius) const;

    nlohmann::json to_json() const;

  private:
    static Lattice build_impl(Topology topology, Rect device, Rect patch, int declared_d);
    QubitId add_qubit(QubitRole role, Coord c);
    void add_edge(QubitId a, QubitId b);

    Topology topology_ = Topology::Square;
    int distance_ = 0;
    Rect device_;
    Rect patch_;
    std::vector<Qubit> qubits_;
    std::vector<std::pair<QubitId, QubitId>> edges_;
    std::vector<std::vector<QubitId>> adjacency_;
    std::vector<std::vector<QubitId>> attached_;
    std::vector<QubitId> data_grid_;
    std::vector<Plaquette> plaquettes_;
    std::vector<int> plaquette_grid_;
    std::vector<std::vector<int>> anc_plaquettes_;
};

}  // namespace qcal
