// Copyright 2026 The qaoatn Authors
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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qaoatn {

class LatticeError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Which cost function family lives on the lattice: heavy-hex problems carry
/// fields, couplings and three-body terms; square problems only couplings.
enum class LatticeFamily { HeavyHex, Square };

struct Coord {
    int x = 0;  // column
    int y = 0;  // row, increasing downwards
    friend bool operator==(const Coord&, const Coord&) = default;
};

/// Undirected edge with a < b.
struct Edge {
    int a = 0;
    int b = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Neighbor {
    int vertex = 0;
    int edge = 0;  // index into Lattice::edges()
};

/// Qubit connectivity graph with a planar embedding.
///
/// Vertices are 0..n-1, edges are kept sorted lexicographically, and the
/// embedding places every edge inside one column or between adjacent columns.
/// The kind string identifies how the lattice was built, e.g.
/// "heavy_hex:guadalupe", "heavy_hex_grid:2x2", "square:4x4" or
/// "custom_square:star7"; `Lattice::from_kind` inverts it for built-ins.
class Lattice {
  public:
    /// "guadalupe" (16 qubits), "geneva" (27) or "washington" (127).
    static Lattice heavy_hex_device(std::string_view name);
    /// rows x cols heavy-hexagon cells in a brick layout, see lattice.cpp.
    static Lattice heavy_hex_grid(int rows, int cols);
    static Lattice square(int rows, int cols);
    /// Arbitrary graph; when `coords` is empty a BFS layering from vertex 0
    /// is used (x = BFS depth, y = order of discovery within the layer).
    static Lattice custom(LatticeFamily family, std::string name, int n, std::vector<Edge> edges,
                          std::vector<Coord> coords = {});
    static Lattice from_kind(std::string_view kind);

    const std::string& kind() const { return kind_; }
    LatticeFamily family() const { return family_; }
    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Coord>& coords() const { return coords_; }
    const std::vector<Neighbor>& neighbors(int v) const { return adjacency_.at(v); }
    int degree(int v) const { return static_cast<int>(adjacency_.at(v).size()); }
    /// Edge index of {a, b}, or -1.
    int edge_index(int a, int b) const;
    bool has_edge(int a, int b) const { return edge_index(a, b) >= 0; }

  private:
    Lattice(std::string kind, LatticeFamily family, int n, std::vector<Edge> edges,
            std::vector<Coord> coords);

    std::string kind_;
    LatticeFamily family_ = LatticeFamily::Square;
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<Coord> coords_;
    std::vector<std::vector<Neighbor>> adjacency_;
};

bool is_connected(const Lattice& lattice);
/// Two-coloring by BFS; nullopt when the graph has an odd cycle.
std::optional<std::vector<int>> two_coloring(const Lattice& lattice);

struct WVertex {
    int l = 0;
    int n1 = 0;  // smaller neighbor id
    int n2 = 0;  // larger neighbor id
};

/// Degree classes of a heavy-hex graph. `w` holds the degree-2 vertices
/// whose two neighbors both have degree 3, sorted by `l`.
struct VertexClassification {
    std::vector<int> v1;
    std::vector<int> v2;
    std::vector<int> v3;
    std::vector<WVertex> w;
};

VertexClassification classify_vertices(const Lattice& lattice);

/// Column sweep of the embedding used by the boundary-MPS sampler.
struct ColumnPartition {
    /// columns[b] lists its vertices top to bottom (ascending y, then id).
    std::vector<std::vector<int>> columns;
    /// Column number and position within the column for every vertex.
    std::vector<int> column_of;
    std::vector<int> position_of;
    /// Edge indices inside column b.
    std::vector<std::vector<int>> internal_edges;
    /// crossing_edges[b]: edges joining column b and b + 1, ordered by the
    /// position of the endpoint in b, then the position in b + 1.
    std::vector<std::vector<int>> crossing_edges;

    int num_columns() const { return static_cast<int>(columns.size()); }
};

ColumnPartition column_partition(const Lattice& lattice);

/// True when no two crossing edges between any pair of adjacent columns
/// cross each other, the condition the boundary sweep relies on.
bool crossing_edges_are_ordered(const Lattice& lattice, const ColumnPartition& partition);

/// Edges between the two column blocks whose vertex counts are closest to an
/// even split. Used as the default bipartition for cut entanglement.
std::vector<int> bisection_cut(const Lattice& lattice);

std::string to_string(LatticeFamily family);

}  // namespace qaoatn
