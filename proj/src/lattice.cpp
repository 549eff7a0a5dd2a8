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

#include "qaoatn/lattice.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace qaoatn {

namespace {

// Device tables. Vertex numbers follow the IBM coupling maps. The embedding
// lays every qubit chain out horizontally (y even) with the degree-2 bridge
// qubits between chains (y odd); pendant qubits sit directly above or below
// their neighbor. Columns are x = 0, 1, ...

// ibmq_guadalupe: two 5/6-qubit chains joined by bridges 2 and 13, i.e. the
// first 16 qubits of the 27-qubit layout with qubit 15 as a pendant.
constexpr std::array<std::array<int, 2>, 16> kGuadalupeEdges{{
    {0, 1}, {1, 2}, {1, 4}, {2, 3}, {3, 5}, {4, 7}, {5, 8}, {6, 7},
    {7, 10}, {8, 9}, {8, 11}, {10, 12}, {11, 14}, {12, 13}, {12, 15}, {13, 14},
}};
constexpr std::array<std::array<int, 2>, 16> kGuadalupeCoords{{
    {0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 3}, {2, 0}, {2, 1},
    {2, 3}, {2, 4}, {3, 1}, {3, 3}, {4, 1}, {4, 2}, {4, 3}, {5, 1},
}};

// ibm_geneva (27-qubit Falcon): chains 1-4-7-10-12-15-18-21-23 and
// 3-5-8-11-14-16-19-22-25 joined by bridges 2, 13 and 24.
constexpr std::array<std::array<int, 2>, 28> kGenevaEdges{{
    {0, 1}, {1, 2}, {1, 4}, {2, 3}, {3, 5}, {4, 7}, {5, 8}, {6, 7}, {7, 10}, {8, 9},
    {8, 11}, {10, 12}, {11, 14}, {12, 13}, {12, 15}, {13, 14}, {14, 16}, {15, 18}, {16, 19}, {17, 18},
    {18, 21}, {19, 20}, {19, 22}, {21, 23}, {22, 25}, {23, 24}, {24, 25}, {25, 26},
}};
constexpr std::array<std::array<int, 2>, 27> kGenevaCoords{{
    {0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 3}, {2, 0}, {2, 1}, {2, 3},
    {2, 4}, {3, 1}, {3, 3}, {4, 1}, {4, 2}, {4, 3}, {5, 1}, {5, 3}, {6, 0},
    {6, 1}, {6, 3}, {6, 4}, {7, 1}, {7, 3}, {8, 1}, {8, 2}, {8, 3}, {8, 4},
}};

// ibm_washington (127-qubit Eagle): seven chains (0-13, 18-32, 37-51, 56-70,
// 75-89, 94-108, 113-126) joined by four bridges per gap.
constexpr std::array<std::array<int, 2>, 144> kWashingtonEdges{{
    {0, 1}, {0, 14}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {4, 15}, {5, 6}, {6, 7}, {7, 8},
    {8, 9}, {8, 16}, {9, 10}, {10, 11}, {11, 12}, {12, 13}, {12, 17}, {14, 18}, {15, 22}, {16, 26},
    {17, 30}, {18, 19}, {19, 20}, {20, 21}, {20, 33}, {21, 22}, {22, 23}, {23, 24}, {24, 25}, {24, 34},
    {25, 26}, {26, 27}, {27, 28}, {28, 29}, {28, 35}, {29, 30}, {30, 31}, {31, 32}, {32, 36}, {33, 39},
    {34, 43}, {35, 47}, {36, 51}, {37, 38}, {37, 52}, {38, 39}, {39, 40}, {40, 41}, {41, 42}, {41, 53},
    {42, 43}, {43, 44}, {44, 45}, {45, 46}, {45, 54}, {46, 47}, {47, 48}, {48, 49}, {49, 50}, {49, 55},
    {50, 51}, {52, 56}, {53, 60}, {54, 64}, {55, 68}, {56, 57}, {57, 58}, {58, 59}, {58, 71}, {59, 60},
    {60, 61}, {61, 62}, {62, 63}, {62, 72}, {63, 64}, {64, 65}, {65, 66}, {66, 67}, {66, 73}, {67, 68},
    {68, 69}, {69, 70}, {70, 74}, {71, 77}, {72, 81}, {73, 85}, {74, 89}, {75, 76}, {75, 90}, {76, 77},
    {77, 78}, {78, 79}, {79, 80}, {79, 91}, {80, 81}, {81, 82}, {82, 83}, {83, 84}, {83, 92}, {84, 85},
    {85, 86}, {86, 87}, {87, 88}, {87, 93}, {88, 89}, {90, 94}, {91, 98}, {92, 102}, {93, 106}, {94, 95},
    {95, 96}, {96, 97}, {96, 109}, {97, 98}, {98, 99}, {99, 100}, {100, 101}, {100, 110}, {101, 102}, {102, 103},
    {103, 104}, {104, 105}, {104, 111}, {105, 106}, {106, 107}, {107, 108}, {108, 112}, {109, 114}, {110, 118}, {111, 122},
    {112, 126}, {113, 114}, {114, 115}, {115, 116}, {116, 117}, {117, 118}, {118, 119}, {119, 120}, {120, 121}, {121, 122},
    {122, 123}, {123, 124}, {124, 125}, {125, 126},
}};
constexpr std::array<std::array<int, 2>, 127> kWashingtonCoords{{
    {0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}, {6, 0}, {7, 0}, {8, 0}, {9, 0},
    {10, 0}, {11, 0}, {12, 0}, {13, 0}, {0, 1}, {4, 1}, {8, 1}, {12, 1}, {0, 2}, {1, 2},
    {2, 2}, {3, 2}, {4, 2}, {5, 2}, {6, 2}, {7, 2}, {8, 2}, {9, 2}, {10, 2}, {11, 2},
    {12, 2}, {13, 2}, {14, 2}, {2, 3}, {6, 3}, {10, 3}, {14, 3}, {0, 4}, {1, 4}, {2, 4},
    {3, 4}, {4, 4}, {5, 4}, {6, 4}, {7, 4}, {8, 4}, {9, 4}, {10, 4}, {11, 4}, {12, 4},
    {13, 4}, {14, 4}, {0, 5}, {4, 5}, {8, 5}, {12, 5}, {0, 6}, {1, 6}, {2, 6}, {3, 6},
    {4, 6}, {5, 6}, {6, 6}, {7, 6}, {8, 6}, {9, 6}, {10, 6}, {11, 6}, {12, 6}, {13, 6},
    {14, 6}, {2, 7}, {6, 7}, {10, 7}, {14, 7}, {0, 8}, {1, 8}, {2, 8}, {3, 8}, {4, 8},
    {5, 8}, {6, 8}, {7, 8}, {8, 8}, {9, 8}, {10, 8}, {11, 8}, {12, 8}, {13, 8}, {14, 8},
    {0, 9}, {4, 9}, {8, 9}, {12, 9}, {0, 10}, {1, 10}, {2, 10}, {3, 10}, {4, 10}, {5, 10},
    {6, 10}, {7, 10}, {8, 10}, {9, 10}, {10, 10}, {11, 10}, {12, 10}, {13, 10}, {14, 10}, {2, 11},
    {6, 11}, {10, 11}, {14, 11}, {1, 12}, {2, 12}, {3, 12}, {4, 12}, {5, 12}, {6, 12}, {7, 12},
    {8, 12}, {9, 12}, {10, 12}, {11, 12}, {12, 12}, {13, 12}, {14, 12},
}};

template <std::size_t NE, std::size_t NV>
std::pair<std::vector<Edge>, std::vector<Coord>> from_tables(
    const std::array<std::array<int, 2>, NE>& edges,
    const std::array<std::array<int, 2>, NV>& coords) {
    std::vector<Edge> e;
    for (const auto& p : edges) e.push_back({p[0], p[1]});
    std::vector<Coord> c;
    for (const auto& p : coords) c.push_back({p[0], p[1]});
    return {e, c};
}

bool parse_dims(std::string_view text, int& rows, int& cols) {
    const auto x = text.find('x');
    if (x == std::string_view::npos) return false;
    try {
        rows = std::stoi(std::string(text.substr(0, x)));
        cols = std::stoi(std::string(text.substr(x + 1)));
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

}  // namespace

std::string to_string(LatticeFamily family) {
    return family == LatticeFamily::HeavyHex ? "heavy_hex" : "square";
}

Lattice::Lattice(std::string kind, LatticeFamily family, int n, std::vector<Edge> edges,
                 std::vector<Coord> coords)
    : kind_(std::move(kind)), family_(family), n_(n), edges_(std::move(edges)),
      coords_(std::move(coords)) {
    if (n_ < 1) throw LatticeError("lattice needs at least one vertex");
    for (auto& e : edges_) {
        if (e.a == e.b) throw LatticeError("self-loop in lattice");
        if (e.a > e.b) std::swap(e.a, e.b);
        if (e.a < 0 || e.b >= n_) throw LatticeError("edge endpoint out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
        throw LatticeError("duplicate edge in lattice");
    }
    adjacency_.assign(n_, {});
    for (int k = 0; k < num_edges(); ++k) {
        adjacency_[edges_[k].a].push_back({edges_[k].b, k});
        adjacency_[edges_[k].b].push_back({edges_[k].a, k});
    }
    for (auto& nb : adjacency_) {
        std::sort(nb.begin(), nb.end(), [](const Neighbor& p, const Neighbor& q) { return p.vertex < q.vertex; });
    }
    if (!is_connected(*this)) throw LatticeError("lattice is not connected");
    if (static_cast<int>(coords_.size()) != n_) throw LatticeError("coords size does not match vertex count");
    {
        std::set<std::pair<int, int>> seen;
        for (const auto& c : coords_) {
            if (!seen.insert({c.x, c.y}).second) throw LatticeError("two vertices share a coordinate");
        }
    }
    for (const auto& e : edges_) {
        if (std::abs(coords_[e.a].x - coords_[e.b].x) > 1) {
            throw LatticeError("embedding places an edge across non-adjacent columns");
        }
    }
    if (family_ == LatticeFamily::HeavyHex) {
        for (int v = 0; v < n_; ++v) {
            if (degree(v) > 3) throw LatticeError("heavy-hex lattice vertex has degree > 3");
        }
        if (!two_coloring(*this)) throw LatticeError("heavy-hex lattice is not bipartite");
    }
    // Internal column edges must join consecutive vertices of the column chain.
    const ColumnPartition part = column_partition(*this);
    for (const auto& col_edges : part.internal_edges) {
        for (int k : col_edges) {
            const auto& e = edges_[k];
            if (std::abs(part.position_of[e.a] - part.position_of[e.b]) != 1) {
                throw LatticeError("column-internal edge does not join chain neighbours");
            }
        }
    }
}

Lattice Lattice::heavy_hex_device(std::string_view name) {
    if (name == "guadalupe") {
        auto [e, c] = from_tables(kGuadalupeEdges, kGuadalupeCoords);
        return Lattice("heavy_hex:guadalupe", LatticeFamily::HeavyHex, 16, e, c);
    }
    if (name == "geneva") {
        auto [e, c] = from_tables(kGenevaEdges, kGenevaCoords);
        return Lattice("heavy_hex:geneva", LatticeFamily::HeavyHex, 27, e, c);
    }
    if (name == "washington") {
        auto [e, c] = from_tables(kWashingtonEdges, kWashingtonCoords);
        return Lattice("heavy_hex:washington", LatticeFamily::HeavyHex, 127, e, c);
    }
    throw LatticeError("unknown heavy-hex device: " + std::string(name));
}

// Brick layout: there are rows + 1 horizontal chains and `rows` bridge rows.
// Bridge row r holds cols + 1 bridges at x = o_r + 4k (k = 0..cols) with
// offset o_r = 2 (r mod 2). Chain i spans from the leftmost to the rightmost
// bridge of the bridge rows it touches (i - 1 and i). Numbering is row-major:
// chain 0 left to right, bridge row 0, chain 1, ... For rows = cols = 2 this
// gives chains of 9, 11 and 9 qubits plus 6 bridges, 35 qubits in total.
Lattice Lattice::heavy_hex_grid(int rows, int cols) {
    if (rows < 1 || cols < 1) throw LatticeError("heavy-hex grid needs rows, cols >= 1");
    auto offset = [](int r) { return 2 * (r % 2); };
    std::vector<Coord> coords;
    std::map<std::pair<int, int>, int> at;
    auto add = [&](int x, int y) {
        at[{x, y}] = static_cast<int>(coords.size());
        coords.push_back({x, y});
    };
    for (int i = 0; i <= rows; ++i) {
        int lo = 1 << 30, hi = -1;
        for (int r : {i - 1, i}) {
            if (r < 0 || r >= rows) continue;
            lo = std::min(lo, offset(r));
            hi = std::max(hi, offset(r) + 4 * cols);
        }
        for (int x = lo; x <= hi; ++x) add(x, 2 * i);
        if (i < rows) {
            for (int k = 0; k <= cols; ++k) add(offset(i) + 4 * k, 2 * i + 1);
        }
    }
    std::vector<Edge> edges;
    for (const auto& [xy, v] : at) {
        const auto [x, y] = xy;
        if (y % 2 == 0) {
            auto right = at.find({x + 1, y});
            if (right != at.end()) edges.push_back({v, right->second});
        } else {
            edges.push_back({at.at({x, y - 1}), v});
            edges.push_back({v, at.at({x, y + 1})});
        }
    }
    std::ostringstream kind;
    kind << "heavy_hex_grid:" << rows << "x" << cols;
    const int n = static_cast<int>(coords.size());
    return Lattice(kind.str(), LatticeFamily::HeavyHex, n, std::move(edges), std::move(coords));
}

Lattice Lattice::square(int rows, int cols) {
    if (rows < 2 || cols < 2) throw LatticeError("square lattice needs rows, cols >= 2");
    std::vector<Edge> edges;
    std::vector<Coord> coords;
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            coords.push_back({c, r});
            if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1)});
            if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c)});
        }
    }
    std::ostringstream kind;
    kind << "square:" << rows << "x" << cols;
    return Lattice(kind.str(), LatticeFamily::Square, rows * cols, std::move(edges), std::move(coords));
}

Lattice Lattice::custom(LatticeFamily family, std::string name, int n, std::vector<Edge> edges,
                        std::vector<Coord> coords) {
    if (coords.empty() && n >= 1) {
        std::vector<std::vector<int>> adj(n);
        for (const auto& e : edges) {
            if (e.a < 0 || e.b < 0 || e.a >= n || e.b >= n) throw LatticeError("edge endpoint out of range");
            adj[e.a].push_back(e.b);
            adj[e.b].push_back(e.a);
        }
        for (auto& a : adj) std::sort(a.begin(), a.end());
        coords.assign(n, {0, 0});
        std::vector<int> depth(n, -1), per_layer;
        std::queue<int> q;
        depth[0] = 0;
        q.push(0);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            if (static_cast<int>(per_layer.size()) <= depth[v]) per_layer.push_back(0);
            coords[v] = {depth[v], per_layer[depth[v]]++};
            for (int w : adj[v]) {
                if (depth[w] < 0) {
                    depth[w] = depth[v] + 1;
                    q.push(w);
                }
            }
        }
    }
    const std::string prefix = family == LatticeFamily::HeavyHex ? "custom_heavy_hex:" : "custom_square:";
    return Lattice(prefix + name, family, n, std::move(edges), std::move(coords));
}

Lattice Lattice::from_kind(std::string_view kind) {
    const auto colon = kind.find(':');
    if (colon == std::string_view::npos) throw LatticeError("malformed lattice kind: " + std::string(kind));
    const auto head = kind.substr(0, colon);
    const auto tail = kind.substr(colon + 1);
    int rows = 0, cols = 0;
    if (head == "heavy_hex") return heavy_hex_device(tail);
    if (head == "heavy_hex_grid" && parse_dims(tail, rows, cols)) return heavy_hex_grid(rows, cols);
    if (head == "square" && parse_dims(tail, rows, cols)) return square(rows, cols);
    throw LatticeError("lattice kind cannot be rebuilt from its name: " + std::string(kind));
}

int Lattice::edge_index(int a, int b) const {
    if (a < 0 || b < 0 || a >= n_ || b >= n_) return -1;
    for (const auto& nb : adjacency_[a]) {
        if (nb.vertex == b) return nb.edge;
    }
    return -1;
}

bool is_connected(const Lattice& lattice) {
    const int n = lattice.num_vertices();
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (const auto& nb : lattice.neighbors(v)) {
            if (!seen[nb.vertex]) {
                seen[nb.vertex] = 1;
                ++count;
                stack.push_back(nb.vertex);
            }
        }
    }
    return count == n;
}

std::optional<std::vector<int>> two_coloring(const Lattice& lattice) {
    const int n = lattice.num_vertices();
    std::vector<int> color(n, -1);
    for (int s = 0; s < n; ++s) {
        if (color[s] >= 0) continue;
        color[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (const auto& nb : lattice.neighbors(v)) {
                if (color[nb.vertex] < 0) {
                    color[nb.vertex] = 1 - color[v];
                    q.push(nb.vertex);
                } else if (color[nb.vertex] == color[v]) {
                    return std::nullopt;
                }
            }
        }
    }
    return color;
}

VertexClassification classify_vertices(const Lattice& lattice) {
    if (lattice.family() != LatticeFamily::HeavyHex) {
        throw LatticeError("vertex classification is defined for heavy-hex lattices only");
    }
    VertexClassification out;
    for (int v = 0; v < lattice.num_vertices(); ++v) {
        switch (lattice.degree(v)) {
            case 1: out.v1.push_back(v); break;
            case 2: out.v2.push_back(v); break;
            case 3: out.v3.push_back(v); break;
            default: break;  // an isolated vertex cannot occur in a connected lattice with n > 1
        }
    }
    for (int l : out.v2) {
        const auto& nb = lattice.neighbors(l);
        if (lattice.degree(nb[0].vertex) == 3 && lattice.degree(nb[1].vertex) == 3) {
            out.w.push_back({l, nb[0].vertex, nb[1].vertex});
        }
    }
    return out;
}

ColumnPartition column_partition(const Lattice& lattice) {
    const int n = lattice.num_vertices();
    const auto& coords = lattice.coords();
    int xmin = coords[0].x, xmax = coords[0].x;
    for (const auto& c : coords) {
        xmin = std::min(xmin, c.x);
        xmax = std::max(xmax, c.x);
    }
    ColumnPartition p;
    p.columns.assign(xmax - xmin + 1, {});
    p.column_of.assign(n, 0);
    p.position_of.assign(n, 0);
    for (int v = 0; v < n; ++v) p.columns[coords[v].x - xmin].push_back(v);
    for (auto& col : p.columns) {
        std::sort(col.begin(), col.end(), [&](int a, int b) {
            return coords[a].y != coords[b].y ? coords[a].y < coords[b].y : a < b;
        });
    }
    for (int b = 0; b < p.num_columns(); ++b) {
        for (int k = 0; k < static_cast<int>(p.columns[b].size()); ++k) {
            p.column_of[p.columns[b][k]] = b;
            p.position_of[p.columns[b][k]] = k;
        }
    }
    p.internal_edges.assign(p.num_columns(), {});
    p.crossing_edges.assign(std::max(p.num_columns() - 1, 0), {});
    for (int k = 0; k < lattice.num_edges(); ++k) {
        const auto& e = lattice.edges()[k];
        const int ca = p.column_of[e.a], cb = p.column_of[e.b];
        if (ca == cb) p.internal_edges[ca].push_back(k);
        else p.crossing_edges[std::min(ca, cb)].push_back(k);
    }
    for (int b = 0; b + 1 < p.num_columns(); ++b) {
        auto key = [&](int k) {
            const auto& e = lattice.edges()[k];
            const int left = p.column_of[e.a] == b ? e.a : e.b;
            const int right = left == e.a ? e.b : e.a;
            return std::pair{p.position_of[left], p.position_of[right]};
        };
        std::sort(p.crossing_edges[b].begin(), p.crossing_edges[b].end(),
                  [&](int x, int y) { return key(x) < key(y); });
    }
    return p;
}

bool crossing_edges_are_ordered(const Lattice& lattice, const ColumnPartition& p) {
    for (int b = 0; b + 1 < p.num_columns(); ++b) {
        int last_right = -1;
        for (int k : p.crossing_edges[b]) {
            const auto& e = lattice.edges()[k];
            const int right = p.column_of[e.a] == b ? e.b : e.a;
            if (p.position_of[right] < last_right) return false;
            last_right = p.position_of[right];
        }
    }
    return true;
}

std::vector<int> bisection_cut(const Lattice& lattice) {
    const ColumnPartition p = column_partition(lattice);
    if (p.num_columns() < 2) return {};
    const int n = lattice.num_vertices();
    int best = 0, best_gap = n + 1, left = 0;
    for (int b = 0; b + 1 < p.num_columns(); ++b) {
        left += static_cast<int>(p.columns[b].size());
        const int gap = std::abs(n - 2 * left);
        if (gap < best_gap) {
            best_gap = gap;
            best = b;
        }
    }
    return p.crossing_edges[best];
}

}  // namespace qaoatn
