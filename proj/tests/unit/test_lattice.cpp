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


#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "qaoatn/lattice.hpp"

using namespace qaoatn;

namespace {

void expect_valid_embedding(const Lattice& lat) {
    const auto part = column_partition(lat);
    std::vector<int> seen(lat.num_vertices(), 0);
    for (const auto& col : part.columns) {
        for (int v : col) seen[v]++;
    }
    for (int c : seen) EXPECT_EQ(c, 1);
    for (const auto& e : lat.edges()) {
        EXPECT_LE(std::abs(part.column_of[e.a] - part.column_of[e.b]), 1);
    }
    EXPECT_TRUE(crossing_edges_are_ordered(lat, part));
}

}  // namespace

TEST(Lattice, DeviceSizes) {
    EXPECT_EQ(Lattice::heavy_hex_device("guadalupe").num_vertices(), 16);
    EXPECT_EQ(Lattice::heavy_hex_device("geneva").num_vertices(), 27);
    EXPECT_EQ(Lattice::heavy_hex_device("washington").num_vertices(), 127);
    EXPECT_EQ(Lattice::heavy_hex_grid(2, 2).num_vertices(), 35);
    EXPECT_EQ(Lattice::heavy_hex_grid(1, 1).num_vertices(), 12);
    EXPECT_THROW(Lattice::heavy_hex_device("tokyo"), LatticeError);
}

TEST(Lattice, GuadalupeEdgesFrozen) {
    const auto lat = Lattice::heavy_hex_device("guadalupe");
    const std::vector<Edge> expected{{0, 1},  {1, 2},  {1, 4},   {2, 3},   {3, 5},   {4, 7},   {5, 8},   {6, 7},
                                     {7, 10}, {8, 9},  {8, 11},  {10, 12}, {11, 14}, {12, 13}, {12, 15}, {13, 14}};
    EXPECT_EQ(lat.edges(), expected);
}

TEST(Lattice, SquareCounts) {
    EXPECT_EQ(Lattice::square(4, 4).num_edges(), 24);
    EXPECT_EQ(Lattice::square(6, 6).num_vertices(), 36);
    EXPECT_EQ(Lattice::square(6, 6).num_edges(), 60);
    EXPECT_EQ(Lattice::square(2, 2).num_vertices(), 4);
    EXPECT_EQ(Lattice::square(2, 2).num_edges(), 4);
}

TEST(Lattice, HeavyHexInvariants) {
    for (auto lat : {Lattice::heavy_hex_device("guadalupe"), Lattice::heavy_hex_device("geneva"),
                     Lattice::heavy_hex_device("washington"), Lattice::heavy_hex_grid(2, 2),
                     Lattice::heavy_hex_grid(3, 2)}) {
        SCOPED_TRACE(lat.kind());
        EXPECT_TRUE(is_connected(lat));
        EXPECT_TRUE(two_coloring(lat).has_value());
        for (int v = 0; v < lat.num_vertices(); ++v) EXPECT_LE(lat.degree(v), 3);
        expect_valid_embedding(lat);
    }
}

TEST(Lattice, SquareEmbeddings) {
    EXPECT_EQ(column_partition(Lattice::square(4, 4)).num_columns(), 4);
    for (const auto& col : column_partition(Lattice::square(4, 4)).columns) EXPECT_EQ(col.size(), 4u);
    EXPECT_EQ(column_partition(Lattice::square(8, 8)).num_columns(), 8);
    expect_valid_embedding(Lattice::square(5, 3));
}

TEST(Lattice, ClassifyPartition) {
    for (auto lat : {Lattice::heavy_hex_device("guadalupe"), Lattice::heavy_hex_device("washington")}) {
        const auto cls = classify_vertices(lat);
        std::set<int> all;
        int deg1 = 0;
        for (int v = 0; v < lat.num_vertices(); ++v) deg1 += lat.degree(v) == 1;
        for (int v : cls.v2) all.insert(v);
        for (int v : cls.v3) all.insert(v);
        EXPECT_EQ(cls.v2.size() + cls.v3.size() + deg1, static_cast<std::size_t>(lat.num_vertices()));
        EXPECT_EQ(all.size(), cls.v2.size() + cls.v3.size());
        for (const auto& w : cls.w) {
            EXPECT_EQ(lat.degree(w.l), 2);
            EXPECT_EQ(lat.degree(w.n1), 3);
            EXPECT_EQ(lat.degree(w.n2), 3);
            EXPECT_LT(w.n1, w.n2);
        }
    }
}

TEST(Lattice, GuadalupeThreeBodyVertices) {
    const auto cls = classify_vertices(Lattice::heavy_hex_device("guadalupe"));
    ASSERT_EQ(cls.w.size(), 2u);
    EXPECT_EQ(cls.w[0].l, 4);
    EXPECT_EQ(cls.w[0].n1, 1);
    EXPECT_EQ(cls.w[0].n2, 7);
    EXPECT_EQ(cls.w[1].l, 10);
    EXPECT_EQ(cls.w[1].n1, 7);
    EXPECT_EQ(cls.w[1].n2, 12);
}

TEST(Lattice, PathHasNoThreeBodyVertices) {
    const auto lat = Lattice::custom(LatticeFamily::HeavyHex, "path3", 3, {{0, 1}, {1, 2}});
    EXPECT_TRUE(classify_vertices(lat).w.empty());
}

TEST(Lattice, GuadalupeColumns) {
    const auto part = column_partition(Lattice::heavy_hex_device("guadalupe"));
    const std::vector<std::vector<int>> expected{{0, 1, 2, 3}, {4, 5}, {6, 7, 8, 9}, {10, 11}, {12, 13, 14}, {15}};
    EXPECT_EQ(part.columns, expected);
    ASSERT_EQ(part.crossing_edges.size(), 5u);
    EXPECT_EQ(part.crossing_edges[4].size(), 1u);
    for (int b = 0; b < 4; ++b) EXPECT_EQ(part.crossing_edges[b].size(), 2u);
}

TEST(Lattice, GenevaColumnsHaveAdjacentCrossings) {
    const auto lat = Lattice::heavy_hex_device("geneva");
    const auto part = column_partition(lat);
    EXPECT_EQ(part.num_columns(), 9);
    for (const auto& x : part.crossing_edges) EXPECT_EQ(x.size(), 2u);
    expect_valid_embedding(lat);
}

TEST(Lattice, RejectsInvalidGraphs) {
    EXPECT_THROW(Lattice::custom(LatticeFamily::Square, "loop", 2, {{0, 0}}), LatticeError);
    EXPECT_THROW(Lattice::custom(LatticeFamily::Square, "dup", 2, {{0, 1}, {0, 1}}), LatticeError);
    EXPECT_THROW(Lattice::custom(LatticeFamily::Square, "split", 4, {{0, 1}, {2, 3}}), LatticeError);
    EXPECT_THROW(Lattice::custom(LatticeFamily::HeavyHex, "triangle", 3, {{0, 1}, {1, 2}, {0, 2}}), LatticeError);
    EXPECT_THROW(Lattice::square(0, 3), LatticeError);
}

TEST(Lattice, KindRoundTrip) {
    for (const char* kind : {"heavy_hex:guadalupe", "heavy_hex_grid:2x2", "square:4x4"}) {
        const auto lat = Lattice::from_kind(kind);
        EXPECT_EQ(lat.kind(), kind);
        EXPECT_EQ(Lattice::from_kind(lat.kind()).edges(), lat.edges());
    }
    EXPECT_THROW(Lattice::from_kind("hexagonal"), LatticeError);
}

TEST(Lattice, CustomBfsCoordinates) {
    const auto star = Lattice::custom(LatticeFamily::Square, "star5", 5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    const auto part = column_partition(star);
    EXPECT_EQ(part.num_columns(), 2);
    expect_valid_embedding(star);
}

TEST(Lattice, BisectionCutSplitsEvenly) {
    const auto lat = Lattice::square(4, 4);
    const auto cut = bisection_cut(lat);
    EXPECT_EQ(cut.size(), 4u);
}
