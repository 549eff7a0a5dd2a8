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

#include <cmath>
#include <random>

#include "qaoatn/instance.hpp"

using namespace qaoatn;

namespace {

// Independent term-by-term evaluation of the cost function.
int naive_cost(const SpinGlassInstance& inst, const std::vector<int>& z) {
    int c = 0;
    for (const auto& t : inst.linear()) c += t.d * z[t.v];
    for (const auto& t : inst.quadratic()) c += t.d * z[t.i] * z[t.j];
    for (const auto& t : inst.cubic()) c += t.d * z[t.l] * z[t.n1] * z[t.n2];
    return c;
}

Lattice path3() { return Lattice::custom(LatticeFamily::HeavyHex, "path3", 3, {{0, 1}, {1, 2}}); }

}  // namespace

TEST(Instance, Deterministic) {
    const auto lat = Lattice::heavy_hex_device("guadalupe");
    EXPECT_EQ(random_instance(lat, 42), random_instance(lat, 42));
    EXPECT_FALSE(random_instance(lat, 42) == random_instance(lat, 43));
}

TEST(Instance, TermCounts) {
    const auto sq = random_instance(Lattice::square(4, 4), 1);
    EXPECT_EQ(sq.quadratic().size(), 24u);
    EXPECT_TRUE(sq.linear().empty());
    EXPECT_TRUE(sq.cubic().empty());
    const auto gl = random_instance(Lattice::heavy_hex_device("guadalupe"), 1);
    EXPECT_EQ(gl.linear().size(), 16u);
    EXPECT_EQ(gl.quadratic().size(), 16u);
    EXPECT_EQ(gl.cubic().size(), 2u);
    EXPECT_EQ(cost_operator_terms(gl).size(), 34u);
    EXPECT_EQ(cost_operator_terms(random_instance(Lattice::square(2, 2), 3)).size(), 4u);
    const auto p3 = cost_operator_terms(random_instance(path3(), 3));
    ASSERT_EQ(p3.size(), 5u);
    EXPECT_EQ(p3[0].support.size(), 1u);
    EXPECT_EQ(p3[4].support.size(), 2u);
}

TEST(Instance, CoefficientSignBalance) {
    const auto lat = Lattice::heavy_hex_device("guadalupe");
    long plus = 0, total = 0;
    for (std::uint64_t s = 0; s < 10000; ++s) {
        const auto inst = random_instance(lat, s);
        for (const auto& t : inst.linear()) plus += t.d > 0, ++total;
        for (const auto& t : inst.quadratic()) plus += t.d > 0, ++total;
        for (const auto& t : inst.cubic()) plus += t.d > 0, ++total;
    }
    const double sigma = std::sqrt(total * 0.25);
    EXPECT_LT(std::abs(plus - total / 2.0), 4 * sigma);
}

TEST(Instance, PathCost) {
    const SpinGlassInstance inst(path3(), 0, {{0, 1}, {1, 1}, {2, 1}}, {{0, 1, 1}, {1, 2, 1}}, {});
    const std::vector<int> z{1, 1, 1};
    EXPECT_EQ(cost(inst, z), 5);
}

TEST(Instance, GlobalFlipNegatesOddTerms) {
    const auto inst = random_instance(Lattice::heavy_hex_device("guadalupe"), 5);
    std::mt19937 rng(1);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<int> z(16), flipped(16);
        for (int v = 0; v < 16; ++v) {
            z[v] = (rng() & 1) ? 1 : -1;
            flipped[v] = -z[v];
        }
        int lin = 0, cub = 0;
        for (const auto& t : inst.linear()) lin += t.d * z[t.v];
        for (const auto& t : inst.cubic()) cub += t.d * z[t.l] * z[t.n1] * z[t.n2];
        EXPECT_EQ(cost(inst, flipped), cost(inst, z) - 2 * lin - 2 * cub);
    }
}

TEST(Instance, CostMatchesNaiveEvaluator) {
    const auto inst = random_instance(Lattice::square(4, 4), 17);
    std::mt19937 rng(3);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<int> z(16);
        for (auto& x : z) x = (rng() & 1) ? 1 : -1;
        EXPECT_EQ(cost(inst, z), naive_cost(inst, z));
        EXPECT_EQ(cost_bits(inst, bits_from_spins(z)), naive_cost(inst, z));
    }
}

TEST(Instance, TermsAgreeWithCostExhaustively) {
    const auto lat = Lattice::custom(LatticeFamily::HeavyHex, "hh10", 10,
                                     {{0, 1}, {1, 2}, {0, 3}, {0, 4}, {2, 5}, {2, 6}, {4, 7}, {6, 8}, {8, 9}});
    const auto inst = random_instance(lat, 8);
    const auto terms = cost_operator_terms(inst);
    const auto table = cost_table(inst);
    for (std::uint64_t bits = 0; bits < 1024; ++bits) {
        const auto z = spins_from_bits(bits, 10);
        int c = 0;
        for (const auto& t : terms) {
            int prod = t.coefficient;
            for (int v : t.support) prod *= z[v];
            c += prod;
        }
        EXPECT_EQ(c, cost(inst, z));
        EXPECT_EQ(table[bits], c);
    }
}

TEST(Instance, BruteForceSmall) {
    const auto one = Lattice::custom(LatticeFamily::HeavyHex, "single", 1, {});
    const SpinGlassInstance a(one, 0, {{0, 1}}, {}, {});
    const auto ga = brute_force(a);
    EXPECT_EQ(ga.energy, -1);
    ASSERT_EQ(ga.representatives.size(), 1u);
    EXPECT_EQ(spins_from_bits(ga.representatives[0], 1), std::vector<int>{-1});

    const auto edge = Lattice::custom(LatticeFamily::Square, "edge", 2, {{0, 1}});
    const SpinGlassInstance b(edge, 0, {}, {{0, 1, 1}}, {});
    const auto gb = brute_force(b);
    EXPECT_EQ(gb.energy, -1);
    EXPECT_EQ(gb.count, 2u);
}

TEST(Instance, BruteForceIsSound) {
    const auto inst = random_instance(Lattice::square(4, 4), 99);
    const auto g = brute_force(inst);
    for (auto bits : g.representatives) EXPECT_EQ(cost_bits(inst, bits), g.energy);
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 1000; ++rep) EXPECT_LE(g.energy, cost_bits(inst, rng() & 0xffff));
    EXPECT_GE(g.count, g.representatives.size());
}

TEST(Instance, RepresentativeCap) {
    const auto lat = Lattice::square(3, 3);
    const SpinGlassInstance flat(lat, 0, {}, {}, {});
    const auto g = brute_force(flat, 26, 10);
    EXPECT_EQ(g.energy, 0);
    EXPECT_EQ(g.count, 512u);
    EXPECT_EQ(g.representatives.size(), 10u);
    EXPECT_TRUE(std::is_sorted(g.representatives.begin(), g.representatives.end()));
}

TEST(Instance, ValidatesTerms) {
    const auto lat = Lattice::square(2, 2);
    EXPECT_THROW(SpinGlassInstance(lat, 0, {}, {{0, 3, 1}}, {}), InstanceError);
    EXPECT_THROW(SpinGlassInstance(lat, 0, {}, {{0, 1, 2}}, {}), InstanceError);
    EXPECT_THROW(SpinGlassInstance(lat, 0, {{0, 1}}, {}, {}), InstanceError);
    const std::vector<int> wrong(3, 1);
    EXPECT_THROW(cost(random_instance(lat, 1), wrong), InstanceError);
}
