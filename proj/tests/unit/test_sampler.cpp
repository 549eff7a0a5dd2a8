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
#include <numeric>
#include <sstream>

#include "qaoatn/evolve.hpp"
#include "qaoatn/sampler.hpp"

using namespace qaoatn;

namespace {

std::uint64_t pack(const std::vector<std::uint8_t>& bits) {
    std::uint64_t z = 0;
    for (std::size_t v = 0; v < bits.size(); ++v) z |= std::uint64_t{bits[v]} << v;
    return z;
}

struct Fixture {
    Lattice lattice;
    SpinGlassInstance instance;
    TNState state;
    std::vector<cplx> dense;
};

Fixture evolved(const Lattice& lat, int chi, unsigned seed) {
    auto inst = random_instance(lat, seed);
    auto res = evolve(TNState::init_plus(lat, chi), inst, Schedule{{0.45, 0.8}, {0.6, 0.3}});
    auto dense = res.state.to_dense();
    return {lat, inst, std::move(res.state), std::move(dense)};
}

double dense_norm2(const std::vector<cplx>& psi) {
    double s = 0;
    for (auto a : psi) s += std::norm(a);
    return s;
}

}  // namespace

TEST(Sampler, BasisStateIsDeterministic) {
    const auto lat = Lattice::heavy_hex_device("guadalupe");
    std::vector<int> bits(16, 0);
    bits[3] = bits[7] = bits[15] = 1;
    const TNState s = TNState::basis(lat, 4, bits);
    const auto batch = sample_batch(s, column_partition(lat), 20, 5);
    ASSERT_EQ(batch.records.size(), 20u);
    for (const auto& r : batch.records) {
        EXPECT_EQ(pack(r.bits), (1u << 3) | (1u << 7) | (1u << 15));
        EXPECT_NEAR(r.omega, 1.0, 1e-12);
    }
    EXPECT_NEAR(batch.stats.var_omega, 0.0, 1e-20);
}

TEST(Sampler, PlusStateIsUniform) {
    const auto lat = Lattice::square(3, 4);
    const TNState s = TNState::init_plus(lat, 4);
    const auto batch = sample_batch(s, column_partition(lat), 50, 9);
    for (const auto& r : batch.records) {
        EXPECT_NEAR(r.log_q, -12 * std::log(2.0), 1e-10);
        EXPECT_NEAR(r.omega, 1.0, 1e-10);
    }
}

TEST(Sampler, UncappedEnvironmentsGiveExactNorm) {
    const auto f = evolved(Lattice::square(4, 4), 3, 2);
    const auto envs = build_norm_envs(f.state, column_partition(f.lattice));
    EXPECT_NEAR(envs_log_norm(f.state, envs), std::log(dense_norm2(f.dense)), 1e-8);
    for (double r : envs.fit_residual) EXPECT_LT(r, 1e-10);
}

TEST(Sampler, UncappedSamplesAreExact) {
    const auto f = evolved(Lattice::square(3, 3), 2, 3);
    const double log_norm = std::log(dense_norm2(f.dense));
    SamplerOptions opt;
    opt.instance = &f.instance;
    const auto batch = sample_batch(f.state, column_partition(f.lattice), 200, 4, opt);
    for (const auto& r : batch.records) {
        const double want = std::log(std::norm(f.dense[pack(r.bits)]));
        EXPECT_NEAR(r.log_p, want, 1e-9);
        EXPECT_NEAR(r.log_q, want - log_norm, 1e-9);
        std::vector<int> z(r.bits.size());
        for (std::size_t v = 0; v < z.size(); ++v) z[v] = r.bits[v] ? -1 : 1;
        EXPECT_EQ(r.energy, cost(f.instance, z));
    }
    EXPECT_LT(batch.stats.var_omega, 1e-16);
    EXPECT_NEAR(batch.stats.mean_omega, dense_norm2(f.dense), 1e-9);
}

TEST(Sampler, TotalVariationAtTenQubits) {
    const auto f = evolved(Lattice::square(2, 5), kUncapped, 12);
    const double norm = dense_norm2(f.dense);
    const std::size_t n = 100000;
    const auto batch = sample_batch(f.state, column_partition(f.lattice), n, 31);
    std::vector<double> freq(f.dense.size(), 0);
    for (const auto& r : batch.records) freq[pack(r.bits)] += 1.0 / n;
    // A perfect sampler still leaves E|f - p| = sqrt(2 p (1 - p) / (pi n)) per outcome.
    double tv = 0, floor = 0;
    for (std::size_t i = 0; i < freq.size(); ++i) {
        const double p = std::norm(f.dense[i]) / norm;
        tv += std::abs(freq[i] - p);
        floor += std::sqrt(2 * p * (1 - p) / (M_PI * n));
    }
    EXPECT_LT(tv / 2, 1.1 * floor / 2);
    EXPECT_GT(tv / 2, 0.9 * floor / 2);
}

TEST(Sampler, FitResidualShrinksWithRank) {
    const auto f = evolved(Lattice::square(4, 4), 4, 6);
    double prev = 1e9;
    for (int rank : {1, 2, 4, 8}) {
        CompressionOptions opt;
        opt.max_rank = rank;
        const auto envs = build_norm_envs(f.state, column_partition(f.lattice), opt);
        const double total = std::accumulate(envs.fit_residual.begin(), envs.fit_residual.end(), 0.0);
        EXPECT_LE(total, prev + 1e-9) << rank;
        prev = total;
        for (const auto& m : envs.norm) EXPECT_LE(m.max_link_dim(), rank);
    }
}

TEST(Sampler, MeanWeightIsNormAcrossRanks) {
    const auto f = evolved(Lattice::square(3, 4), 4, 8);
    const double norm = dense_norm2(f.dense);
    for (int rank : {1, 2}) {
        SamplerOptions opt;
        opt.norm.max_rank = rank;
        const auto batch = sample_batch(f.state, column_partition(f.lattice), 2000, 10, opt);
        const double se = std::sqrt(batch.stats.var_omega / batch.records.size());
        EXPECT_NEAR(batch.stats.mean_omega, norm, 4 * se + 1e-12) << rank;
    }
}

TEST(Sampler, SamplesDoNotDependOnGrouping) {
    const auto f = evolved(Lattice::square(3, 3), 2, 5);
    const auto envs = build_norm_envs(f.state, column_partition(f.lattice));
    const auto all = draw_samples(f.state, envs, 0, 30, 77);
    const auto tail = draw_samples(f.state, envs, 10, 20, 77);
    for (std::size_t k = 0; k < 20; ++k) {
        EXPECT_EQ(all.records[10 + k].bits, tail.records[k].bits);
        EXPECT_EQ(all.records[10 + k].log_q, tail.records[k].log_q);
    }
    const auto one = sample_one(f.state, envs, 17, 77);
    EXPECT_EQ(one.bits, all.records[17].bits);
    EXPECT_EQ(one.index, 17u);
    const auto other = draw_samples(f.state, envs, 0, 30, 78);
    int same = 0;
    for (std::size_t k = 0; k < 30; ++k) same += other.records[k].bits == all.records[k].bits;
    EXPECT_LT(same, 30);
}

TEST(Sampler, NormalizeBatch) {
    std::vector<SampleRecord> recs(2);
    recs[0].omega = 1;
    recs[1].omega = 3;
    const auto st = normalize_batch(recs, 4);
    EXPECT_DOUBLE_EQ(st.mean_omega, 2.0);
    EXPECT_DOUBLE_EQ(st.var_omega, 1.0);
    EXPECT_DOUBLE_EQ(st.var_omega_tilde, 0.25);
    EXPECT_EQ(st.aborts, 4u);
    EXPECT_DOUBLE_EQ(*recs[0].omega_tilde, 0.5);
    EXPECT_DOUBLE_EQ(*recs[1].omega_tilde, 1.5);
}

TEST(Sampler, Histograms) {
    const auto h = integer_histogram({-2, 0, 0});
    ASSERT_EQ(h.counts.size(), 3u);
    EXPECT_EQ(h.counts, (std::vector<std::size_t>{1, 0, 2}));
    EXPECT_DOUBLE_EQ(h.edges.front(), -2.5);
    EXPECT_DOUBLE_EQ(h.edges.back(), 0.5);
    const auto g = make_histogram({0.0, 0.5, 1.0, 1.0}, 4);
    EXPECT_EQ(g.edges.size(), 5u);
    EXPECT_EQ(std::accumulate(g.counts.begin(), g.counts.end(), std::size_t{0}), 4u);
}

TEST(Sampler, CsvAndBitstring) {
    SampleRecord r;
    r.index = 3;
    r.bits = {1, 0, 0, 1};
    r.energy = -2;
    r.omega = 1;
    r.omega_tilde = 1;
    EXPECT_EQ(bitstring(r), "1001");
    std::ostringstream out;
    write_samples_csv(out, {r});
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "sample_index,bitstring,energy,log_P,log_Q,omega,omega_tilde");
    EXPECT_NE(out.str().find("3,1001,-2,"), std::string::npos);
}
