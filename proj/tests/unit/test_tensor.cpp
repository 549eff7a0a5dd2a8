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

#include <random>

#include "qaoatn/tensor.hpp"

using namespace qaoatn;

namespace {

Tensor random_tensor(std::vector<Index> inds, unsigned seed) {
    Tensor t(std::move(inds));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    for (auto& x : t.storage()) x = {g(rng), g(rng)};
    return t;
}

MatrixC random_matrix(int r, int c, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    MatrixC m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = {g(rng), g(rng)};
    return m;
}

double distance(const Tensor& a, const Tensor& b) {
    std::vector<IndexId> order;
    for (const auto& ix : a.indices()) order.push_back(ix.id);
    const Tensor bp = b.permuted(order);
    double d = 0;
    for (std::size_t k = 0; k < a.size(); ++k) d += std::norm(a.data()[k] - bp.data()[k]);
    return std::sqrt(d);
}

}  // namespace

TEST(Tensor, ScalarAndDefault) {
    EXPECT_EQ(Tensor().value(), cplx(1, 0));
    EXPECT_EQ(Tensor::scalar({2, 3}).value(), cplx(2, 3));
    EXPECT_EQ(Tensor().rank(), 0u);
}

TEST(Tensor, ContractIsMatrixProduct) {
    const Tensor a = random_tensor({{1, 3}, {2, 4}, {3, 5}}, 1);
    const Tensor b = random_tensor({{3, 5}, {2, 4}, {4, 6}}, 2);
    const Tensor c = contract(a, b);
    ASSERT_EQ(c.rank(), 2u);
    const std::vector<IndexId> ra{1}, rb{2, 3};
    const MatrixC ma = to_matrix(a, ra);
    const MatrixC mb = to_matrix(b, rb);
    const MatrixC want = ma * mb;
    const std::vector<IndexId> rc{1};
    EXPECT_NEAR((to_matrix(c, rc) - want).norm(), 0, 1e-12);
}

TEST(Tensor, PermuteRoundTrip) {
    const Tensor a = random_tensor({{1, 2}, {2, 3}, {3, 4}}, 3);
    const Tensor b = a.permuted({3, 1, 2});
    EXPECT_EQ(b.indices()[0].id, 3);
    EXPECT_NEAR(distance(a, b), 0, 0);
    EXPECT_EQ(b.permuted({1, 2, 3}).storage(), a.storage());
}

TEST(Tensor, SliceAndApplyMatrix) {
    const Tensor a = random_tensor({{1, 2}, {2, 3}}, 4);
    const Tensor s = slice(a, 1, 1);
    for (int j = 0; j < 3; ++j) EXPECT_EQ(s.data()[j], a.data()[3 + j]);
    const MatrixC m = random_matrix(3, 3, 5);
    const Tensor am = apply_matrix(a, 2, m);
    const std::vector<IndexId> rows{1};
    EXPECT_NEAR((to_matrix(am, rows) - to_matrix(a, rows) * m).norm(), 0, 1e-12);
}

TEST(Tensor, SvdReconstructs) {
    const Tensor a = random_tensor({{1, 3}, {2, 4}, {3, 5}}, 6);
    const std::vector<IndexId> rows{1, 3};
    const auto r = svd(a, rows, new_link_id());
    EXPECT_EQ(r.s.size(), 4u);
    EXPECT_NEAR(r.discarded_weight, 0, 1e-15);
    for (std::size_t k = 1; k < r.s.size(); ++k) EXPECT_GE(r.s[k - 1], r.s[k]);
    Tensor us = r.u;
    MatrixC sm = MatrixC::Zero(r.s.size(), r.s.size());
    for (std::size_t k = 0; k < r.s.size(); ++k) sm(k, k) = r.s[k];
    us = apply_matrix(us, r.link.id, sm);
    EXPECT_NEAR(distance(a, contract(us, r.v)), 0, 1e-11);
}

TEST(Tensor, SvdTruncationWeight) {
    const Tensor a = random_tensor({{1, 6}, {2, 6}}, 7);
    const std::vector<IndexId> rows{1};
    const auto full = svd(a, rows, new_link_id());
    const auto cut = svd(a, rows, new_link_id(), {.max_rank = 2});
    EXPECT_EQ(cut.s.size(), 2u);
    double dropped = 0, total = 0;
    for (std::size_t k = 0; k < full.s.size(); ++k) {
        total += full.s[k] * full.s[k];
        if (k >= 2) dropped += full.s[k] * full.s[k];
    }
    EXPECT_NEAR(cut.discarded_weight, dropped / total, 1e-12);
    EXPECT_NEAR(cut.total_weight, total, 1e-9);
}

TEST(Tensor, SvdPrunesNumericalZeros) {
    const MatrixC u = random_matrix(6, 1, 8), v = random_matrix(1, 6, 9);
    const Tensor a = from_matrix(u * v, {{1, 6}}, {{2, 6}});
    const std::vector<IndexId> rows{1};
    const auto r = svd(a, rows, new_link_id());
    EXPECT_EQ(r.s.size(), 1u);
    EXPECT_EQ(r.link.dim, 1);
    EXPECT_NEAR(r.discarded_weight, 0, 1e-15);
}

TEST(Tensor, QrIsIsometric) {
    const Tensor a = random_tensor({{1, 4}, {2, 3}, {3, 2}}, 10);
    const std::vector<IndexId> rows{1, 2};
    const auto r = qr(a, rows, new_link_id());
    const MatrixC q = to_matrix(r.q, rows);
    EXPECT_NEAR((q.adjoint() * q - MatrixC::Identity(q.cols(), q.cols())).norm(), 0, 1e-12);
    EXPECT_NEAR(distance(a, contract(r.q, r.r)), 0, 1e-12);
}

TEST(Tensor, HermitianRoots) {
    const MatrixC x = random_matrix(5, 5, 11);
    const MatrixC m = x * x.adjoint();
    const auto roots = hermitian_roots(m);
    EXPECT_NEAR((roots.sqrt * roots.sqrt - m).norm(), 0, 1e-10);
    EXPECT_NEAR((roots.sqrt * roots.inv_sqrt - MatrixC::Identity(5, 5)).norm(), 0, 1e-9);
    EXPECT_NEAR((roots.sqrt - roots.sqrt.adjoint()).norm(), 0, 1e-12);
}

TEST(Tensor, HermitianRootsOfSingularMatrix) {
    MatrixC m = MatrixC::Zero(3, 3);
    m(0, 0) = 4;
    const auto roots = hermitian_roots(m);
    EXPECT_TRUE(roots.sqrt.allFinite());
    EXPECT_TRUE(roots.inv_sqrt.allFinite());
    EXPECT_NEAR(std::abs(roots.sqrt(0, 0) - cplx(2, 0)), 0, 1e-5);
    MatrixC projector = MatrixC::Zero(3, 3);
    projector(0, 0) = 1;
    EXPECT_NEAR((roots.sqrt * roots.inv_sqrt - projector).norm(), 0, 1e-9);
}

TEST(Tensor, LinkIdsAreFresh) {
    const IndexId a = new_link_id(), b = new_link_id();
    EXPECT_NE(a, b);
    EXPECT_GE(a, kLinkBase);
    EXPECT_FALSE(is_primed(a));
    EXPECT_TRUE(is_primed(prime(a)));
}
