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
#include "qaoatn/instance.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <string>

#include "qaoatn/philox.hpp"

namespace qaoatn {

namespace {

int draw_sign(std::uint64_t seed, std::uint32_t stream, std::uint64_t index) {
    return (Philox4x32::draw(seed, stream, index)[0] & 1u) ? -1 : 1;
}

// Terms touching each vertex, for incremental energy updates.
struct IncidenceWalk {
    std::vector<PauliZTerm> terms;
    std::vector<std::vector<int>> touching;
    std::vector<int> z;
    int energy = 0;

    explicit IncidenceWalk(const SpinGlassInstance& inst)
        : terms(cost_operator_terms(inst)), touching(inst.num_vertices()), z(inst.num_vertices(), 1) {
        for (int t = 0; t < static_cast<int>(terms.size()); ++t) {
            for (int v : terms[t].support) touching[v].push_back(t);
            energy += terms[t].coefficient;
        }
    }

    void flip(int v) {
        int local = 0;
        for (int t : touching[v]) {
            int value = terms[t].coefficient;
            for (int u : terms[t].support) value *= z[u];
            local += value;
        }
        energy -= 2 * local;
        z[v] = -z[v];
    }
};

void check_size(const SpinGlassInstance& inst, int max_qubits) {
    if (inst.num_vertices() > max_qubits || inst.num_vertices() > 62) {
        throw InstanceError("exhaustive enumeration limited to " + std::to_string(max_qubits) + " qubits, got " +
                            std::to_string(inst.num_vertices()));
    }
}

}  // namespace

SpinGlassInstance::SpinGlassInstance(Lattice lattice, std::uint64_t seed, std::vector<LinearTerm> linear,
                                     std::vector<QuadraticTerm> quadratic, std::vector<CubicTerm> cubic)
    : lattice_(std::move(lattice)), seed_(seed), linear_(std::move(linear)), quadratic_(std::move(quadratic)),
      cubic_(std::move(cubic)) {
    auto check_d = [](int d) {
        if (d != 1 && d != -1) throw InstanceError("coefficients must be +1 or -1");
    };
    const int n = lattice_.num_vertices();
    for (const auto& t : linear_) {
        check_d(t.d);
        if (t.v < 0 || t.v >= n) throw InstanceError("linear term vertex out of range");
    }
    for (auto& t : quadratic_) {
        check_d(t.d);
        if (t.i > t.j) std::swap(t.i, t.j);
        if (!lattice_.has_edge(t.i, t.j)) throw InstanceError("quadratic term is not on a lattice edge");
    }
    for (auto& t : cubic_) {
        check_d(t.d);
        if (t.n1 > t.n2) std::swap(t.n1, t.n2);
        if (!lattice_.has_edge(t.l, t.n1) || !lattice_.has_edge(t.l, t.n2)) {
            throw InstanceError("cubic term legs are not lattice edges");
        }
    }
    if (lattice_.family() == LatticeFamily::Square && (!linear_.empty() || !cubic_.empty())) {
        throw InstanceError("square-lattice instances carry couplings only");
    }
}

bool operator==(const SpinGlassInstance& a, const SpinGlassInstance& b) {
    auto same_lin = std::equal(a.linear_.begin(), a.linear_.end(), b.linear_.begin(), b.linear_.end(),
                               [](const auto& x, const auto& y) { return x.v == y.v && x.d == y.d; });
    auto same_quad = std::equal(a.quadratic_.begin(), a.quadratic_.end(), b.quadratic_.begin(), b.quadratic_.end(),
                                [](const auto& x, const auto& y) { return x.i == y.i && x.j == y.j && x.d == y.d; });
    auto same_cub = std::equal(a.cubic_.begin(), a.cubic_.end(), b.cubic_.begin(), b.cubic_.end(),
                               [](const auto& x, const auto& y) {
                                   return x.l == y.l && x.n1 == y.n1 && x.n2 == y.n2 && x.d == y.d;
                               });
    return a.lattice_.kind() == b.lattice_.kind() && a.lattice_.edges() == b.lattice_.edges() &&
           a.seed_ == b.seed_ && same_lin && same_quad && same_cub;
}

SpinGlassInstance random_instance(const Lattice& lattice, std::uint64_t seed) {
    std::vector<LinearTerm> linear;
    std::vector<QuadraticTerm> quadratic;
    std::vector<CubicTerm> cubic;
    for (int k = 0; k < lattice.num_edges(); ++k) {
        const auto& e = lattice.edges()[k];
        quadratic.push_back({e.a, e.b, draw_sign(seed, kQuadraticStream, k)});
    }
    if (lattice.family() == LatticeFamily::HeavyHex) {
        for (int v = 0; v < lattice.num_vertices(); ++v) linear.push_back({v, draw_sign(seed, kLinearStream, v)});
        const auto w = classify_vertices(lattice).w;
        for (std::size_t k = 0; k < w.size(); ++k) {
            cubic.push_back({w[k].l, w[k].n1, w[k].n2, draw_sign(seed, kCubicStream, k)});
        }
    }
    return SpinGlassInstance(lattice, seed, std::move(linear), std::move(quadratic), std::move(cubic));
}

int cost(const SpinGlassInstance& instance, std::span<const int> z) {
    if (static_cast<int>(z.size()) != instance.num_vertices()) {
        throw InstanceError("spin vector length " + std::to_string(z.size()) + " does not match n = " +
                            std::to_string(instance.num_vertices()));
    }
    for (int s : z) {
        if (s != 1 && s != -1) throw InstanceError("spin entries must be +1 or -1");
    }
    int c = 0;
    for (const auto& t : instance.linear()) c += t.d * z[t.v];
    for (const auto& t : instance.quadratic()) c += t.d * z[t.i] * z[t.j];
    for (const auto& t : instance.cubic()) c += t.d * z[t.l] * z[t.n1] * z[t.n2];
    return c;
}

int cost_bits(const SpinGlassInstance& instance, std::uint64_t bits) {
    auto s = [bits](int v) { return ((bits >> v) & 1u) ? -1 : 1; };
    int c = 0;
    for (const auto& t : instance.linear()) c += t.d * s(t.v);
    for (const auto& t : instance.quadratic()) c += t.d * s(t.i) * s(t.j);
    for (const auto& t : instance.cubic()) c += t.d * s(t.l) * s(t.n1) * s(t.n2);
    return c;
}

std::vector<PauliZTerm> cost_operator_terms(const SpinGlassInstance& instance) {
    std::vector<PauliZTerm> terms;
    for (const auto& t : instance.linear()) terms.push_back({{t.v}, t.d});
    for (const auto& t : instance.quadratic()) terms.push_back({{t.i, t.j}, t.d});
    for (const auto& t : instance.cubic()) terms.push_back({{t.l, t.n1, t.n2}, t.d});
    return terms;
}

std::vector<std::int32_t> cost_table(const SpinGlassInstance& instance, int max_qubits) {
    check_size(instance, max_qubits);
    const std::uint64_t dim = std::uint64_t{1} << instance.num_vertices();
    std::vector<std::int32_t> table(dim);
    IncidenceWalk walk(instance);
    table[0] = walk.energy;
    for (std::uint64_t k = 1; k < dim; ++k) {
        walk.flip(std::countr_zero(k));
        table[k ^ (k >> 1)] = walk.energy;
    }
    return table;
}

GroundTruth brute_force(const SpinGlassInstance& instance, int max_qubits, std::size_t max_representatives) {
    check_size(instance, max_qubits);
    const std::uint64_t dim = std::uint64_t{1} << instance.num_vertices();
    IncidenceWalk walk(instance);
    GroundTruth gt;
    gt.energy = walk.energy + 1;
    std::priority_queue<std::uint64_t> keep;  // max-heap of the smallest minimizers
    for (std::uint64_t k = 0; k < dim; ++k) {
        if (k > 0) walk.flip(std::countr_zero(k));
        if (walk.energy > gt.energy) continue;
        if (walk.energy < gt.energy) {
            gt.energy = walk.energy;
            gt.count = 0;
            keep = {};
        }
        ++gt.count;
        const std::uint64_t g = k ^ (k >> 1);
        if (keep.size() < max_representatives) {
            keep.push(g);
        } else if (max_representatives > 0 && g < keep.top()) {
            keep.pop();
            keep.push(g);
        }
    }
    while (!keep.empty()) {
        gt.representatives.push_back(keep.top());
        keep.pop();
    }
    std::reverse(gt.representatives.begin(), gt.representatives.end());
    return gt;
}

std::vector<int> spins_from_bits(std::uint64_t bits, int n) {
    std::vector<int> z(n);
    for (int v = 0; v < n; ++v) z[v] = ((bits >> v) & 1u) ? -1 : 1;
    return z;
}

std::uint64_t bits_from_spins(std::span<const int> z) {
    std::uint64_t bits = 0;
    for (std::size_t v = 0; v < z.size(); ++v) {
        if (z[v] == -1) bits |= std::uint64_t{1} << v;
    }
    return bits;
}

}  // namespace qaoatn
