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
#include "qaoatn/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "qaoatn/philox.hpp"

namespace qaoatn {

namespace {

void check_n(int n, int max_qubits) {
    if (n < 1 || n > max_qubits || n > 62) {
        throw StatevectorError("dense state limited to 1.." + std::to_string(max_qubits) + " qubits, got " +
                               std::to_string(n));
    }
}

void check_site(const DenseState& s, int q) {
    if (q < 0 || q >= s.n) throw StatevectorError("qubit index out of range");
}

void apply_1q(DenseState& s, int q, const MatrixC& m) {
    const std::uint64_t dim = s.amplitudes.size(), stride = std::uint64_t{1} << q;
    const cplx m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
        for (std::uint64_t k = base; k < base + stride; ++k) {
            const cplx a0 = s.amplitudes[k], a1 = s.amplitudes[k + stride];
            s.amplitudes[k] = m00 * a0 + m01 * a1;
            s.amplitudes[k + stride] = m10 * a0 + m11 * a1;
        }
    }
}

void apply_2q(DenseState& s, int qa, int qb, const MatrixC& m) {
    const std::uint64_t dim = s.amplitudes.size();
    const std::uint64_t ma = std::uint64_t{1} << qa, mb = std::uint64_t{1} << qb;
    for (std::uint64_t k = 0; k < dim; ++k) {
        if (k & (ma | mb)) continue;
        const std::uint64_t idx[4] = {k, k | mb, k | ma, k | ma | mb};  // 2 s_a + s_b
        cplx in[4], out[4];
        for (int r = 0; r < 4; ++r) in[r] = s.amplitudes[idx[r]];
        for (int r = 0; r < 4; ++r) {
            out[r] = 0;
            for (int c = 0; c < 4; ++c) out[r] += m(r, c) * in[c];
        }
        for (int r = 0; r < 4; ++r) s.amplitudes[idx[r]] = out[r];
    }
}

}  // namespace

double DenseState::norm() const {
    double s = 0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

DenseState plus_state(int n, int max_qubits) {
    check_n(n, max_qubits);
    const std::uint64_t dim = std::uint64_t{1} << n;
    return {n, std::vector<cplx>(dim, cplx(std::pow(2.0, -0.5 * n), 0.0))};
}

DenseState basis_state(int n, std::uint64_t bits, int max_qubits) {
    check_n(n, max_qubits);
    const std::uint64_t dim = std::uint64_t{1} << n;
    if (bits >= dim) throw StatevectorError("basis index out of range");
    DenseState s{n, std::vector<cplx>(dim, cplx(0.0, 0.0))};
    s.amplitudes[bits] = 1.0;
    return s;
}

void apply_qaoa(DenseState& state, const SpinGlassInstance& instance, const Schedule& schedule) {
    if (state.n != instance.num_vertices()) throw StatevectorError("state and instance sizes differ");
    schedule.validate();
    const auto table = cost_table(instance, state.n);
    const auto [lo, hi] = std::minmax_element(table.begin(), table.end());
    std::vector<cplx> phases(*hi - *lo + 1);
    for (int j = 0; j < schedule.p(); ++j) {
        const double g = schedule.gammas[j];
        for (std::size_t c = 0; c < phases.size(); ++c) phases[c] = std::exp(cplx(0.0, -g * (*lo + static_cast<int>(c))));
        for (std::size_t k = 0; k < table.size(); ++k) state.amplitudes[k] *= phases[table[k] - *lo];
        apply_mixer(state, schedule.betas[j]);
    }
}

void apply_cost_terms(DenseState& state, std::span<const PauliZTerm> terms, double gamma) {
    for (const auto& t : terms) {
        std::uint64_t mask = 0;
        for (int v : t.support) {
            check_site(state, v);
            mask |= std::uint64_t{1} << v;
        }
        const cplx even = std::exp(cplx(0.0, -gamma * t.coefficient));
        const cplx odd = std::conj(even);
        for (std::size_t k = 0; k < state.amplitudes.size(); ++k) {
            state.amplitudes[k] *= (std::popcount(k & mask) & 1) ? odd : even;
        }
    }
}

void apply_mixer(DenseState& state, double beta) {
    const MatrixC m = rx_matrix(2 * beta);
    for (int q = 0; q < state.n; ++q) apply_1q(state, q, m);
}

void apply_gate(DenseState& state, const Gate& gate) {
    if (gate.sites.size() == 1) {
        check_site(state, gate.sites[0]);
        if (gate.matrix.rows() != 2 || gate.matrix.cols() != 2) throw StatevectorError("1-qubit gate must be 2x2");
        apply_1q(state, gate.sites[0], gate.matrix);
    } else if (gate.sites.size() == 2) {
        check_site(state, gate.sites[0]);
        check_site(state, gate.sites[1]);
        if (gate.sites[0] == gate.sites[1]) throw StatevectorError("2-qubit gate on a repeated qubit");
        if (gate.matrix.rows() != 4 || gate.matrix.cols() != 4) throw StatevectorError("2-qubit gate must be 4x4");
        apply_2q(state, gate.sites[0], gate.sites[1], gate.matrix);
    } else {
        throw StatevectorError("only 1- and 2-qubit gates are supported");
    }
}

void apply_circuit(DenseState& state, const Circuit& circuit) {
    for (const auto& block : circuit.blocks) {
        for (const auto& g : block.gates) apply_gate(state, g);
    }
}

double energy(const DenseState& state, std::span<const std::int32_t> table) {
    if (table.size() != state.amplitudes.size()) throw StatevectorError("cost table size mismatch");
    double e = 0;
    for (std::size_t k = 0; k < table.size(); ++k) e += std::norm(state.amplitudes[k]) * table[k];
    return e;
}

double energy(const DenseState& state, const SpinGlassInstance& instance) {
    if (state.n != instance.num_vertices()) throw StatevectorError("state and instance sizes differ");
    const auto table = cost_table(instance, state.n);
    return energy(state, table);
}

cplx amplitude(const DenseState& state, std::uint64_t bits) {
    if (bits >= state.amplitudes.size()) throw StatevectorError("basis index out of range");
    return state.amplitudes[bits];
}

std::vector<double> probabilities(const DenseState& state) {
    std::vector<double> p(state.amplitudes.size());
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::norm(state.amplitudes[k]);
    return p;
}

std::vector<std::uint64_t> sample_exact(const DenseState& state, std::size_t count, std::uint64_t seed) {
    std::vector<double> cdf = probabilities(state);
    for (std::size_t k = 1; k < cdf.size(); ++k) cdf[k] += cdf[k - 1];
    const double total = cdf.back();
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> out;
    out.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        const double u = unit_double(rng()) * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        out.push_back(static_cast<std::uint64_t>(it - cdf.begin()));
    }
    return out;
}

double StatevectorBackend::energy(const SpinGlassInstance& instance, const Schedule& schedule) {
    DenseState s = plus_state(instance.num_vertices(), max_qubits_);
    apply_qaoa(s, instance, schedule);
    return qaoatn::energy(s, instance);
}

}  // namespace qaoatn
