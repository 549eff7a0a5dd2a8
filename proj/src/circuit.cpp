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
#include "qaoatn/circuit.hpp"

#include <cmath>

namespace qaoatn {

namespace {
const cplx kI{0.0, 1.0};
}

MatrixC rz_matrix(double theta) {
    MatrixC m = MatrixC::Zero(2, 2);
    m(0, 0) = std::exp(-kI * (theta / 2));
    m(1, 1) = std::exp(kI * (theta / 2));
    return m;
}

MatrixC rx_matrix(double theta) {
    MatrixC m(2, 2);
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    m << c, -kI * s, -kI * s, c;
    return m;
}

MatrixC zz_matrix(double angle) {
    MatrixC m = MatrixC::Zero(4, 4);
    const cplx same = std::exp(-kI * angle), diff = std::exp(kI * angle);
    m(0, 0) = same;
    m(1, 1) = diff;
    m(2, 2) = diff;
    m(3, 3) = same;
    return m;
}

MatrixC cnot_matrix() {
    MatrixC m = MatrixC::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    m(3, 2) = 1;
    return m;
}

Gate rz_gate(int site, double theta) { return {"rz", {site}, rz_matrix(theta)}; }
Gate rx_gate(int site, double theta) { return {"rx", {site}, rx_matrix(theta)}; }
Gate zz_gate(int a, int b, double angle) { return {"zz", {a, b}, zz_matrix(angle)}; }
Gate cnot_gate(int control, int target) { return {"cnot", {control, target}, cnot_matrix()}; }

std::vector<Gate> cubic_sandwich(int l, int n1, int n2, double gamma, int d) {
    return {cnot_gate(n1, l), cnot_gate(n2, l), rz_gate(l, 2 * gamma * d), cnot_gate(n2, l), cnot_gate(n1, l)};
}

std::size_t Circuit::num_gates() const {
    std::size_t total = 0;
    for (const auto& b : blocks) total += b.gates.size();
    return total;
}

Circuit compile_circuit(const SpinGlassInstance& instance, const Schedule& schedule) {
    if (schedule.p() > 0) schedule.validate();
    const Lattice& lat = instance.lattice();
    for (const auto& t : instance.quadratic()) {
        if (!lat.has_edge(t.i, t.j)) throw InstanceError("coupling off the lattice edges");
    }
    for (const auto& t : instance.cubic()) {
        if (!lat.has_edge(t.l, t.n1) || !lat.has_edge(t.l, t.n2)) {
            throw InstanceError("three-body term legs are not lattice edges");
        }
    }
    Circuit c;
    c.num_qubits = instance.num_vertices();
    c.p = schedule.p();
    for (int j = 0; j < schedule.p(); ++j) {
        const double g = schedule.gammas[j], b = schedule.betas[j];
        GateBlock cost{BlockKind::Cost, j + 1, {}};
        for (const auto& t : instance.linear()) cost.gates.push_back(rz_gate(t.v, 2 * g * t.d));
        for (const auto& t : instance.quadratic()) cost.gates.push_back(zz_gate(t.i, t.j, g * t.d));
        for (const auto& t : instance.cubic()) {
            for (auto& gate : cubic_sandwich(t.l, t.n1, t.n2, g, t.d)) cost.gates.push_back(std::move(gate));
        }
        GateBlock mixer{BlockKind::Mixer, j + 1, {}};
        for (int v = 0; v < c.num_qubits; ++v) mixer.gates.push_back(rx_gate(v, 2 * b));
        c.blocks.push_back(std::move(cost));
        c.blocks.push_back(std::move(mixer));
    }
    return c;
}

}  // namespace qaoatn
