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

#include <string>
#include <vector>

#include "qaoatn/instance.hpp"
#include "qaoatn/schedule.hpp"
#include "qaoatn/tensor.hpp"

namespace qaoatn {

/// A 1- or 2-qubit unitary. Two-qubit matrices are indexed by 2 s_0 + s_1
/// where s_k is the computational basis bit of sites[k] (0 for z = +1).
struct Gate {
    std::string name;
    std::vector<int> sites;
    MatrixC matrix;
};

MatrixC rz_matrix(double theta);    // exp(-i theta Z / 2)
MatrixC rx_matrix(double theta);    // exp(-i theta X / 2)
MatrixC zz_matrix(double angle);    // exp(-i angle Z x Z)
MatrixC cnot_matrix();              // control is sites[0]

Gate rz_gate(int site, double theta);
Gate rx_gate(int site, double theta);
Gate zz_gate(int a, int b, double angle);
Gate cnot_gate(int control, int target);

/// exp(-i gamma d Z_l Z_n1 Z_n2) as CNOT(n1->l), CNOT(n2->l), Rz(2 gamma d)
/// on l, CNOT(n2->l), CNOT(n1->l).
std::vector<Gate> cubic_sandwich(int l, int n1, int n2, double gamma, int d);

enum class BlockKind { Cost, Mixer };

struct GateBlock {
    BlockKind kind = BlockKind::Cost;
    int layer = 0;  // 1-based
    std::vector<Gate> gates;
};

struct Circuit {
    int num_qubits = 0;
    int p = 0;
    std::vector<GateBlock> blocks;  // cost_1, mixer_1, cost_2, ...

    std::size_t num_gates() const;
};

/// Per layer: Rz(2 gamma d_v) for fields, exp(-i gamma d ZZ) for couplings,
/// the CNOT sandwich for three-body terms, then Rx(2 beta) on every qubit.
/// Throws if a term's two-qubit gates would leave the lattice edges.
Circuit compile_circuit(const SpinGlassInstance& instance, const Schedule& schedule);

}  // namespace qaoatn
