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

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "qaoatn/circuit.hpp"
#include "qaoatn/instance.hpp"
#include "qaoatn/schedule.hpp"
#include "qaoatn/tensor.hpp"

namespace qaoatn {

class StatevectorError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr int kDefaultQubitCap = 24;

/// Dense state; amplitude index bit v is the basis bit of qubit v (1 means
/// z_v = -1).
struct DenseState {
    int n = 0;
    std::vector<cplx> amplitudes;

    double norm() const;
};

DenseState plus_state(int n, int max_qubits = kDefaultQubitCap);
DenseState basis_state(int n, std::uint64_t bits, int max_qubits = kDefaultQubitCap);

/// Applies e^{-i gamma C} per layer (C tabulated once), then e^{-i beta X}
/// on each qubit.
void apply_qaoa(DenseState& state, const SpinGlassInstance& instance, const Schedule& schedule);

/// Multiplies by exp(-i gamma sum_t c_t Z_t) one term at a time, in the
/// order given.
void apply_cost_terms(DenseState& state, std::span<const PauliZTerm> terms, double gamma);

void apply_mixer(DenseState& state, double beta);
void apply_gate(DenseState& state, const Gate& gate);
void apply_circuit(DenseState& state, const Circuit& circuit);

/// sum_z |amp(z)|^2 C(z).
double energy(const DenseState& state, const SpinGlassInstance& instance);
double energy(const DenseState& state, std::span<const std::int32_t> cost_table);

cplx amplitude(const DenseState& state, std::uint64_t bits);
std::vector<double> probabilities(const DenseState& state);

/// Independent draws from |amp|^2 using a mt19937_64 stream seeded with
/// `seed`; each draw consumes one 64-bit output.
std::vector<std::uint64_t> sample_exact(const DenseState& state, std::size_t count, std::uint64_t seed);

/// Training backend running the dense simulator.
class StatevectorBackend : public EnergyBackend {
  public:
    explicit StatevectorBackend(int max_qubits = kDefaultQubitCap) : max_qubits_(max_qubits) {}
    double energy(const SpinGlassInstance& instance, const Schedule& schedule) override;
    std::string name() const override { return "statevector"; }

  private:
    int max_qubits_;
};

}  // namespace qaoatn
