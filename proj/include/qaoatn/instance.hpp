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

#include "qaoatn/lattice.hpp"

namespace qaoatn {

class InstanceError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct LinearTerm {
    int v = 0;
    int d = 1;
};

struct QuadraticTerm {
    int i = 0;
    int j = 0;  // i < j, always a lattice edge
    int d = 1;
};

struct CubicTerm {
    int l = 0;
    int n1 = 0;
    int n2 = 0;
    int d = 1;
};

/// A Z-string term of the cost operator.
struct PauliZTerm {
    std::vector<int> support;
    int coefficient = 1;
};

/// Ising spin glass with +-1 couplings attached to a lattice.
///
/// Spin vectors use z_v in {+1, -1}. When a configuration is packed into an
/// integer, bit v set means z_v = -1.
class SpinGlassInstance {
  public:
    SpinGlassInstance(Lattice lattice, std::uint64_t seed, std::vector<LinearTerm> linear,
                      std::vector<QuadraticTerm> quadratic, std::vector<CubicTerm> cubic);

    const Lattice& lattice() const { return lattice_; }
    int num_vertices() const { return lattice_.num_vertices(); }
    std::uint64_t seed() const { return seed_; }
    const std::vector<LinearTerm>& linear() const { return linear_; }
    const std::vector<QuadraticTerm>& quadratic() const { return quadratic_; }
    const std::vector<CubicTerm>& cubic() const { return cubic_; }

    friend bool operator==(const SpinGlassInstance& a, const SpinGlassInstance& b);

  private:
    Lattice lattice_;
    std::uint64_t seed_ = 0;
    std::vector<LinearTerm> linear_;
    std::vector<QuadraticTerm> quadratic_;
    std::vector<CubicTerm> cubic_;
};

/// Philox stream numbers for the three coefficient classes.
inline constexpr std::uint32_t kLinearStream = 0;
inline constexpr std::uint32_t kQuadraticStream = 1;
inline constexpr std::uint32_t kCubicStream = 2;

/// Coefficient k of a class is +1 when bit 0 of the first Philox output word
/// for (seed, stream, k) is 0, else -1. k is the vertex id for fields, the
/// edge index for couplings and the position in classify_vertices().w for
/// three-body terms. Square lattices get couplings only.
SpinGlassInstance random_instance(const Lattice& lattice, std::uint64_t seed);

int cost(const SpinGlassInstance& instance, std::span<const int> z);
/// Cost of a packed configuration (n <= 63).
int cost_bits(const SpinGlassInstance& instance, std::uint64_t bits);

/// Linear, then quadratic, then cubic terms, in instance order.
std::vector<PauliZTerm> cost_operator_terms(const SpinGlassInstance& instance);

/// C(z) for every packed configuration, via a Gray-code walk.
std::vector<std::int32_t> cost_table(const SpinGlassInstance& instance, int max_qubits = 26);

struct GroundTruth {
    int energy = 0;
    std::uint64_t count = 0;
    /// The smallest packed minimizers in increasing order, at most the
    /// configured number of representatives.
    std::vector<std::uint64_t> representatives;
};

GroundTruth brute_force(const SpinGlassInstance& instance, int max_qubits = 26,
                        std::size_t max_representatives = 1024);

std::vector<int> spins_from_bits(std::uint64_t bits, int n);
std::uint64_t bits_from_spins(std::span<const int> z);

}  // namespace qaoatn
