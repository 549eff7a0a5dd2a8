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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "qaoatn/circuit.hpp"
#include "qaoatn/instance.hpp"
#include "qaoatn/lattice.hpp"
#include "qaoatn/tensor.hpp"

namespace qaoatn {

class TensorNetworkError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// chi_max value meaning "never truncate".
inline constexpr int kUncapped = 0;

/// One tensor per lattice vertex. Site v carries leg phys_id(v) (dim 2) and
/// leg bond_id(e) for every incident edge e, in neighbor order.
class TNState {
  public:
    /// |+> on every site, all bonds of dimension 1.
    static TNState init_plus(const Lattice& lattice, int chi_max);
    /// Product state sum_s local[v][s] |s> on every site.
    static TNState product(const Lattice& lattice, int chi_max, const std::vector<std::array<cplx, 2>>& local);
    /// Computational basis state; bit v set means qubit v is |1>.
    static TNState basis(const Lattice& lattice, int chi_max, const std::vector<int>& bits);

    const Lattice& lattice() const { return lattice_; }
    int num_sites() const { return lattice_.num_vertices(); }
    int chi_max() const { return chi_max_; }
    const Tensor& site(int v) const { return sites_.at(v); }
    void set_site(int v, Tensor t);
    std::int64_t bond_dim(int edge) const;
    int max_bond_dim() const;

    /// Full contraction into 2^n amplitudes (index bit v = basis bit of v).
    /// Sites are contracted column by column; throws if an intermediate
    /// exceeds `max_entries`.
    std::vector<cplx> to_dense(std::size_t max_entries = std::size_t{1} << 28) const;

    /// Checkpoint: magic "QTNS", n, chi_max, then per site rank, (id, dim)
    /// pairs and row-major complex doubles, all little-endian.
    void save(std::ostream& out) const;
    static TNState load(std::istream& in, const Lattice& lattice);

  private:
    TNState(Lattice lattice, int chi_max, std::vector<Tensor> sites);

    Lattice lattice_;
    int chi_max_ = kUncapped;
    std::vector<Tensor> sites_;
};

struct BpOptions {
    double tolerance = 1e-10;
    int max_iters = 100;
    double damping = 0.0;
    /// Gauss-Seidel order (edge order) instead of the synchronous update.
    bool sequential = false;
};

/// Directed-edge messages. message(i, j) is the trace-one Hermitian matrix
/// on bond (i, j) summarizing i's side of the norm network, indexed
/// (ket, bra).
struct BPCache {
    std::vector<MatrixC> messages;  // [2 e + d], d = 0 for a -> b (a < b)
    bool converged = false;
    int iterations_used = 0;
    double final_delta = 0.0;

    static int slot(const Lattice& lattice, int from, int to);
    const MatrixC& message(const Lattice& lattice, int from, int to) const {
        return messages.at(slot(lattice, from, to));
    }
};

/// Normalized identity messages matching the current bond dimensions.
BPCache initial_messages(const TNState& state);

/// Iterates the BP update until the largest Frobenius change of a
/// normalized message is <= tolerance or max_iters is reached. A `warm`
/// cache with matching bond dimensions is used as the starting point.
BPCache run_bp(const TNState& state, const BpOptions& options = {}, const BPCache* warm = nullptr);

struct GateReport {
    double discarded_weight = 0.0;  // relative weight cut by chi_max
    double pruned_weight = 0.0;     // relative weight of numerically zero singular values
    std::int64_t bond_dim = 0;      // new dimension of the gated bond (2-qubit gates)
};

/// Applies a 1- or 2-qubit gate. Two-qubit gates use the BP environment of
/// `bp` (absorbed as Hermitian square roots on the external bonds), truncate
/// the shared bond to chi_max and leave diag(Lambda) as both messages on it.
GateReport apply_gate(TNState& state, BPCache& bp, const Gate& gate);

/// Diagonal of the BP reduced density matrix of `region` (a connected set of
/// at most three sites, in the order given), unnormalized. Entry k has bit
/// (size - 1 - r) equal to the basis bit of region[r].
std::vector<double> region_marginal(const TNState& state, const BPCache& bp, const std::vector<int>& region);

/// <Z_{i1} ... Z_{ik}> from the BP reduced density of the term's support.
double bp_expectation(const TNState& state, const BPCache& bp, const PauliZTerm& term);

/// Sum over cost terms of d_t <Z_t>, each locally normalized.
double bp_energy(const TNState& state, const BPCache& bp, const SpinGlassInstance& instance);

/// Same sum with complex local expectations; the imaginary part measures
/// numerical asymmetry of the environments.
cplx bp_energy_complex(const TNState& state, const BPCache& bp, const SpinGlassInstance& instance);

/// log of the BP estimate prod_v Z_v / prod_e Z_e of <psi|psi>.
double bp_log_norm(const TNState& state, const BPCache& bp);

struct EdgeSpectrum {
    int edge = 0;
    std::vector<double> lambda;  // descending, sum of squares 1
    double entropy = 0.0;        // bits
};

/// Lambda = singular values of sqrt(M_ij)^T sqrt(M_ji), the Schmidt values
/// of the bond when the environments are exact.
EdgeSpectrum edge_entropy(const Lattice& lattice, const BPCache& bp, int edge);

struct CutSpec {
    std::vector<int> edges;
    std::vector<double> entropies;
    double s_cut = 0.0;
};

CutSpec cut_entropy(const Lattice& lattice, const BPCache& bp, const std::vector<int>& cut_edges);

}  // namespace qaoatn
