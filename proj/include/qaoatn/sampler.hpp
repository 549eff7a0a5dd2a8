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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qaoatn/instance.hpp"
#include "qaoatn/lattice.hpp"
#include "qaoatn/tensor.hpp"
#include "qaoatn/tn_state.hpp"

namespace qaoatn {

class SamplerError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// MPS living on the crossing edges between two adjacent columns. Site k
/// carries bond_id(edges[k]) and, for double-layer (norm) MPSs, also
/// prime(bond_id(edges[k])); it is linked to its neighbors through
/// links[k] and links[k + 1]. The end links have dimension 1. The
/// represented object is exp(log_scale) times the stored tensors.
struct BoundaryMps {
    std::vector<Tensor> sites;
    std::vector<IndexId> links;
    std::vector<int> edges;
    bool double_layer = false;
    double log_scale = 0.0;

    std::size_t size() const { return sites.size(); }
    std::int64_t max_link_dim() const;
};

struct CompressionOptions {
    /// Rank cap; 0 keeps every numerically nonzero singular value.
    int max_rank = 0;
    /// Cap used while zipping a column into the boundary, before the
    /// canonical compression; 0 means 4 * max_rank (uncapped if max_rank is).
    int zip_rank = 0;
    /// Two-site variational fitting sweeps (left-right-left) after the SVD
    /// compression.
    int variational_passes = 2;
    double cutoff = 1e-14;
};

struct BoundaryEnvs {
    ColumnPartition partition;
    /// norm[b] approximates columns b + 1 .. N_b - 1 of <psi|psi> on the
    /// crossing edges of b | b + 1; there is none for the last column.
    std::vector<BoundaryMps> norm;
    /// Relative misfit 1 - |<M|A>|^2 / (<M|M><A|A>) of each compression,
    /// against the uncompressed zip output A, indexed like `norm`.
    std::vector<double> fit_residual;
    int rank = 0;
};

/// Right-to-left sweep building every norm MPS, compressed to `options`.
BoundaryEnvs build_norm_envs(const TNState& state, const ColumnPartition& partition,
                             const CompressionOptions& options = {});

struct SamplerOptions {
    /// Amplitude-MPS rank R_m (0 = uncapped).
    int amplitude_rank = 0;
    /// Norm-MPS compression (max_rank is R_M).
    CompressionOptions norm;
    /// Used when filling SampleRecord::energy.
    const SpinGlassInstance* instance = nullptr;
};

/// One drawn bitstring. bits[v] = 1 means qubit v was measured in |1>
/// (z_v = -1). omega_tilde stays empty until the batch is normalized.
struct SampleRecord {
    std::uint64_t index = 0;
    std::vector<std::uint8_t> bits;
    int energy = 0;
    double log_p = 0.0;
    double log_q = 0.0;
    double omega = 0.0;
    std::optional<double> omega_tilde;
};

struct BatchStats {
    std::size_t num_samples = 0;
    double mean_omega = 0.0;
    double var_omega = 0.0;        // population variance
    double var_omega_tilde = 0.0;  // population variance
    std::size_t aborts = 0;
};

struct SampleBatch {
    std::vector<SampleRecord> records;
    BatchStats stats;
    std::vector<std::string> abort_reasons;
};

/// Draws samples seed-indexed by `first_index .. first_index + count - 1`
/// against prebuilt environments. Sample i uses its own mt19937_64 stream
/// seeded with derive_seed(seed, i), so results do not depend on how samples
/// are grouped. Samples sharing a prefix share the work spent on it.
SampleBatch draw_samples(const TNState& state, const BoundaryEnvs& envs, std::uint64_t first_index,
                         std::size_t count, std::uint64_t seed, const SamplerOptions& options = {});

/// A single sample; same stream as draw_samples with first_index = index.
SampleRecord sample_one(const TNState& state, const BoundaryEnvs& envs, std::uint64_t index, std::uint64_t seed,
                        const SamplerOptions& options = {});

/// Builds the environments once, draws `num_samples`, fills omega_tilde and
/// the batch statistics. Aborted samples are dropped and counted.
SampleBatch sample_batch(const TNState& state, const ColumnPartition& partition, std::size_t num_samples,
                         std::uint64_t seed, const SamplerOptions& options = {});

/// omega_tilde = omega / Mean(omega) and the population statistics.
BatchStats normalize_batch(std::vector<SampleRecord>& records, std::size_t aborts = 0);

struct Histogram {
    std::vector<double> edges;  // bins + 1 edges
    std::vector<std::size_t> counts;
};

Histogram make_histogram(const std::vector<double>& values, int bins);
/// Unit-width bins centered on each integer between min and max.
Histogram integer_histogram(const std::vector<int>& values);

struct WeightDiagnostics {
    double mean_omega = 0.0;
    double var_omega = 0.0;
    double var_omega_tilde = 0.0;
    Histogram omega;
    Histogram omega_tilde;
    Histogram energy;
};

WeightDiagnostics weight_diagnostics(const std::vector<SampleRecord>& records, int bins = 50);

/// Bit string of a record, qubit 0 first.
std::string bitstring(const SampleRecord& record);

/// Samples CSV: sample_index,bitstring,energy,log_P,log_Q,omega,omega_tilde.
void write_samples_csv(std::ostream& out, const std::vector<SampleRecord>& records);

/// <psi|psi> contracted through the norm environments (exact when the
/// environments are).
double envs_log_norm(const TNState& state, const BoundaryEnvs& envs);

}  // namespace qaoatn
