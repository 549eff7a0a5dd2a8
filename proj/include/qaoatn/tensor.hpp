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

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qaoatn {

using cplx = std::complex<double>;
using IndexId = std::int64_t;
using MatrixC = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using MatrixCR = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using VectorC = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

/// A tensor leg. Legs with equal ids are contracted by `contract`.
struct Index {
    IndexId id = 0;
    std::int64_t dim = 1;

    friend bool operator==(const Index&, const Index&) = default;
};

/// Index id namespaces used throughout the tensor-network code.
///
/// Physical legs use the vertex number, virtual legs are offset by
/// `kBondBase`, fresh link legs (boundary MPS bonds, QR/SVD links) are drawn
/// from a process-wide counter above `kLinkBase`. The bra copy of any leg is
/// obtained with `prime`, which adds `kPrimeOffset`.
inline constexpr IndexId kBondBase = IndexId{1} << 32;
inline constexpr IndexId kLinkBase = IndexId{1} << 40;
inline constexpr IndexId kPrimeOffset = IndexId{1} << 52;

inline constexpr IndexId phys_id(int vertex) { return vertex; }
inline constexpr IndexId bond_id(int edge) { return kBondBase + edge; }
inline constexpr IndexId prime(IndexId id) { return id + kPrimeOffset; }
inline constexpr bool is_primed(IndexId id) { return id >= kPrimeOffset; }

/// Fresh, never-before-issued link id.
IndexId new_link_id();

/// Dense complex tensor with labeled legs, row-major storage.
class Tensor {
  public:
    Tensor();  // rank-0 tensor holding 1
    explicit Tensor(std::vector<Index> indices);
    Tensor(std::vector<Index> indices, std::vector<cplx> data);

    static Tensor scalar(cplx value);

    const std::vector<Index>& indices() const { return inds_; }
    std::size_t rank() const { return inds_.size(); }
    std::size_t size() const { return data_.size(); }

    bool has(IndexId id) const;
    int axis(IndexId id) const;  // -1 when absent
    std::int64_t dim(IndexId id) const;

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }
    std::vector<cplx>& storage() { return data_; }
    const std::vector<cplx>& storage() const { return data_; }

    /// Value of a rank-0 tensor.
    cplx value() const;

    Tensor permuted(std::span<const IndexId> order) const;
    Tensor permuted(std::initializer_list<IndexId> order) const {
        return permuted(std::span<const IndexId>(order.begin(), order.size()));
    }

    Tensor conj() const;
    void relabel(IndexId from, IndexId to);
    /// Relabels every leg whose id passes `pred` to `prime(id)`.
    template <class Pred>
    void prime_if(Pred pred) {
        for (auto& ix : inds_) {
            if (pred(ix.id)) ix.id = prime(ix.id);
        }
    }

    void scale(cplx factor);
    double norm() const;
    double max_abs() const;
    bool all_finite() const;

  private:
    std::vector<Index> inds_;
    std::vector<cplx> data_;
};

/// Sums over every leg id shared by `a` and `b`.
Tensor contract(const Tensor& a, const Tensor& b);

/// result[..., c, ...] = sum_b t[..., b, ...] m(b, c); the leg keeps its id.
Tensor apply_matrix(const Tensor& t, IndexId id, const MatrixC& m);

/// Fixes leg `id` to `value` and removes it.
Tensor slice(const Tensor& t, IndexId id, std::int64_t value);

/// Matricizes `t` with `rows` (in order) as row legs and the rest as columns
/// (in tensor order). `cols_out` receives the column legs.
MatrixC to_matrix(const Tensor& t, std::span<const IndexId> rows,
                  std::vector<Index>* cols_out = nullptr);

Tensor from_matrix(const MatrixC& m, std::vector<Index> rows, std::vector<Index> cols);

struct SvdOptions {
    /// Hard cap on kept singular values; <= 0 means uncapped.
    std::int64_t max_rank = 0;
    /// Singular values with s <= cutoff * s_max are treated as numerical zeros.
    double cutoff = 1e-14;
};

struct SvdResult {
    Tensor u;                    // rows + link
    std::vector<double> s;       // kept singular values, descending
    Tensor v;                    // link + cols
    Index link;
    double discarded_weight = 0; // sum of s^2 dropped by the rank cap / total
    double pruned_weight = 0;    // sum of s^2 below the numerical cutoff / total
    double total_weight = 0;     // sum of all s^2
};

/// Truncated SVD of `t` split between `rows` and the remaining legs.
SvdResult svd(const Tensor& t, std::span<const IndexId> rows, IndexId link_id,
              const SvdOptions& options = {});

struct QrResult {
    Tensor q;  // rows + link, isometric
    Tensor r;  // link + cols
    Index link;
};

/// Thin QR with `rows` on the isometric side.
QrResult qr(const Tensor& t, std::span<const IndexId> rows, IndexId link_id);

/// Hermitian square root and pseudo-inverse square root of a PSD matrix.
/// Eigenvalues are raised to at least clamp * max before taking roots; the
/// inverse root drops eigenvalues at or below pinv_cutoff * max, so the
/// product of the two roots is the projector onto the kept eigenspace.
struct HermitianRoots {
    MatrixC sqrt;
    MatrixC inv_sqrt;
};
HermitianRoots hermitian_roots(const MatrixC& m, double clamp = 1e-12, double pinv_cutoff = 1e-12);

std::string describe(const Tensor& t);

}  // namespace qaoatn
