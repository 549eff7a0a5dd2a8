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

#include "qaoatn/tensor.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace qaoatn {

namespace {

std::int64_t product_of_dims(const std::vector<Index>& inds) {
    std::int64_t p = 1;
    for (const auto& ix : inds) p *= ix.dim;
    return p;
}

std::vector<std::int64_t> row_major_strides(const std::vector<Index>& inds) {
    std::vector<std::int64_t> strides(inds.size());
    std::int64_t s = 1;
    for (std::size_t k = inds.size(); k-- > 0;) {
        strides[k] = s;
        s *= inds[k].dim;
    }
    return strides;
}

// Copies `src` (legs `inds`) into `dst` with axes reordered by `perm`
// (new axis k is old axis perm[k]).
void permute_copy(const cplx* src, const std::vector<Index>& inds, const std::vector<int>& perm,
                  cplx* dst) {
    const std::size_t r = inds.size();
    if (r == 0) {
        dst[0] = src[0];
        return;
    }
    const auto old_strides = row_major_strides(inds);
    std::vector<std::int64_t> dims(r), strides(r);
    for (std::size_t k = 0; k < r; ++k) {
        dims[k] = inds[perm[k]].dim;
        strides[k] = old_strides[perm[k]];
    }
    const std::int64_t total = product_of_dims(inds);
    if (total == 0) return;
    const std::int64_t inner = dims[r - 1];
    const std::int64_t inner_stride = strides[r - 1];
    std::vector<std::int64_t> counter(r, 0);
    std::int64_t offset = 0;
    std::int64_t out = 0;
    while (out < total) {
        if (inner_stride == 1) {
            std::copy(src + offset, src + offset + inner, dst + out);
        } else {
            const cplx* p = src + offset;
            for (std::int64_t i = 0; i < inner; ++i) dst[out + i] = p[i * inner_stride];
        }
        out += inner;
        // Increment the outer counters.
        for (std::size_t k = r - 1; k-- > 0;) {
            ++counter[k];
            offset += strides[k];
            if (counter[k] < dims[k]) break;
            offset -= strides[k] * dims[k];
            counter[k] = 0;
        }
    }
}

}  // namespace

IndexId new_link_id() {
    static std::atomic<IndexId> next{kLinkBase};
    return next.fetch_add(1, std::memory_order_relaxed);
}

Tensor::Tensor() : data_(1, cplx{1.0, 0.0}) {}

Tensor::Tensor(std::vector<Index> indices)
    : inds_(std::move(indices)), data_(static_cast<std::size_t>(product_of_dims(inds_))) {}

Tensor::Tensor(std::vector<Index> indices, std::vector<cplx> data)
    : inds_(std::move(indices)), data_(std::move(data)) {
    if (static_cast<std::int64_t>(data_.size()) != product_of_dims(inds_)) {
        throw std::invalid_argument("Tensor: data size does not match index dimensions");
    }
}

Tensor Tensor::scalar(cplx value) {
    Tensor t;
    t.data_[0] = value;
    return t;
}

bool Tensor::has(IndexId id) const { return axis(id) >= 0; }

int Tensor::axis(IndexId id) const {
    for (std::size_t k = 0; k < inds_.size(); ++k) {
        if (inds_[k].id == id) return static_cast<int>(k);
    }
    return -1;
}

std::int64_t Tensor::dim(IndexId id) const {
    const int a = axis(id);
    if (a < 0) throw std::out_of_range("Tensor::dim: missing index");
    return inds_[a].dim;
}

cplx Tensor::value() const {
    if (!inds_.empty()) throw std::logic_error("Tensor::value on a tensor of rank > 0");
    return data_[0];
}

Tensor Tensor::permuted(std::span<const IndexId> order) const {
    if (order.size() != inds_.size()) {
        throw std::invalid_argument("Tensor::permuted: order has wrong length");
    }
    std::vector<int> perm(order.size());
    bool identity = true;
    for (std::size_t k = 0; k < order.size(); ++k) {
        perm[k] = axis(order[k]);
        if (perm[k] < 0) throw std::invalid_argument("Tensor::permuted: unknown index");
        identity = identity && perm[k] == static_cast<int>(k);
    }
    if (identity) return *this;
    std::vector<Index> inds(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) inds[k] = inds_[perm[k]];
    Tensor out(std::move(inds));
    permute_copy(data_.data(), inds_, perm, out.data_.data());
    return out;
}

Tensor Tensor::conj() const {
    Tensor out = *this;
    for (auto& x : out.data_) x = std::conj(x);
    return out;
}

void Tensor::relabel(IndexId from, IndexId to) {
    for (auto& ix : inds_) {
        if (ix.id == from) {
            ix.id = to;
            return;
        }
    }
    throw std::invalid_argument("Tensor::relabel: unknown index");
}

void Tensor::scale(cplx factor) {
    for (auto& x : data_) x *= factor;
}

double Tensor::norm() const {
    double s = 0;
    for (const auto& x : data_) s += std::norm(x);
    return std::sqrt(s);
}

double Tensor::max_abs() const {
    double m = 0;
    for (const auto& x : data_) m = std::max(m, std::abs(x));
    return m;
}

bool Tensor::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const cplx& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

Tensor contract(const Tensor& a, const Tensor& b) {
    const auto& ai = a.indices();
    const auto& bi = b.indices();
    std::vector<int> a_shared, a_free, b_shared, b_free;
    for (std::size_t k = 0; k < ai.size(); ++k) {
        const int j = b.axis(ai[k].id);
        if (j >= 0) {
            if (bi[j].dim != ai[k].dim) {
                throw std::invalid_argument("contract: dimension mismatch on shared index");
            }
            a_shared.push_back(static_cast<int>(k));
            b_shared.push_back(j);
        } else {
            a_free.push_back(static_cast<int>(k));
        }
    }
    for (std::size_t k = 0; k < bi.size(); ++k) {
        if (!a.has(bi[k].id)) b_free.push_back(static_cast<int>(k));
    }

    std::int64_t m = 1, kdim = 1, n = 1;
    for (int k : a_free) m *= ai[k].dim;
    for (int k : a_shared) kdim *= ai[k].dim;
    for (int k : b_free) n *= bi[k].dim;

    // A as (free, shared) or (shared, free); B as (shared, free) or (free, shared).
    auto sequence = [](const std::vector<int>& first, const std::vector<int>& second) {
        std::vector<int> s = first;
        s.insert(s.end(), second.begin(), second.end());
        return s;
    };
    auto is_identity = [](const std::vector<int>& s) {
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (s[k] != static_cast<int>(k)) return false;
        }
        return true;
    };

    using MapR = Eigen::Map<const MatrixCR>;
    std::vector<cplx> a_buf, b_buf;
    const cplx* a_ptr = a.data();
    const cplx* b_ptr = b.data();
    bool a_trans = false;
    bool b_trans = false;

    if (is_identity(sequence(a_free, a_shared))) {
        a_trans = false;
    } else if (is_identity(sequence(a_shared, a_free))) {
        a_trans = true;
    } else {
        auto perm = sequence(a_free, a_shared);
        a_buf.resize(a.size());
        permute_copy(a.data(), ai, perm, a_buf.data());
        a_ptr = a_buf.data();
    }

    // b_shared must follow the order of a_shared.
    if (is_identity(sequence(b_shared, b_free))) {
        b_trans = false;
    } else if (is_identity(sequence(b_free, b_shared))) {
        b_trans = true;
    } else {
        auto perm = sequence(b_shared, b_free);
        b_buf.resize(b.size());
        permute_copy(b.data(), bi, perm, b_buf.data());
        b_ptr = b_buf.data();
    }

    std::vector<Index> out_inds;
    out_inds.reserve(a_free.size() + b_free.size());
    for (int k : a_free) out_inds.push_back(ai[k]);
    for (int k : b_free) out_inds.push_back(bi[k]);
    Tensor out(std::move(out_inds));
    Eigen::Map<MatrixCR> c(out.data(), m, n);

    if (kdim == 0 || m == 0 || n == 0) {
        c.setZero();
        return out;
    }
    if (!a_trans && !b_trans) {
        c.noalias() = MapR(a_ptr, m, kdim) * MapR(b_ptr, kdim, n);
    } else if (a_trans && !b_trans) {
        c.noalias() = MapR(a_ptr, kdim, m).transpose() * MapR(b_ptr, kdim, n);
    } else if (!a_trans && b_trans) {
        c.noalias() = MapR(a_ptr, m, kdim) * MapR(b_ptr, n, kdim).transpose();
    } else {
        c.noalias() = MapR(a_ptr, kdim, m).transpose() * MapR(b_ptr, n, kdim).transpose();
    }
    return out;
}

Tensor apply_matrix(const Tensor& t, IndexId id, const MatrixC& m) {
    const int ax = t.axis(id);
    if (ax < 0) throw std::invalid_argument("apply_matrix: unknown index");
    if (t.indices()[ax].dim != m.rows()) {
        throw std::invalid_argument("apply_matrix: dimension mismatch");
    }
    const IndexId tmp = new_link_id();
    Tensor mt({{id, m.rows()}, {tmp, m.cols()}});
    Eigen::Map<MatrixCR>(mt.data(), m.rows(), m.cols()) = m;
    Tensor out = contract(t, mt);
    out.relabel(tmp, id);
    // Restore the original leg position.
    std::vector<IndexId> order;
    order.reserve(t.rank());
    for (const auto& ix : t.indices()) order.push_back(ix.id);
    return out.permuted(order);
}

Tensor slice(const Tensor& t, IndexId id, std::int64_t value) {
    const int ax = t.axis(id);
    if (ax < 0) throw std::invalid_argument("slice: unknown index");
    const auto& inds = t.indices();
    if (value < 0 || value >= inds[ax].dim) throw std::out_of_range("slice: value out of range");
    std::vector<Index> out_inds;
    std::int64_t outer = 1, inner = 1;
    for (std::size_t k = 0; k < inds.size(); ++k) {
        if (static_cast<int>(k) == ax) continue;
        out_inds.push_back(inds[k]);
        if (static_cast<int>(k) < ax) outer *= inds[k].dim;
        else inner *= inds[k].dim;
    }
    Tensor out(std::move(out_inds));
    const std::int64_t d = inds[ax].dim;
    const cplx* src = t.data();
    cplx* dst = out.data();
    for (std::int64_t o = 0; o < outer; ++o) {
        std::copy(src + (o * d + value) * inner, src + (o * d + value + 1) * inner, dst + o * inner);
    }
    return out;
}

MatrixC to_matrix(const Tensor& t, std::span<const IndexId> rows, std::vector<Index>* cols_out) {
    std::vector<IndexId> order(rows.begin(), rows.end());
    std::vector<Index> cols;
    std::int64_t nr = 1, nc = 1;
    for (IndexId id : rows) nr *= t.dim(id);
    for (const auto& ix : t.indices()) {
        if (std::find(rows.begin(), rows.end(), ix.id) == rows.end()) {
            order.push_back(ix.id);
            cols.push_back(ix);
            nc *= ix.dim;
        }
    }
    const Tensor p = t.permuted(order);
    MatrixC m = Eigen::Map<const MatrixCR>(p.data(), nr, nc);
    if (cols_out) *cols_out = std::move(cols);
    return m;
}

Tensor from_matrix(const MatrixC& m, std::vector<Index> rows, std::vector<Index> cols) {
    std::vector<Index> inds = std::move(rows);
    inds.insert(inds.end(), cols.begin(), cols.end());
    Tensor out(std::move(inds));
    if (static_cast<std::int64_t>(out.size()) != m.size()) {
        throw std::invalid_argument("from_matrix: shape mismatch");
    }
    Eigen::Map<MatrixCR>(out.data(), m.rows(), m.cols()) = m;
    return out;
}

SvdResult svd(const Tensor& t, std::span<const IndexId> rows, IndexId link_id,
              const SvdOptions& options) {
    std::vector<Index> row_inds;
    for (IndexId id : rows) row_inds.push_back({id, t.dim(id)});
    std::vector<Index> col_inds;
    const MatrixC m = to_matrix(t, rows, &col_inds);

    MatrixC u, v;
    Eigen::VectorXd s;
    if (std::min(m.rows(), m.cols()) <= 16) {
        Eigen::JacobiSVD<MatrixC> dec(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        u = dec.matrixU();
        v = dec.matrixV();
        s = dec.singularValues();
    } else {
        Eigen::BDCSVD<MatrixC> dec(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        u = dec.matrixU();
        v = dec.matrixV();
        s = dec.singularValues();
    }

    SvdResult res;
    const std::int64_t full = s.size();
    double total = 0;
    for (std::int64_t k = 0; k < full; ++k) total += s[k] * s[k];
    res.total_weight = total;
    const double smax = full > 0 ? s[0] : 0.0;
    std::int64_t nonzero = 0;
    while (nonzero < full && s[nonzero] > options.cutoff * smax && s[nonzero] > 0) ++nonzero;
    std::int64_t keep = nonzero;
    if (options.max_rank > 0) keep = std::min(keep, options.max_rank);
    keep = std::max<std::int64_t>(keep, 1);
    keep = std::min(keep, std::max<std::int64_t>(full, 1));

    double pruned = 0, discarded = 0;
    for (std::int64_t k = keep; k < full; ++k) {
        if (k < nonzero) discarded += s[k] * s[k];
        else pruned += s[k] * s[k];
    }
    if (total > 0) {
        res.discarded_weight = discarded / total;
        res.pruned_weight = pruned / total;
    }
    res.link = {link_id, keep};
    res.s.resize(keep);
    for (std::int64_t k = 0; k < keep; ++k) res.s[k] = k < full ? s[k] : 0.0;

    MatrixC uk = MatrixC::Zero(m.rows(), keep);
    MatrixC vk = MatrixC::Zero(keep, m.cols());
    const std::int64_t avail = std::min(keep, full);
    uk.leftCols(avail) = u.leftCols(avail);
    vk.topRows(avail) = v.leftCols(avail).adjoint();
    res.u = from_matrix(uk, row_inds, {res.link});
    res.v = from_matrix(vk, {res.link}, col_inds);
    return res;
}

QrResult qr(const Tensor& t, std::span<const IndexId> rows, IndexId link_id) {
    std::vector<Index> row_inds;
    for (IndexId id : rows) row_inds.push_back({id, t.dim(id)});
    std::vector<Index> col_inds;
    const MatrixC m = to_matrix(t, rows, &col_inds);
    const std::int64_t k = std::min(m.rows(), m.cols());
    Eigen::HouseholderQR<MatrixC> dec(m);
    MatrixC q = dec.householderQ() * MatrixC::Identity(m.rows(), k);
    MatrixC r = dec.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    QrResult res;
    res.link = {link_id, k};
    res.q = from_matrix(q, row_inds, {res.link});
    res.r = from_matrix(r, {res.link}, col_inds);
    return res;
}

HermitianRoots hermitian_roots(const MatrixC& m, double clamp, double pinv_cutoff) {
    const MatrixC h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<MatrixC> eig(h);
    const Eigen::VectorXd& lam = eig.eigenvalues();
    const double lmax = lam.size() > 0 ? std::max(lam.maxCoeff(), 0.0) : 0.0;
    Eigen::VectorXd sq(lam.size()), isq(lam.size());
    for (Eigen::Index k = 0; k < lam.size(); ++k) {
        const double l = std::max(lam[k], clamp * lmax);
        sq[k] = std::sqrt(l);
        isq[k] = l > pinv_cutoff * lmax && l > 0 ? 1.0 / std::sqrt(l) : 0.0;
    }
    const MatrixC& vecs = eig.eigenvectors();
    HermitianRoots out;
    out.sqrt = vecs * sq.asDiagonal() * vecs.adjoint();
    out.inv_sqrt = vecs * isq.asDiagonal() * vecs.adjoint();
    return out;
}

std::string describe(const Tensor& t) {
    std::ostringstream os;
    os << "Tensor(";
    for (std::size_t k = 0; k < t.rank(); ++k) {
        if (k) os << ", ";
        const auto& ix = t.indices()[k];
        IndexId id = ix.id;
        if (is_primed(id)) {
            os << "'";
            id -= kPrimeOffset;
        }
        if (id >= kLinkBase) os << "link" << (id - kLinkBase);
        else if (id >= kBondBase) os << "bond" << (id - kBondBase);
        else os << "phys" << id;
        os << ":" << ix.dim;
    }
    os << ")";
    return os.str();
}

}  // namespace qaoatn
